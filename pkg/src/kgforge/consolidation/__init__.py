from kgforge.consolidation.expansion import (
    ExpansionReport,
    ExternalAlignment,
    expand_concepts,
    expansion_score,
    load_alignments,
    local_neighbor_weights,
)
from kgforge.consolidation.roles import (
    DEFAULT_ROLE_TEMPLATES,
    RoleDraft,
    RoleTemplate,
    add_role,
    classify_role,
    link_roles,
    load_role_templates,
    recognize_roles,
    validate_templates,
)

__all__ = [
    "ExpansionReport",
    "ExternalAlignment",
    "expand_concepts",
    "expansion_score",
    "load_alignments",
    "local_neighbor_weights",
    "DEFAULT_ROLE_TEMPLATES",
    "RoleDraft",
    "RoleTemplate",
    "add_role",
    "classify_role",
    "link_roles",
    "load_role_templates",
    "recognize_roles",
    "validate_templates",
]
