"""Tiny SELECT-query subset: variables, one WHERE block of 1-4 triple
patterns, optional LIMIT. No OPTIONAL, FILTER, or property paths.

Two plan shapes are recognized: a single-pattern property lookup and the
three-pattern rhetorical-role lookup. Rendering is canonical, and
parse(render(plan)) reproduces the plan exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from kgforge.errors import QuerySyntaxError
from kgforge.model.graph import KnowledgeGraph, Literal, RoleType
from kgforge.model.ontology import PROP_CONTENT, PROP_PARENT_CONCEPT, PROP_ROLE_TYPE

PROPERTY_LOOKUP = "propertyLookup"
ROLE_LOOKUP = "roleLookup"

# Pattern terms: ("var", name) | ("iri", iri) | ("lit", text)
Term = tuple


@dataclass(frozen=True)
class QueryPlan:
    kind: str
    entity_iri: str
    predicate_iri: str | None = None
    role_type: RoleType | None = None

    def __post_init__(self):
        if self.kind == PROPERTY_LOOKUP and not self.predicate_iri:
            raise ValueError("property lookup needs a predicate iri")
        if self.kind == ROLE_LOOKUP and self.role_type is None:
            raise ValueError("role lookup needs a role type")

    @property
    def rendered(self) -> str:
        return render_plan(self)


def render_plan(plan: QueryPlan) -> str:
    if plan.kind == PROPERTY_LOOKUP:
        return f"SELECT ?v WHERE {{ <{plan.entity_iri}> <{plan.predicate_iri}> ?v }}"
    return (
        "SELECT ?r ?content WHERE { "
        f"?r <{PROP_PARENT_CONCEPT}> <{plan.entity_iri}> . "
        f'?r <{PROP_ROLE_TYPE}> "{plan.role_type.value}" . '
        f"?r <{PROP_CONTENT}> ?content "
        "}"
    )


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def eof(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and not self.text[self.pos].isspace():
            ch = self.text[self.pos]
            if ch in "{}":
                break
            self.pos += 1
        return self.text[start : self.pos]

    def expect_word(self, expected: str) -> None:
        got = self.word()
        if got.upper() != expected:
            raise QuerySyntaxError(f"expected {expected}, got {got!r}")

    def expect_char(self, ch: str) -> None:
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            raise QuerySyntaxError(f"expected {ch!r} at position {self.pos}")
        self.pos += 1


def _parse_term(scanner: _Scanner) -> Term:
    scanner.skip_ws()
    ch = scanner.peek()
    if ch == "?":
        name = scanner.word()
        if len(name) < 2:
            raise QuerySyntaxError("empty variable name")
        return ("var", name[1:])
    if ch == "<":
        scanner.expect_char("<")
        end = scanner.text.find(">", scanner.pos)
        if end < 0:
            raise QuerySyntaxError("unterminated iri")
        iri = scanner.text[scanner.pos : end]
        scanner.pos = end + 1
        return ("iri", iri)
    if ch == '"':
        scanner.expect_char('"')
        end = scanner.text.find('"', scanner.pos)
        if end < 0:
            raise QuerySyntaxError("unterminated literal")
        lit = scanner.text[scanner.pos : end]
        scanner.pos = end + 1
        return ("lit", lit)
    raise QuerySyntaxError(f"unexpected character {ch!r} in pattern")


def parse_query(text: str) -> tuple[list[str], list[tuple[Term, Term, Term]], int | None]:
    """Returns (projected variables, patterns, limit)."""
    scanner = _Scanner(text)
    scanner.expect_word("SELECT")
    variables: list[str] = []
    while scanner.peek() == "?":
        variables.append(scanner.word()[1:])
    if not variables:
        raise QuerySyntaxError("SELECT needs at least one variable")
    scanner.expect_word("WHERE")
    scanner.expect_char("{")
    patterns: list[tuple[Term, Term, Term]] = []
    while True:
        s = _parse_term(scanner)
        p = _parse_term(scanner)
        o = _parse_term(scanner)
        patterns.append((s, p, o))
        scanner.skip_ws()
        if scanner.peek() == ".":
            scanner.expect_char(".")
            continue
        break
    scanner.expect_char("}")
    limit: int | None = None
    if not scanner.eof():
        scanner.expect_word("LIMIT")
        raw = scanner.word()
        if not raw.isdigit():
            raise QuerySyntaxError(f"LIMIT takes an integer, got {raw!r}")
        limit = int(raw)
    if not scanner.eof():
        raise QuerySyntaxError("trailing content after query")
    if not 1 <= len(patterns) <= 4:
        raise QuerySyntaxError(f"{len(patterns)} patterns outside the 1..4 subset")
    return variables, patterns, limit


def parse_plan(text: str) -> QueryPlan:
    """Classify a query into one of the two supported plan shapes."""
    variables, patterns, _limit = parse_query(text)
    if len(patterns) == 1:
        (s, p, o) = patterns[0]
        if s[0] == "iri" and p[0] == "iri" and o[0] == "var" and variables == [o[1]]:
            return QueryPlan(kind=PROPERTY_LOOKUP, entity_iri=s[1], predicate_iri=p[1])
        raise QuerySyntaxError("single-pattern query is not a property lookup")
    if len(patterns) == 3:
        (p1, p2, p3) = patterns
        role_var = p1[0]
        shape_ok = (
            role_var[0] == "var"
            and p1[1] == ("iri", PROP_PARENT_CONCEPT)
            and p1[2][0] == "iri"
            and p2[0] == role_var
            and p2[1] == ("iri", PROP_ROLE_TYPE)
            and p2[2][0] == "lit"
            and p3[0] == role_var
            and p3[1] == ("iri", PROP_CONTENT)
            and p3[2][0] == "var"
            and variables == [role_var[1], p3[2][1]]
        )
        if shape_ok:
            try:
                role_type = RoleType(p2[2][1])
            except ValueError as exc:
                raise QuerySyntaxError(f"unknown role type {p2[2][1]!r}") from exc
            return QueryPlan(kind=ROLE_LOOKUP, entity_iri=p1[2][1], role_type=role_type)
        raise QuerySyntaxError("three-pattern query is not a role lookup")
    raise QuerySyntaxError(f"unsupported plan shape with {len(patterns)} patterns")


def _term_matches(term: Term, value, bindings: dict) -> dict | None:
    """None = mismatch; otherwise the (possibly extended) bindings."""
    kind, payload = term
    if kind == "iri":
        return bindings if value == payload else None
    if kind == "lit":
        return bindings if isinstance(value, Literal) and value.lexical == payload else None
    bound = bindings.get(payload)
    if bound is None:
        out = dict(bindings)
        out[payload] = value
        return out
    return bindings if bound == value else None


def execute_patterns(
    kg: KnowledgeGraph,
    variables: list[str],
    patterns: list[tuple[Term, Term, Term]],
    limit: int | None = None,
) -> list[tuple]:
    """Join the patterns over the store; rows are projected variable tuples,
    sorted lexicographically by string form."""
    bindings_set: list[dict] = [{}]
    for s_term, p_term, o_term in patterns:
        next_set: list[dict] = []
        for bindings in bindings_set:
            def resolve(term: Term):
                if term[0] == "var":
                    return bindings.get(term[1])
                if term[0] == "iri":
                    return term[1]
                return Literal(term[1])

            subject = resolve(s_term)
            predicate = resolve(p_term)
            obj = resolve(o_term)
            candidates = kg.triples_of(
                subject=subject if isinstance(subject, str) else None,
                predicate=predicate if isinstance(predicate, str) else None,
                obj=obj,
            )
            for t in candidates:
                b1 = _term_matches(s_term, t.subject, bindings)
                if b1 is None:
                    continue
                b2 = _term_matches(p_term, t.predicate, b1)
                if b2 is None:
                    continue
                b3 = _term_matches(o_term, t.obj, b2)
                if b3 is None:
                    continue
                next_set.append(b3)
        bindings_set = next_set
        if not bindings_set:
            break

    def cell(value) -> str:
        return value.lexical if isinstance(value, Literal) else str(value)

    rows = sorted({tuple(cell(b[v]) for v in variables) for b in bindings_set})
    return rows[:limit] if limit is not None else rows


def execute_plan(kg: KnowledgeGraph, plan: QueryPlan) -> list[str]:
    """Answers for a plan: object values or role contents, sorted."""
    variables, patterns, limit = parse_query(render_plan(plan))
    rows = execute_patterns(kg, variables, patterns, limit)
    # propertyLookup projects ?v; roleLookup projects (?r, ?content)
    return [row[-1] for row in rows]
