import numpy as np
import pytest

from kgforge.acquisition.triples import (
    CallableOpenIeExtractor,
    InfoboxRow,
    TripleCandidate,
    canonicalize_predicate,
    gen_triple_candidates,
    update_triple_confidence,
)
from kgforge.model.graph import Literal
from kgforge.model.ontology import PropertyDef
from kgforge.textindex.embedding import HashedTrigramProvider

FR = "edukg://concept/french-revolution"
NA = "edukg://concept/national-assembly"
EU = "edukg://concept/europe"

TEXT = (
    "The French Revolution began in 1789. "
    "The National Assembly met during the French Revolution. "
    "Nothing else happened here."
)
ACCEPTED = [(FR, "French Revolution"), (NA, "National Assembly"), (EU, "Europe")]


# --- infobox alignment -------------------------------------------------------


def test_infobox_value_must_occur_in_section():
    rows = [
        InfoboxRow("r1", "starting time", "1789"),
        InfoboxRow("r2", "ending time", "1799"),  # not in the text
    ]
    got = gen_triple_candidates(TEXT, ACCEPTED, infoboxes={FR: rows})
    infobox = [c for c in got if c.origin == "infobox"]
    assert len(infobox) == 1
    assert infobox[0].tail == Literal("1789")
    assert infobox[0].predicate_raw == "starting time"
    assert infobox[0].source_triple_id == "r1"
    assert infobox[0].predicate is None  # no mapper configured


def test_infobox_head_must_be_accepted():
    rows = [InfoboxRow("r1", "starting time", "1789")]
    got = gen_triple_candidates(TEXT, ACCEPTED, infoboxes={"edukg://concept/other": rows})
    assert [c for c in got if c.origin == "infobox"] == []


def test_infobox_match_is_case_insensitive():
    rows = [InfoboxRow("r1", "name", "FRENCH REVOLUTION")]
    got = gen_triple_candidates(TEXT, ACCEPTED, infoboxes={FR: rows})
    assert len([c for c in got if c.origin == "infobox"]) == 1


# --- sentence co-occurrence --------------------------------------------------


def test_cooccurrence_pairs_within_single_sentence():
    got = gen_triple_candidates(TEXT, ACCEPTED)
    cooc = [c for c in got if c.origin == "cooccurrence"]
    # Only sentence 2 contains two accepted surfaces.
    assert len(cooc) == 1
    pair = {cooc[0].head_iri, cooc[0].tail}
    assert pair == {FR, NA}
    assert cooc[0].sentence_idx == 1
    assert cooc[0].predicate is None
    assert cooc[0].predicate_raw == ""


def test_cooccurrence_does_not_cross_sentences():
    text = "The French Revolution ended. Europe changed."
    got = gen_triple_candidates(text, ACCEPTED)
    assert [c for c in got if c.origin == "cooccurrence"] == []


def test_cooccurrence_three_way_yields_three_pairs():
    text = "The French Revolution shook Europe and the National Assembly."
    got = gen_triple_candidates(text, ACCEPTED)
    cooc = [c for c in got if c.origin == "cooccurrence"]
    assert len(cooc) == 3
    pairs = {(c.head_iri, c.tail) for c in cooc}
    # heads/tails in sorted-iri order, each unordered pair once
    assert pairs == {(EU, FR), (EU, NA), (FR, NA)}


def test_cooccurrence_same_pair_in_two_sentences_counted_twice():
    text = (
        "The French Revolution involved the National Assembly. "
        "Later the National Assembly outlived the French Revolution."
    )
    got = gen_triple_candidates(text, ACCEPTED)
    cooc = [c for c in got if c.origin == "cooccurrence"]
    assert len(cooc) == 2
    assert {c.sentence_idx for c in cooc} == {0, 1}


# --- open extraction ---------------------------------------------------------


def extractor_returning(rows):
    return CallableOpenIeExtractor(lambda text: rows)


def test_openie_head_resolution_and_literal_tail():
    rows = [
        {"head": "French Revolution", "predicate": "began in", "tail": "1789", "sentenceIdx": 0},
        {"head": "Unknown Thing", "predicate": "was", "tail": "odd", "sentenceIdx": 0},
    ]
    got = gen_triple_candidates(TEXT, ACCEPTED, extractor=extractor_returning(rows))
    openie = [c for c in got if c.origin == "openie"]
    assert len(openie) == 1  # unknown heads are dropped
    assert openie[0].head_iri == FR
    assert openie[0].tail == Literal("1789")
    assert openie[0].predicate_raw == "began in"


def test_openie_tail_resolves_to_entity_when_accepted():
    rows = [{"head": "french revolution", "predicate": "involved", "tail": "National Assembly"}]
    got = gen_triple_candidates(TEXT, ACCEPTED, extractor=extractor_returning(rows))
    openie = [c for c in got if c.origin == "openie"]
    assert openie[0].tail == NA


# --- predicate canonicalization ----------------------------------------------


PROPS = [
    PropertyDef("edukg://prop/startingTime", "starting time", "datatype", "edukg://class/Concept", "text"),
    PropertyDef("edukg://prop/locatedIn", "located in", "object", "edukg://class/Concept", "edukg://class/Concept"),
]


def test_canonicalize_picks_best_property():
    provider = HashedTrigramProvider(dim=128)
    got = canonicalize_predicate("starting time", PROPS, provider, tau_map=0.5)
    assert got == "edukg://prop/startingTime"


def test_canonicalize_returns_none_below_tau():
    provider = HashedTrigramProvider(dim=128)
    got = canonicalize_predicate("zzzzqqqq", PROPS, provider, tau_map=0.99)
    assert got is None


def test_canonicalize_matches_exhaustive_argmax():
    from kgforge.textindex.embedding import embed_sentence
    from kgforge.textindex.vectors import cosine_dense

    provider = HashedTrigramProvider(dim=64)
    for raw in ("starting time", "located", "situated in", "time of start"):
        sims = {
            p.iri: cosine_dense(
                embed_sentence(provider, raw), embed_sentence(provider, p.label)
            )
            for p in PROPS
        }
        best_iri = min(sims, key=lambda iri: (-sims[iri], iri))
        want = best_iri if sims[best_iri] >= 0.1 else None
        assert canonicalize_predicate(raw, PROPS, provider, tau_map=0.1) == want


def test_canonicalize_tie_prefers_lexicographic_iri():
    class ConstantProvider:
        dim = 4

        def embed(self, texts):
            return np.ones((len(texts), 4)) / 2.0

    props = [
        PropertyDef("edukg://prop/zeta", "zeta", "object", "edukg://class/Concept", "edukg://class/Concept"),
        PropertyDef("edukg://prop/alpha", "alpha", "object", "edukg://class/Concept", "edukg://class/Concept"),
    ]
    got = canonicalize_predicate("anything", props, ConstantProvider(), tau_map=0.5)
    assert got == "edukg://prop/alpha"


def test_canonicalize_requires_properties():
    with pytest.raises(ValueError):
        canonicalize_predicate("x", [], HashedTrigramProvider(dim=16), 0.5)


def test_mapper_applies_to_infobox_and_openie():
    provider = HashedTrigramProvider(dim=128)
    rows = [InfoboxRow("r1", "starting time", "1789")]
    openie_rows = [{"head": "French Revolution", "predicate": "starting time", "tail": "1789"}]
    got = gen_triple_candidates(
        TEXT,
        ACCEPTED,
        infoboxes={FR: rows},
        extractor=extractor_returning(openie_rows),
        properties=PROPS,
        provider=provider,
        tau_map=0.3,
    )
    mapped = {c.origin: c.predicate for c in got if c.origin in ("infobox", "openie")}
    assert mapped["infobox"] == "edukg://prop/startingTime"
    assert mapped["openie"] == "edukg://prop/startingTime"
    # cooccurrence candidates stay unmapped even with a mapper configured
    assert all(c.predicate is None for c in got if c.origin == "cooccurrence")


# --- shared plumbing ---------------------------------------------------------


def test_origin_validation():
    with pytest.raises(ValueError):
        TripleCandidate("x", FR, None, "", Literal("v"), "guess", 0.5)
    with pytest.raises(ValueError):
        TripleCandidate("x", FR, None, "", Literal("v"), "infobox", 0.5)  # no source id


def test_origin_scores_override():
    got = gen_triple_candidates(TEXT, ACCEPTED, origin_scores={"cooccurrence": 0.9})
    cooc = [c for c in got if c.origin == "cooccurrence"]
    assert cooc[0].score == pytest.approx(0.9)
    assert cooc[0].confidence == pytest.approx(0.9)


def test_update_triple_confidence_signed():
    c = TripleCandidate("x", FR, None, "", Literal("v"), "cooccurrence", 0.3, confidence=0.3)
    c = update_triple_confidence(c, "accept", 0.1)
    c = update_triple_confidence(c, "accept", 0.1)
    c = update_triple_confidence(c, "reject", 0.1)
    assert c.confidence == pytest.approx(0.4)
    assert (c.pos_count, c.neg_count) == (2, 1)
    with pytest.raises(ValueError):
        update_triple_confidence(c, "nope", 0.1)


def test_round_trip_dict_entity_and_literal_tails():
    lit = TripleCandidate(
        "a", FR, "edukg://prop/startingTime", "starting time", Literal("1789", "year"),
        "infobox", 0.6, confidence=0.6, source_triple_id="r1",
    )
    ent = TripleCandidate("b", FR, None, "", NA, "cooccurrence", 0.3, confidence=0.3, sentence_idx=2)
    for c in (lit, ent):
        assert TripleCandidate.from_dict(c.to_dict()) == c
