"""Nerve constructions and the comparison machinery between them."""
import pytest

from nervekit import (
    build_example,
    classification_comparison,
    classification_diagram,
    classifying_space,
    coherent_nerve,
    comparison_map,
    consistency_check,
    diagonal,
    levelwise_nerve,
    validate_map,
    validate_sset,
)


def test_coherent_nerve_counts(z2_rel_d3):
    hc = coherent_nerve(z2_rel_d3.cat, 3)
    assert hc.counts() == (1, 1, 2, 8)
    assert validate_sset(hc).ok


def test_classifying_space_counts(z2_rel_d3):
    B = classifying_space(z2_rel_d3.cat, 3)
    assert B.counts() == (1, 2, 16, 512)
    assert validate_sset(B).ok


def test_coherent_nerve_of_discrete_is_ordinary_nerve(poset012):
    hc = coherent_nerve(poset012.cat, 2)
    # multichains in a three element chain
    assert hc.counts() == (3, 6, 10)
    assert validate_sset(hc).ok


def test_binerve_row_is_level_nerve(z2_rel):
    from nervekit import level_category, nerve_cat

    NB = levelwise_nerve(z2_rel.cat, 2, 2)
    for q in range(3):
        row = NB.row(q)
        want = nerve_cat(level_category(z2_rel.cat, q), 2)
        assert row.counts() == want.counts()


def test_comparison_map_validates(z2_rel_d3, poset012):
    f = comparison_map(z2_rel_d3.cat, 3)
    assert validate_map(f).ok
    g = comparison_map(poset012.cat, 2)
    assert validate_map(g).ok


def test_comparison_map_bijective_on_discrete(poset01, poset012):
    # a discrete enrichment collapses: both nerves agree with the plain
    # nerve of the underlying category and the comparison is a bijection
    for R in (poset01, poset012):
        SC = R.cat
        hc = coherent_nerve(SC, 2)
        B = classifying_space(SC, 2)
        assert hc.counts() == B.counts()
        f = comparison_map(SC, 2)
        for n in range(3):
            images = [f.apply(n, x) for x in range(B.card(n))]
            assert sorted(images) == list(range(hc.card(n)))


def test_consistency_of_comparison_routes(z2_rel_d3):
    rep = consistency_check(z2_rel_d3.cat, 2)
    assert rep.ok
    assert rep.bounds["diagonal"] == 19


def test_classification_diagram_marking(z2_rel):
    M = classification_diagram(z2_rel, 1, 1)
    # a square into the coherent nerve is two triangles sharing a free
    # diagonal, so two binary choices
    assert M.space.card(1, 1) == 4
    assert all(M.is_marked(1, x) for x in range(4))
    assert M.validate().ok


def test_classification_diagram_identity_marking(poset01):
    M = classification_diagram(poset01, 1, 1)
    assert M.validate().ok
    # only the degenerate edges are marked for an identities marking
    for q in range(2):
        for x in range(M.space.card(1, q)):
            marked = M.is_marked(q, x)
            degen = M.space.row(q).is_degenerate(1, x)
            assert marked == degen


def test_classification_comparison_small(z2_rel, poset01):
    rep = classification_comparison(z2_rel, 1, 1)
    assert rep.ok
    rep = classification_comparison(poset01, 1, 1)
    assert rep.ok


def test_classification_comparison_requires_budget(z2_rel):
    from nervekit import TruncationError

    with pytest.raises(TruncationError):
        classification_comparison(z2_rel, 2, 2)


def test_diagonal_of_binerve_is_classifying_space(z2_rel):
    NB = levelwise_nerve(z2_rel.cat, 2, 2)
    d = diagonal(NB)
    B = classifying_space(z2_rel.cat, 2)
    assert d.counts() == B.counts()
    for n in range(3):
        for x in range(d.card(n)):
            for i in range(n + 1) if n else []:
                assert d.face(n, i, x) == B.face(n, i, x)
