"""Core simplicial set structure: operators, products, maps, enumeration."""
import itertools
from math import comb

import pytest

from nervekit import (
    FinitePoset,
    ProductSset,
    SimplicialMap,
    TruncationError,
    act,
    boundary_simplex,
    compose_maps,
    enumerate_maps,
    horn,
    identity_map,
    materialize,
    nerve_cat,
    poset_category,
    poset_nerve,
    product,
    standard_simplex,
    subcomplex,
    validate_map,
    validate_sset,
    vertices,
    yoneda_map,
)
from nervekit.sset import PowerSset, sset_data_equal


def walk_nerve(D=2):
    return nerve_cat(poset_category(FinitePoset([0, 1], [(0, 1)])), D)


def monotone_maps(m, n):
    # maps [m] -> [n] as value tuples
    return itertools.combinations_with_replacement(range(n + 1), m + 1)


def test_standard_simplex_counts():
    for n in range(4):
        X = standard_simplex(n, 3)
        assert X.counts() == tuple(comb(n + m + 1, m + 1) for m in range(4))
        assert len(X.nondegenerate_cells(m := min(n, 3))) == comb(n + 1, m + 1)
        assert validate_sset(X).ok


def test_simplex_labels_are_vertex_tuples():
    X = standard_simplex(2, 2)
    assert X.label(0, 0) == (0,)
    top = X.index_of(2, (0, 1, 2))
    assert not X.is_degenerate(2, top)
    assert X.index_of(1, (0, 2)) == X.face(2, 1, top)


def test_degeneracy_detection():
    X = walk_nerve()
    nondeg1 = X.nondeg_counts()
    # the walking arrow has cells 0 -> 0, 0 -> 1, 1 -> 1 at level 1
    assert X.counts() == (2, 3, 4)
    assert nondeg1 == (2, 1, 0)
    for x in range(X.card(2)):
        assert X.is_degenerate(2, x)


def test_act_contravariance():
    # act(x, f then g) agrees with act in two steps, for all small shapes
    X = walk_nerve(3)
    for n in range(4):
        for m in range(n + 1):
            for k in range(m + 1):
                for f in monotone_maps(m, n):
                    for g in monotone_maps(k, m):
                        comp = tuple(f[v] for v in g)
                        for x in range(X.card(n)):
                            mid = act(X, n, x, f)
                            assert 0 <= mid < X.card(m)
                            assert act(X, m, mid, g) == act(X, n, x, comp)


def test_act_identity_and_vertices():
    X = standard_simplex(2, 3)
    top = X.index_of(2, (0, 1, 2))
    assert act(X, 2, top, (0, 1, 2)) == top
    assert vertices(X, 2, top) == (X.index_of(0, (0,)), X.index_of(0, (1,)), X.index_of(0, (2,)))


def test_boundary_and_horn_counts():
    B = boundary_simplex(2)
    assert B.nondeg_counts() == (3, 3)
    H = horn(2, 1)
    # the middle horn of the triangle keeps two of the three edges
    assert H.nondeg_counts() == (3, 2)
    assert validate_sset(H).ok
    with pytest.raises(ValueError):
        horn(2, 5)


def test_subcomplex_inclusion_validates():
    X = standard_simplex(2, 2)
    e01 = X.index_of(1, (0, 1))
    A, inc = subcomplex(X, [(1, e01)])
    assert A.counts()[0] == 2
    assert validate_sset(A).ok
    assert validate_map(inc).ok


def test_yoneda_enumeration():
    # maps out of the k simplex match k cells, for several targets
    for X in (walk_nerve(), nerve_cat(poset_category(FinitePoset([0, 1, 2], [(0, 1), (1, 2)])), 2)):
        for k in range(3):
            maps = enumerate_maps(standard_simplex(k, X.D), X)
            assert len(maps) == X.card(k)
            assert len(maps) == len({f.key() for f in maps})


def test_yoneda_map_validates():
    X = walk_nerve()
    for x in range(X.card(1)):
        f = yoneda_map(X, 1, x)
        assert validate_map(f).ok
        assert f.apply(1, standard_simplex(1, X.D).index_of(1, (0, 1))) == x


def test_enumerate_maps_requires_deep_target():
    A = standard_simplex(1, 3)
    X = walk_nerve(2)
    with pytest.raises(TruncationError):
        enumerate_maps(A, X)


def test_map_composition_and_equality():
    X = walk_nerve()
    i = identity_map(X)
    assert compose_maps(i, i) == i
    f = yoneda_map(X, 0, 0)
    assert compose_maps(i, f) == f


def test_product_pairing():
    A = standard_simplex(1, 2)
    B = walk_nerve()
    P = ProductSset(A, B)
    for n in range(3):
        assert P.card(n) == A.card(n) * B.card(n)
        for x in range(P.card(n)):
            a, b = P.split(n, x)
            assert P.pair(n, a, b) == x
        if n:
            for x in range(P.card(n)):
                a, b = P.split(n, x)
                fa, fb = P.split(n - 1, P.face(n, 0, x))
                assert fa == A.face(n, 0, a) and fb == B.face(n, 0, b)
    M = product(A, B)
    assert validate_sset(M).ok
    assert M.counts() == tuple(P.card(n) for n in range(3))


def test_power_coordinates():
    K = standard_simplex(1, 2)
    W = PowerSset(K, 3)
    for n in range(3):
        assert W.card(n) == K.card(n) ** 3
        for x in range(W.card(n)):
            assert W.index(n, W.coords(n, x)) == x
    assert validate_sset(materialize(W)).ok


def test_poset_nerve_counts():
    P = FinitePoset([0, 1, 2], [(0, 1), (1, 2)])
    N = poset_nerve(P, 2)
    assert N.counts() == (3, 6, 10)
    assert validate_sset(N).ok
    anti = poset_nerve(FinitePoset([0, 1, 2]), 2)
    assert anti.counts() == (3, 3, 3)


def test_materialize_preserves_data():
    X = standard_simplex(1, 2)
    view = ProductSset(X, X)
    M = materialize(view)
    assert sset_data_equal(M, view)
    assert validate_sset(M).ok


def test_empty_sset():
    from nervekit import SimplicialSet

    E = SimplicialSet.empty(2)
    assert E.counts() == (0, 0, 0)
    assert validate_sset(E).ok
