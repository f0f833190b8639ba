from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from affweyl import _linalg as la
from affweyl.factorizations import build_T
from affweyl.group import AffineWeylElement, generator, translation, word_to_element
from affweyl.rootdata import build_root_datum
from affweyl.tubes import (
    AffineSubspace,
    EllipticError,
    TubeDegreeError,
    avoids_walls,
    connection_index,
    coxeter_multiplicity_table,
    drift,
    is_straight,
    min_set,
    stabilizes_tube,
    tube_degree,
    tube_degrees,
)

A2, C2, G2 = (build_root_datum(*t) for t in [("A", 2), ("C", 2), ("G", 2)])


def test_drift_of_translation_and_reflection():
    t = translation(C2, (1, 1))
    dd = drift(t)
    assert dd.order_m == 1 and dd.v_w == (1, 1)
    assert drift(generator(A2, 1)).elliptic


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_drift_of_type_a_t_i(n):
    d = build_root_datum("A", n - 1)
    for i in range(1, n):
        v = drift(build_T("A", n, i).generator).v_w
        assert v == la.scale(Q(n, i * (n - i)), d.fundamental_coweights[i - 1])


def test_min_set_examples():
    assert min_set(AffineWeylElement.identity(A2)).dim == 2
    assert min_set(translation(A2, (1, 0, -1))).dim == 2
    t1 = build_T("A", 3, 1).generator
    ms = min_set(t1)
    v = drift(t1).v_w
    # a point of the shape used in the hand computation for n = 3, i = 1
    y = (Q(-1, 4), Q(1, 4), Q(0))
    assert t1(y) == la.add(y, v)
    assert ms.contains(y)


@pytest.mark.parametrize("d", [A2, C2, G2, build_root_datum("B", 3)], ids=lambda d: d.name)
def test_min_set_is_invariant(d):
    @given(st.lists(st.sampled_from(d.generators), max_size=10))
    def prop(word):
        w = word_to_element(d, word)
        ms = min_set(w)
        v = drift(w).v_w
        for p in [ms.base] + [la.add(ms.base, e) for e in ms.directions]:
            assert w(p) == la.add(p, v)
            assert ms.contains(w(p))

    prop()


@pytest.mark.parametrize("d", [A2, C2, G2], ids=lambda d: d.name)
def test_drift_scales_with_powers(d):
    @given(st.lists(st.sampled_from(d.generators), max_size=8))
    def prop(word):
        w = word_to_element(d, word)
        v = drift(w).v_w
        for k in range(1, 6):
            assert drift(w**k).v_w == la.scale(k, v)

    prop()


def test_avoids_walls():
    full = AffineSubspace(tuple(Q(0) for _ in range(3)), ((1, -1, 0), (0, 1, -1)))
    assert avoids_walls(full, A2)
    wall = AffineSubspace((Q(0), Q(0), Q(0)), ((1, 1, -2),))  # alpha_1 vanishes here
    assert not avoids_walls(wall, A2)
    shifted = AffineSubspace((Q(1, 4), Q(-1, 4), Q(0)), ((1, 1, -2),))
    assert avoids_walls(shifted, A2) == all(
        la.dot(a, shifted.base).denominator != 1 for a in A2.positive_roots if la.dot(a, (1, 1, -2)) == 0
    )


def test_affine_subspace_validation():
    with pytest.raises(ValueError):
        AffineSubspace((0, 0), ((1, 0), (2, 0)))


def test_stabilizes_tube_examples():
    t1 = build_T("A", 3, 1).generator
    assert stabilizes_tube(t1, 1)
    assert not stabilizes_tube(t1, 2)
    assert stabilizes_tube(build_T("C", 3, 2).generator, 2)
    with pytest.raises(EllipticError):
        stabilizes_tube(generator(A2, 0), 1)


def test_is_straight():
    ident = AffineWeylElement.identity(A2)
    rep = is_straight(ident, 3)
    assert rep and rep.length == 0
    assert not is_straight(generator(A2, 1), 3).powers_ok
    for n in range(3, 6):
        for i in range(1, n):
            ra = is_straight(build_T("A", n, i).generator, 5)
            assert ra and ra.formula_value == n
            rc = is_straight(build_T("C", n, i).generator, 5)
            assert rc and rc.formula_value == 2 * n - i - 1
    with pytest.raises(ValueError):
        is_straight(ident, 1)


def test_tube_degree_closed_forms():
    for n in range(2, 7):
        assert tube_degrees(build_root_datum("A", n - 1)) == [n] * (n - 1)
    for n in range(3, 7):
        assert tube_degrees(build_root_datum("C", n - 1)) == [2 * n - i - 1 for i in range(1, n)]
    with pytest.raises(IndexError):
        tube_degree(A2, 3)


def test_tube_degree_g2_matches_series_factorization():
    from affweyl.series import alternating_product, factor_geometric

    assert sorted(tube_degrees(G2)) == factor_geometric(alternating_product(G2, 24))


def test_tube_degree_rejects_non_integer(monkeypatch):
    import affweyl.tubes as tubes

    monkeypatch.setattr(tubes, "coweight_ratio", lambda d, i: Q(1, 7))
    with pytest.raises(TubeDegreeError, match="not a positive integer"):
        tubes.tube_degree(A2, 1)


def test_coxeter_multiplicity_table():
    rows = {r["datum"]: r for r in coxeter_multiplicity_table([build_root_datum(f, r) for f, r in [("A", 3), ("C", 3), ("D", 4), ("E", 6), ("E", 8)]])}
    assert connection_index(build_root_datum("E", 8)) == 1
    for r in rows.values():
        assert r["count_h"] == r["connection_index"] - 1
