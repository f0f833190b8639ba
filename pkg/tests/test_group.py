import os
import subprocess
import sys
from collections import deque
from fractions import Fraction as Q

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from affweyl import _kernels
from affweyl.group import (
    AffineWeylElement,
    CapacityError,
    DatumMismatch,
    ball,
    braid_order,
    compose,
    finite_parabolic,
    generator,
    invert,
    reduced_word,
    translation,
    word_to_element,
)
from affweyl.rootdata import build_root_datum

from oracles import affine_poincare, finite_poincare

A1, A2, C2, G2 = (build_root_datum(*t) for t in [("A", 1), ("A", 2), ("C", 2), ("G", 2)])
SMALL = [("A", 1), ("A", 2), ("A", 3), ("B", 3), ("C", 2), ("C", 3), ("D", 4), ("G", 2)]


def words(datum, max_len=12):
    return st.lists(st.sampled_from(datum.generators), max_size=max_len)


def test_affine_reflections_in_coordinates():
    assert generator(A1, 0)((Q(1, 3), Q(5, 7))) == (Q(5, 7) - 1, Q(1, 3) + 1)
    assert generator(C2, 0)((Q(1, 3), Q(1, 5))) == (1 - Q(1, 3), Q(1, 5))
    x = (Q(1, 3), Q(1, 5))
    for i in C2.generators:
        assert generator(C2, i)(generator(C2, i)(x)) == x


def test_generators_have_length_one():
    for fam, r in SMALL:
        d = build_root_datum(fam, r)
        for i in d.generators:
            assert generator(d, i).length == 1
        assert AffineWeylElement.identity(d).length == 0


def test_generator_index_checked():
    with pytest.raises(IndexError, match="out of range"):
        generator(A2, 3)
    with pytest.raises(IndexError):
        generator(build_root_datum("A", 2, affine=False), 0)


def test_compose_rejects_mixed_datums():
    with pytest.raises(DatumMismatch):
        compose(generator(A2, 1), generator(C2, 1))


def test_translation_element():
    t = translation(C2, (1, 0))
    assert t((0, 0)) == (1, 0)
    assert t.length == 4  # sum over positive roots of |<alpha, e_1>| = 1 + 0 + 1 + 2
    with pytest.raises(ValueError):
        translation(A2, (Q(1, 2), 0, Q(-1, 2)))


def bfs_dist(d, radius):
    start = AffineWeylElement.identity(d)
    dist = {start: 0}
    todo = deque([start])
    while todo:
        w = todo.popleft()
        if dist[w] < radius:
            for i in d.generators:
                v = compose(w, generator(d, i))
                if v not in dist:
                    dist[v] = dist[w] + 1
                    todo.append(v)
    return dist


@pytest.mark.parametrize("d", [A1, A2, C2, G2], ids=lambda d: d.name)
def test_length_matches_word_distance(d):
    dist = bfs_dist(d, 8)
    assert all(w.length == k for w, k in dist.items())


@pytest.mark.parametrize("fam,r", [("A", 1), ("A", 2), ("A", 3), ("C", 2), ("C", 3), ("B", 3), ("G", 2), ("D", 4)])
def test_ball_counts_match_bott_formula(fam, r):
    d = build_root_datum(fam, r)
    cap = 10 if r <= 3 else 7
    assert ball(d, None, cap).histogram() == affine_poincare(fam, r, cap)


@pytest.mark.parametrize("fam,r", [("A", 2), ("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G", 2), ("F", 4)])
def test_finite_parabolic_matches_degrees(fam, r):
    d = build_root_datum(fam, r)
    b = finite_parabolic(d, range(1, r + 1))
    assert b.complete
    assert b.histogram() == finite_poincare(fam, r, int(b.lengths.max()))


def test_ball_order_and_parents():
    b = ball(A2, None, 6)
    assert list(b.lengths) == sorted(b.lengths)
    for k in range(1, len(b)):
        p = int(b.parent[k])
        assert b.lengths[p] == b.lengths[k] - 1
        assert compose(b.element(p), generator(A2, int(b.pgen[k]))) == b.element(k)


def test_ball_capacity_reports():
    with pytest.raises(CapacityError, match="exceeds 50"):
        ball(A2, None, 20, max_elements=50)


def test_ball_empty_generators():
    b = ball(A2, [], 5)
    assert len(b) == 1 and b.complete


def test_braid_orders():
    assert braid_order(A1, 0, 1) is None
    assert braid_order(A2, 0, 1) == 3
    assert braid_order(C2, 1, 2) == 4
    assert braid_order(C2, 0, 2) == 2
    assert braid_order(G2, 1, 2) == 6


@pytest.mark.parametrize("fam,r", SMALL)
def test_inverse_and_identity(fam, r):
    d = build_root_datum(fam, r)
    w = word_to_element(d, [d.generators[k % len(d.generators)] for k in (0, 1, 2, 1, 0, 2, 1)])
    assert compose(w, invert(w)).is_identity()
    assert (w**3) == compose(w, compose(w, w))
    assert (w**-1) == invert(w)


@pytest.mark.parametrize("fam,r", [("A", 2), ("C", 2), ("G", 2), ("B", 3), ("D", 4)])
def test_length_of_inverse(fam, r):
    d = build_root_datum(fam, r)

    @given(words(d))
    def prop(ws):
        w = word_to_element(d, ws)
        assert w.length == invert(w).length
        assert w.length <= len(ws)
        assert w.length % 2 == len(ws) % 2

    prop()


@given(words(C2))
def test_reduced_words_are_reduced(ws):
    w = word_to_element(C2, ws)
    for strategy in ("min", "max"):
        rw = reduced_word(w, strategy)
        assert len(rw) == w.length
        assert word_to_element(C2, rw) == w


def test_reduced_word_strategy_rejected():
    with pytest.raises(ValueError):
        reduced_word(generator(A2, 1), "random")


def test_ambient_linear_part_is_orthogonal():
    w = word_to_element(G2, [0, 1, 2, 1, 0])
    m = w.linear
    n = len(m)
    mt = [list(r) for r in zip(*m)]
    prod = [[sum(a * b for a, b in zip(mt[i], [row[j] for row in m])) for j in range(n)] for i in range(n)]
    assert prod == [[int(i == j) for j in range(n)] for i in range(n)]


# backends


def test_backends_agree_on_random_batches():
    if not _kernels.HAVE_NUMBA:
        pytest.skip("numba not installed")
    rng = np.random.default_rng(0)
    for d in (A2, C2, G2, build_root_datum("D", 4)):
        b = ball(d, None, 6)
        data = d.kernel_arrays()
        for g, (gm, gt) in data["gens"].items():
            m1, t1 = _kernels.right_multiply_np(b.M, b.t, gm, gt)
            m2, t2 = _kernels.right_multiply_nb(b.M, b.t, gm, gt)
            assert np.array_equal(m1, m2) and np.array_equal(t1, t2)
        idx = rng.permutation(len(b))
        l1 = _kernels.lengths_np(b.M[idx], b.t[idx], data["pos"], data["denom"])
        l2 = _kernels.lengths_nb(b.M[idx], b.t[idx], data["pos"], data["denom"])
        assert np.array_equal(l1, l2)
        assert np.array_equal(l1, b.lengths[idx])


def test_numpy_backend_via_env_flag():
    code = (
        "from affweyl import _kernels, ball, build_root_datum;"
        "print(_kernels.backend(), ball(build_root_datum('A', 2), None, 6).histogram())"
    )
    env = dict(os.environ, AFFWEYL_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy [1, 3, 6, 9, 12, 15, 18]"
