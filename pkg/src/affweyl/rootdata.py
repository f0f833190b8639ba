"""Exact root data for the irreducible reduced root systems.

Families A and C use the coordinate models in which the explicit
factorization operators are written:

* A_{n-1}: the sum-zero hyperplane of Q^n, coordinates ``(x_0, ..., x_{n-1})``
  and ``e_i(x) = x_{n-i}``, so ``alpha_i = x_{n-i} - x_{n-i-1}`` and the
  fundamental alcove is ``x_0 <= x_1 <= ... <= x_{n-1} <= x_0 + 1``.
* C_{n-1}: Q^{n-1} with ``alpha_i = e_i - e_{i+1}`` and ``alpha_{n-1} = 2 e_{n-1}``.

The other families use the Bourbaki orthonormal models. The default
invariant form is the ambient dot product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import lru_cache

import numpy as np

from . import _linalg as la

FAMILIES = "ABCDEFG"


class RootDataError(ValueError):
    pass


def _check_type(family: str, rank: int) -> None:
    if family not in FAMILIES:
        raise RootDataError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if not isinstance(rank, int) or rank < 1:
        raise RootDataError(f"rank must be a positive integer, got {rank!r}")
    bounds = {
        "A": (1, None, "A requires rank >= 1"),
        "B": (2, None, "B requires rank >= 2"),
        "C": (2, None, "C requires rank >= 2"),
        "D": (3, None, "D requires rank >= 3"),
        "E": (6, 8, "E requires 6 <= rank <= 8"),
        "F": (4, 4, "F requires rank == 4"),
        "G": (2, 2, "G requires rank == 2"),
    }
    lo, hi, msg = bounds[family]
    if rank < lo or (hi is not None and rank > hi):
        raise RootDataError(f"invalid type {family}{rank}: {msg}")


def _unit(dim: int, i: int, c=1) -> list:
    v = [Q(0)] * dim
    v[i] = Q(c)
    return v


def _simple_roots(family: str, r: int) -> tuple[int, list[tuple]]:
    h = Q(1, 2)
    if family == "A":
        n = r + 1
        roots = []
        for i in range(1, r + 1):
            v = [Q(0)] * n
            v[n - i] += 1
            v[n - i - 1] -= 1
            roots.append(v)
        return n, [tuple(v) for v in roots]
    if family in "BCD":
        roots = []
        for i in range(r - 1):
            v = [Q(0)] * r
            v[i], v[i + 1] = Q(1), Q(-1)
            roots.append(v)
        last = [Q(0)] * r
        if family == "B":
            last[r - 1] = Q(1)
        elif family == "C":
            last[r - 1] = Q(2)
        else:
            last[r - 2], last[r - 1] = Q(1), Q(1)
        roots.append(last)
        return r, [tuple(v) for v in roots]
    if family == "E":
        roots = [[h, -h, -h, -h, -h, -h, -h, h], _unit(8, 0)]
        roots[1][1] = Q(1)
        for k in range(1, 7):
            v = _unit(8, k)
            v[k - 1] = Q(-1)
            roots.append(v)
        return 8, [tuple(v) for v in roots[:r]]
    if family == "F":
        return 4, [
            (Q(0), Q(1), Q(-1), Q(0)),
            (Q(0), Q(0), Q(1), Q(-1)),
            (Q(0), Q(0), Q(0), Q(1)),
            (h, -h, -h, -h),
        ]
    # G2 in the sum-zero plane of Q^3; alpha_1 short.
    return 3, [(Q(1), Q(-1), Q(0)), (Q(-2), Q(1), Q(1))]


def expected_cartan(family: str, r: int) -> list[list[int]]:
    """Cartan matrix ``a[i][j] = <alpha_j, alpha_i^vee>`` from the Dynkin diagram."""
    a = [[2 * int(i == j) for j in range(r)] for i in range(r)]

    def link(i, j, ij=-1, ji=-1):
        a[i - 1][j - 1], a[j - 1][i - 1] = ij, ji

    if family in "ABCD":
        chain = r - 1 if family == "D" else r
        for i in range(1, chain):
            link(i, i + 1)
        if family == "B":
            link(r - 1, r, -1, -2)
        elif family == "C":
            link(r - 1, r, -2, -1)
        elif family == "D":
            link(r - 2, r)
    elif family == "E":
        for i, j in [(1, 3), (3, 4), (4, 5), (2, 4)] + [(k, k + 1) for k in range(5, r)]:
            link(i, j)
    elif family == "F":
        link(1, 2)
        link(2, 3, -1, -2)
        link(3, 4)
    else:
        link(1, 2, -3, -1)
    return a


@dataclass(frozen=True, eq=False)
class RootDatum:
    family: str
    rank: int
    affine: bool
    ambient_dim: int
    simple_roots: tuple
    simple_coroots: tuple
    fundamental_coweights: tuple
    positive_roots: tuple
    highest_root: tuple
    two_rho: tuple
    gram: tuple
    cartan: tuple
    # simple-root coordinates of the positive roots, sorted by height
    positive_coeffs: tuple = field(repr=False)
    highest_coeffs: tuple = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}" + ("~" if self.affine else "")

    @property
    def key(self) -> tuple:
        return (self.family, self.rank, self.affine)

    @property
    def generators(self) -> tuple[int, ...]:
        """Valid generator indices; 0 is the affine reflection."""
        return tuple(range(0 if self.affine else 1, self.rank + 1))

    @property
    def coxeter_number(self) -> int:
        return 1 + sum(self.highest_coeffs)

    def pairing(self, alpha, x) -> Q:
        """Canonical pairing <alpha, x> (ambient dot product)."""
        return la.dot(alpha, x)

    def coroot(self, alpha) -> tuple:
        return la.scale(2 / la.dot(alpha, alpha), alpha)

    def reflect(self, i: int, v) -> tuple:
        """Linear simple reflection s_i (1 <= i <= rank) on an ambient vector."""
        a, ac = self.simple_roots[i - 1], self.simple_coroots[i - 1]
        return la.sub(v, la.scale(la.dot(a, v), ac))

    def to_coweight_coords(self, x) -> tuple:
        """Coordinates of the projection of ``x`` in the coweight basis."""
        return tuple(la.dot(a, x) for a in self.simple_roots)

    def from_coweight_coords(self, y) -> tuple:
        out = [Q(0)] * self.ambient_dim
        for c, w in zip(y, self.fundamental_coweights):
            if c:
                for k, wk in enumerate(w):
                    out[k] += c * wk
        return tuple(out)

    def scaled(self, c) -> "RootDatum":
        """Same datum with the invariant form multiplied by ``c > 0``."""
        from dataclasses import replace

        c = la.as_q(c)
        if c <= 0:
            raise RootDataError("scale factor must be positive")
        return replace(self, gram=tuple(tuple(c * x for x in row) for row in self.gram))

    # integer data consumed by the enumeration kernels

    @property
    def cw_gram(self) -> list:
        """Gram matrix of the fundamental coweights."""
        return _kernel_data(self)["cw_gram"]

    def kernel_arrays(self) -> dict:
        return _kernel_data(self)


_KERNEL_CACHE: dict[int, dict] = {}


def _kernel_data(d: RootDatum) -> dict:
    got = _KERNEL_CACHE.get(id(d))
    if got is not None and got["datum"] is d:
        return got
    r = d.rank
    cartan = np.array(d.cartan, dtype=np.int64)
    hv = [int(d.pairing(a, d.coroot(d.highest_root))) for a in d.simple_roots]
    gens = {}
    for i in d.generators:
        m = np.eye(r, dtype=np.int64)
        t = np.zeros(r, dtype=np.int64)
        if i == 0:
            m -= np.outer(np.array(hv), np.array(d.highest_coeffs))
            t[:] = hv
        else:
            m[:, i - 1] -= cartan[i - 1, :]
        gens[i] = (m, t)
    cw = [[la.dot(wi, la.matvec(d.gram, wj)) for wj in d.fundamental_coweights] for wi in d.fundamental_coweights]
    data = {
        "datum": d,
        "pos": np.array(d.positive_coeffs, dtype=np.int64),
        "denom": d.coxeter_number,
        "gens": gens,
        "cw_gram": cw,
        "cw_gram_inv": la.inverse(cw),
    }
    _KERNEL_CACHE[id(d)] = data
    return data


def _closure_positive(cartan: list[list[int]]) -> list[tuple[int, ...]]:
    r = len(cartan)
    start = [tuple(int(k == i) for k in range(r)) for i in range(r)]
    seen = set(start)
    todo = list(start)
    while todo:
        c = todo.pop()
        for j in range(r):
            p = sum(c[i] * cartan[j][i] for i in range(r))
            if p:
                nc = tuple(c[k] - p * int(k == j) for k in range(r))
                if nc not in seen:
                    seen.add(nc)
                    todo.append(nc)
    pos = [c for c in seen if all(x >= 0 for x in c)]
    if 2 * len(pos) != len(seen):
        raise AssertionError("root closure is not symmetric")
    return sorted(pos, key=lambda c: (sum(c), c))


@lru_cache(maxsize=None)
def build_root_datum(family: str, rank: int, affine: bool = True) -> RootDatum:
    """Construct the root datum of type ``family``/``rank`` (affine or finite)."""
    family = family.upper()
    _check_type(family, rank)
    dim, simple = _simple_roots(family, rank)
    coroots = [la.scale(2 / la.dot(a, a), a) for a in simple]
    cartan = [[int(la.dot(simple[j], coroots[i])) for j in range(rank)] for i in range(rank)]
    if cartan != expected_cartan(family, rank):
        raise AssertionError(f"Cartan matrix of {family}{rank} does not match its Dynkin diagram")
    # dual basis to the simple roots inside their span
    b = [list(a) for a in simple]
    bbt_inv = la.inverse(la.matmul(b, la.transpose(b)))
    coweights = [tuple(sum((bbt_inv[j][i] * b[j][k] for j in range(rank)), Q(0)) for k in range(dim)) for i in range(rank)]
    coeffs = _closure_positive(cartan)

    def combo(c):
        out = [Q(0)] * dim
        for ci, a in zip(c, simple):
            for k in range(dim):
                out[k] += ci * a[k]
        return tuple(out)

    positive = tuple(combo(c) for c in coeffs)
    highest = coeffs[-1]
    if sum(highest) != max(sum(c) for c in coeffs) or sum(1 for c in coeffs if sum(c) == sum(highest)) != 1:
        raise AssertionError("highest root not unique")
    two_rho = tuple(sum((p[k] for p in positive), Q(0)) for k in range(dim))
    gram = tuple(tuple(Q(int(i == j)) for j in range(dim)) for i in range(dim))
    datum = RootDatum(
        family=family,
        rank=rank,
        affine=bool(affine),
        ambient_dim=dim,
        simple_roots=tuple(tuple(a) for a in simple),
        simple_coroots=tuple(coroots),
        fundamental_coweights=tuple(coweights),
        positive_roots=positive,
        highest_root=combo(highest),
        two_rho=two_rho,
        gram=gram,
        cartan=tuple(tuple(row) for row in cartan),
        positive_coeffs=tuple(coeffs),
        highest_coeffs=highest,
    )
    _check_interior_point(datum)
    return datum


def _check_interior_point(d: RootDatum) -> None:
    # basepoint (1/h) sum omega_i^vee must lie strictly inside the fundamental alcove
    h = d.coxeter_number
    for c in d.positive_coeffs:
        v = Q(sum(c), h)
        if v <= 0 or v >= 1:
            raise AssertionError(f"basepoint on a wall of {d.name}")


def inner(datum: RootDatum, v, w) -> Q:
    """Value of the invariant form on two ambient vectors."""
    n = datum.ambient_dim
    if len(v) != n or len(w) != n:
        raise ValueError(f"dimension mismatch: expected vectors of length {n}")
    return la.dot(v, la.matvec(datum.gram, w))


def dominant_representative(datum: RootDatum, v) -> tuple:
    """W-conjugate of ``v`` in the closed fundamental chamber."""
    v = la.vec(v)
    for _ in range(10_000):
        for i in range(1, datum.rank + 1):
            if datum.pairing(datum.simple_roots[i - 1], v) < 0:
                v = datum.reflect(i, v)
                break
        else:
            return v
    raise AssertionError("dominant_representative did not terminate")


def coweight_ratio(datum: RootDatum, i: int) -> Q:
    """(omega_i^vee, alpha_i^vee) / (omega_i^vee, omega_i^vee)."""
    w = datum.fundamental_coweights[i - 1]
    return inner(datum, w, datum.simple_coroots[i - 1]) / inner(datum, w, w)


def to_json(datum: RootDatum) -> dict:
    f = la.fmt
    vecs = lambda vs: [[f(x) for x in v] for v in vs]
    return {
        "family": datum.family,
        "rank": datum.rank,
        "affine": datum.affine,
        "ambient_dim": datum.ambient_dim,
        "simple_roots": vecs(datum.simple_roots),
        "simple_coroots": vecs(datum.simple_coroots),
        "fundamental_coweights": vecs(datum.fundamental_coweights),
        "positive_roots": vecs(datum.positive_roots),
        "highest_root": [f(x) for x in datum.highest_root],
        "two_rho": [f(x) for x in datum.two_rho],
        "gram": vecs(datum.gram),
        "cartan": [list(r) for r in datum.cartan],
        "coxeter_number": datum.coxeter_number,
    }
