"""Drift vectors, Min sets, walls and straightness of affine Weyl elements.

Subspaces returned here live in the ambient model and always lie in the
real span of the roots (the apartment).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q

from . import _linalg as la
from .group import AffineWeylElement, compose
from .rootdata import RootDatum, coweight_ratio, dominant_representative

MAX_LINEAR_ORDER = 60


class EllipticError(ValueError):
    """The element fixes a point, so it has no translation direction."""


class TubeDegreeError(ArithmeticError):
    """The degree formula produced something other than a positive integer."""


@dataclass(frozen=True)
class AffineSubspace:
    base: tuple
    directions: tuple = ()

    def __post_init__(self):
        if self.directions and la.rank([list(d) for d in self.directions]) != len(self.directions):
            raise ValueError("directions must be linearly independent")

    @property
    def dim(self) -> int:
        return len(self.directions)

    def point(self, coeffs) -> tuple:
        p = self.base
        for c, d in zip(coeffs, self.directions):
            p = la.add(p, la.scale(la.as_q(c), d))
        return p

    def contains(self, x) -> bool:
        diff = la.sub(la.vec(x), self.base)
        if not self.directions:
            return not any(diff)
        cols = la.transpose([list(d) for d in self.directions])
        return la.solve_particular(cols, diff) is not None


@dataclass(frozen=True)
class DriftData:
    order_m: int
    v_w: tuple  # ambient
    v_cw: tuple  # coweight coordinates
    c_w: Q | None = None
    direction: int | None = None  # i with v_w parallel to omega_i^vee

    @property
    def elliptic(self) -> bool:
        return not any(self.v_cw)


def linear_order(w: AffineWeylElement) -> int:
    r = len(w.t)
    eye = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
    cur = w.m
    for k in range(1, MAX_LINEAR_ORDER + 1):
        if cur == eye:
            return k
        cur = tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in zip(*w.m)) for row in cur)
    raise AssertionError(f"linear part has order > {MAX_LINEAR_ORDER}")


def drift(w: AffineWeylElement) -> DriftData:
    """Translation vector ``v_w`` with ``w**m = t^(m v_w)``."""
    m = linear_order(w)
    wm = w**m
    v_cw = tuple(Q(x, m) for x in wm.t)
    support = [k for k, x in enumerate(v_cw) if x]
    c = idx = None
    if len(support) == 1:
        idx = support[0] + 1
        c = v_cw[support[0]]
    return DriftData(m, w.datum.from_coweight_coords(v_cw), v_cw, c, idx)


def min_set(w: AffineWeylElement) -> AffineSubspace:
    """``{x : w(x) = x + v_w}`` as an exact affine subspace."""
    d = w.datum
    v = drift(w).v_cw
    r = len(v)
    a = [[Q(w.m[i][j] - int(i == j)) for j in range(r)] for i in range(r)]
    rhs = [vi - ti for vi, ti in zip(v, w.t)]
    y0 = la.solve_particular(a, rhs)
    if y0 is None:
        raise AssertionError(f"empty Min set for {w!r}: drift computation is inconsistent")
    dirs = la.nullspace(a, r)
    return AffineSubspace(d.from_coweight_coords(y0), tuple(d.from_coweight_coords(x) for x in dirs))


def avoids_walls(sub: AffineSubspace, datum: RootDatum) -> bool:
    """True iff ``sub`` lies in no wall ``<alpha, x> = k``."""
    for alpha in datum.positive_roots:
        if all(la.dot(alpha, e) == 0 for e in sub.directions):
            if la.dot(alpha, sub.base).denominator == 1:
                return False
    return True


def stabilizes_tube(w: AffineWeylElement, i: int) -> bool:
    """Whether ``w`` translates along omega_i^vee and its Min set avoids every wall."""
    dd = drift(w)
    if dd.elliptic:
        raise EllipticError(f"{w!r} has a fixed point (zero drift); no tube direction")
    if dd.direction != i:
        return False
    return avoids_walls(min_set(w), w.datum)


@dataclass(frozen=True)
class StraightReport:
    length: int
    powers_ok: bool
    k_max: int
    formula_value: Q
    formula_ok: bool

    def __bool__(self):
        return self.powers_ok and self.formula_ok


def straight_formula(w: AffineWeylElement) -> Q:
    """<2 rho, dominant representative of v_w>."""
    v = dominant_representative(w.datum, drift(w).v_w)
    return la.dot(w.datum.two_rho, v)


def is_straight(w: AffineWeylElement, k_max: int = 5) -> StraightReport:
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    ell = w.length
    cur, ok = w, True
    for k in range(2, k_max + 1):
        cur = compose(cur, w)
        if cur.length != k * ell:
            ok = False
            break
    f = straight_formula(w)
    return StraightReport(ell, ok, k_max, f, f == ell)


def tube_degree(datum: RootDatum, i: int) -> Q:
    """Degree attached to the i-th fundamental coweight.

    Raises TubeDegreeError when the value is not a positive integer.
    """
    if not 1 <= i <= datum.rank:
        raise IndexError(f"coweight index {i} out of range 1..{datum.rank}")
    w = datum.fundamental_coweights[i - 1]
    d = coweight_ratio(datum, i) * la.dot(datum.two_rho, w)
    if d.denominator != 1 or d <= 0:
        raise TubeDegreeError(f"tube_degree({datum.name}, {i}) = {d} is not a positive integer")
    return d


def tube_degrees(datum: RootDatum) -> list[int]:
    return [int(tube_degree(datum, i)) for i in range(1, datum.rank + 1)]


def connection_index(datum: RootDatum) -> int:
    """[coweight lattice : coroot lattice] = |det Cartan|."""
    return abs(int(la.det([list(r) for r in datum.cartan])))


def coxeter_multiplicity_table(data) -> list[dict]:
    """How often h appears among the degrees, next to the connection index.

    Emitted for inspection only; nothing here asserts the relation.
    """
    rows = []
    for d in data:
        degs = tube_degrees(d)
        h = d.coxeter_number
        rows.append(
            {
                "datum": d.name,
                "degrees": degs,
                "coxeter_number": h,
                "count_h": degs.count(h),
                "connection_index": connection_index(d),
            }
        )
    return rows
