"""Explicit length-additive factorizations of the affine Weyl groups of type A and C.

Type A with ``n`` (group of rank ``n-1``) splits as

    X^_n  T_{n-1}  X^_{n-1}  ...  X^_2  T_1  X^_1

and type C with ``n`` (rank ``n-1``) splits as

    X_n  T_1  T_2  ...  T_{n-1}  X_1

where each ``T_i`` stands for the free monoid on a straight element.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction as Q
from typing import Sequence

from . import _linalg as la
from .errors import VerificationError
from .group import AffineWeylElement, ball, compose, finite_parabolic, generator, invert, reduced_word, word_to_element
from .index_calculus import IndexVector, alternating_index, iota_parabolic
from .rootdata import RootDatum, build_root_datum
from .series import TruncSeries, poincare_series, product_of_geometric

FAMILIES = ("A", "C")


def _check_args(family: str, n: int, i: int | None = None) -> None:
    if family not in FAMILIES:
        raise ValueError(f"factorizations exist only for families A and C, got {family!r}")
    lo = 2 if family == "A" else 3
    if n < lo:
        raise ValueError(f"family {family} needs n >= {lo}, got {n}")
    if i is not None and not 1 <= i <= n - 1:
        raise ValueError(f"index i={i} out of range 1..{n - 1}")


def datum_for(family: str, n: int) -> RootDatum:
    """The affine datum of type A_{n-1} or C_{n-1}."""
    _check_args(family, n)
    return build_root_datum(family, n - 1, affine=True)


@dataclass(frozen=True)
class MonoidFactor:
    index: int
    generator: AffineWeylElement
    step_length: int

    @property
    def label(self) -> str:
        return f"T{self.index}"

    def powers(self, cap: int) -> list[AffineWeylElement]:
        out, cur = [], AffineWeylElement.identity(self.generator.datum)
        for _ in range(cap // self.step_length + 1):
            out.append(cur)
            cur = compose(cur, self.generator)
        return out

    def elements_upto(self, cap: int) -> list[AffineWeylElement]:
        return self.powers(cap)

    def poincare(self, cap: int) -> TruncSeries:
        return poincare_series(self.powers(cap), cap)


@dataclass
class FactorSet:
    label: str
    elements: list
    iota: IndexVector | None = None

    def __post_init__(self):
        self.elements = sorted(self.elements)
        if len(set(self.elements)) != len(self.elements):
            raise VerificationError(f"factor set {self.label} has repeated elements")

    def elements_upto(self, cap: int) -> list[AffineWeylElement]:
        return [e for e in self.elements if e.length <= cap]

    def poincare(self, cap: int) -> TruncSeries:
        return poincare_series(self.elements, cap)


# the straight elements


def t_word(family: str, n: int, i: int) -> list[int]:
    _check_args(family, n, i)
    if family == "A":
        return [0] + list(range(n - 1, i, -1)) + list(range(1, i)) + [i]
    word = list(range(n))  # T_{n-1} = s_0 s_1 ... s_{n-1}
    for j in range(n - 1, i, -1):  # T_{j-1} = T_j s_{j-1}
        word.append(j - 1)
    return word


def t_formula(family: str, n: int, i: int, x: Sequence) -> tuple:
    """Coordinate formula for T_i on an ambient point."""
    x = la.vec(x)
    if family == "A":
        k = n - i
        return (x[k - 1] - 1,) + x[: k - 1] + x[k + 1 :] + (x[k] + 1,)
    # coordinates x_1..x_{n-1} are stored at positions 0..n-2
    return (x[i - 1] + 1,) + x[: i - 1] + x[i:]


def _same_affine_map(w: AffineWeylElement, f) -> bool:
    d = w.datum
    probes = [tuple(Q(0) for _ in range(d.ambient_dim))]
    for k in range(d.ambient_dim):
        probes.append(tuple(Q(int(j == k)) for j in range(d.ambient_dim)))
    return all(w(p) == f(p) for p in probes)


@lru_cache(maxsize=None)
def build_T(family: str, n: int, i: int) -> MonoidFactor:
    """T_i from its word, cross-checked against the coordinate formula."""
    d = datum_for(family, n)
    _check_args(family, n, i)
    w = word_to_element(d, t_word(family, n, i))
    if not _same_affine_map(w, lambda p: t_formula(family, n, i, p)):
        raise VerificationError(
            f"T_{i} for {family}, n={n}: word and coordinate formula disagree",
            {"word": t_word(family, n, i)},
        )
    return MonoidFactor(i, w, w.length)


# finite factor sets


def xhat_words(n: int, i: int) -> list[list[int]]:
    """Words of X^_i for type A; t_j = s_{(i - j) mod n}."""

    def t(j):
        return (i - j) % n

    out = [[t(j) for j in range(k, 0, -1)] for k in range(i)]
    u0 = [t(j) for j in range(i, 0, -1)]
    out += [u0 + [t(j) for j in range(i + 1, i + 1 + k)] for k in range(n - i)]
    return out


def xhat_iota(d: RootDatum, n: int, i: int) -> IndexVector:
    # generators t_1..t_{n-1} minus those in t_2..t_{n-1}
    S = set(d.generators)
    big = S - {i % n}
    small = big - {(i - 1) % n}
    return iota_parabolic(d, big) - iota_parabolic(d, small)


def c_factor_sets(d: RootDatum, n: int) -> tuple[FactorSet, FactorSet]:
    """(X_n, X_1) for type C."""
    wv0 = finite_parabolic(d, range(1, n)).elements
    wvn = finite_parabolic(d, range(0, n - 1)).elements
    gens = [generator(d, k) for k in range(1, n)]
    x1 = [w for w in wvn if all(compose(s, w).length > w.length for s in gens)]
    xn = FactorSet(f"X{n}", wv0, iota_parabolic(d, range(1, n)))
    iota1 = iota_parabolic(d, range(0, n - 1)) - iota_parabolic(d, range(1, n - 1))
    return xn, FactorSet("X1", x1, iota1)


def build_factor_sets(family: str, n: int) -> list[FactorSet]:
    """Finite factor sets in chain order (leftmost first)."""
    d = datum_for(family, n)
    if family == "A":
        out = []
        for i in range(n, 0, -1):
            elems = [word_to_element(d, w) for w in xhat_words(n, i)]
            fs = FactorSet(f"X^{i}", elems, xhat_iota(d, n, i))
            lens = sorted(e.length for e in fs.elements)
            if lens != list(range(n)):
                raise VerificationError(f"X^{i} has length multiset {lens}, expected 0..{n - 1}")
            out.append(fs)
        return out
    xn, x1 = c_factor_sets(d, n)
    return [xn, x1]


def factor_chain(family: str, n: int) -> list:
    """Factor sets and monoids in multiplication order."""
    sets = build_factor_sets(family, n)
    if family == "A":
        chain = [sets[0]]
        for fs, i in zip(sets[1:], range(n - 1, 0, -1)):
            chain += [build_T("A", n, i), fs]
        return chain
    xn, x1 = sets
    return [xn] + [build_T("C", n, i) for i in range(1, n)] + [x1]


def factor_index(family: str, n: int) -> IndexVector:
    """Sum of the factor sets' index vectors, checked against the alternating index."""
    d = datum_for(family, n)
    total = IndexVector(d)
    for fs in build_factor_sets(family, n):
        total = total + fs.iota
    expected = alternating_index(d)
    if total != expected:
        raise VerificationError(
            f"factor index of {family}, n={n} differs from the alternating index",
            {"factor_index": total.to_json(), "alternating_index": expected.to_json()},
        )
    return total


# verification


@dataclass
class FactorizationReport:
    family: str
    n: int
    cap: int
    order: list
    tuples: int = 0
    image_size: int = 0
    ball_size: int = 0
    additive: bool = True
    injective: bool = True
    surjective: bool = True
    series_ok: bool = True
    product_series: TruncSeries | None = None
    ball_series: TruncSeries | None = None
    counterexamples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.additive and self.injective and self.surjective and self.series_ok

    def assertions(self) -> list[dict]:
        return [
            {"name": "length_additive", "pass": self.additive, "detail": f"{self.tuples} tuples"},
            {"name": "injective", "pass": self.injective, "detail": f"{self.image_size} distinct products"},
            {"name": "surjective", "pass": self.surjective, "detail": f"ball has {self.ball_size} elements"},
            {"name": "series_identity", "pass": self.series_ok, "detail": "product of factor series vs ball"},
        ]

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "cap": self.cap,
            "order": self.order,
            "tuples": self.tuples,
            "image_size": self.image_size,
            "ball_size": self.ball_size,
            "product_series": self.product_series.to_json() if self.product_series else None,
            "ball_series": self.ball_series.to_json() if self.ball_series else None,
            "counterexamples": self.counterexamples,
        }


MAX_COUNTEREXAMPLES = 10


def enumerate_products(chain: list, cap: int):
    """Yield ``(factors, product, total_length)`` for tuples with total length <= cap."""
    d = (chain[0].elements[0] if isinstance(chain[0], FactorSet) else chain[0].generator).datum
    levels = [f.elements_upto(cap) for f in chain]

    def rec(k, prefix, prod, total):
        if k == len(levels):
            yield tuple(prefix), prod, total
            return
        for e in levels[k]:
            t = total + e.length
            if t > cap:
                break  # elements are sorted by length
            prefix.append(e)
            yield from rec(k + 1, prefix, compose(prod, e), t)
            prefix.pop()

    yield from rec(0, [], AffineWeylElement.identity(d), 0)


def verify_factorization(family: str, n: int, cap: int) -> FactorizationReport:
    """Check that the factor chain multiplies bijectively and length-additively onto the ball."""
    if cap < 0:
        raise ValueError("cap must be >= 0")
    d = datum_for(family, n)
    chain = factor_chain(family, n)
    rep = FactorizationReport(family, n, cap, [f.label for f in chain])
    seen: dict = {}
    for factors, prod, total in enumerate_products(chain, cap):
        rep.tuples += 1
        if prod.length != total:
            rep.additive = False
            if len(rep.counterexamples) < MAX_COUNTEREXAMPLES:
                rep.counterexamples.append(
                    {
                        "kind": "non_additive",
                        "tuple": [reduced_word(f) for f in factors],
                        "factor_lengths": [f.length for f in factors],
                        "product": reduced_word(prod),
                        "product_length": prod.length,
                    }
                )
        if prod in seen:
            rep.injective = False
            if len(rep.counterexamples) < MAX_COUNTEREXAMPLES:
                rep.counterexamples.append(
                    {
                        "kind": "collision",
                        "tuple": [reduced_word(f) for f in factors],
                        "other": [reduced_word(f) for f in seen[prod]],
                        "product": reduced_word(prod),
                    }
                )
        else:
            seen[prod] = factors
    b = ball(d, None, cap)
    target = set(b.elements)
    rep.ball_size = len(target)
    rep.image_size = len(seen)
    missing = sorted(target - set(seen))
    extra = sorted(set(seen) - target)
    if missing or extra:
        rep.surjective = False
        for w in (missing + extra)[:MAX_COUNTEREXAMPLES]:
            rep.counterexamples.append(
                {"kind": "missing" if w in target else "outside_ball", "element": reduced_word(w), "length": w.length}
            )
    ser = TruncSeries.one(cap)
    for f in chain:
        ser = ser * (f.poincare(cap) if isinstance(f, FactorSet) else product_of_geometric([f.step_length], cap))
    rep.product_series = ser
    rep.ball_series = poincare_series(b, cap)
    rep.series_ok = ser == rep.ball_series
    return rep


# regions of the ambient model

_LABEL = re.compile(r"^(?:S_?(\d+)|F_?(\d+)|D_?0|T_?(\d+)\(S_?(\d+)\))$")


def _in_S(family: str, n: int, k: int, x: tuple) -> bool:
    if family == "A":
        if not 0 <= k <= n - 1:
            raise ValueError(f"S_{k} undefined for n={n}")
        ext = x + (x[0] + 1,)  # x_n = x_0 + 1
        chain = ext[: n - k]
        return all(a <= b for a, b in zip(chain, chain[1:])) and chain[-1] <= min(ext[n - k :])
    if not 0 <= k <= n - 1:
        raise ValueError(f"S_{k} undefined for n={n}")
    ext = x + (Q(0),)  # x_n = 0
    top = ext[n - k - 1] + 1
    chain = (top,) + x + (Q(0),)
    return all(a >= b for a, b in zip(chain, chain[1:]))


@lru_cache(maxsize=None)
def _t_inverse(family: str, n: int, i: int) -> AffineWeylElement:
    return invert(build_T(family, n, i).generator)


def monoid_domain(family: str, n: int, i: int) -> int:
    """Index k of the region S_k on which T_i acts as a monoid."""
    return i if family == "A" else n - i


def region_membership(family: str, n: int, region: str, point: Sequence) -> bool:
    """Exact membership of ``point`` in a labelled region.

    Labels: ``S_k``, ``T_i(S_k)``, ``F_i`` (the part of T_i's domain missed
    by its image; ``F_0 = S_0``) and ``D_0`` (the fundamental alcove).
    """
    _check_args(family, n)
    m = _LABEL.match(region.replace(" ", ""))
    if not m:
        raise ValueError(f"unknown region label {region!r}")
    x = la.vec(point)
    dim = n if family == "A" else n - 1
    if len(x) != dim:
        raise ValueError(f"point must have {dim} coordinates")
    s_k, f_i, t_i, t_k = m.groups()
    if s_k is not None:
        return _in_S(family, n, int(s_k), x)
    if t_i is not None:
        i, k = int(t_i), int(t_k)
        _check_args(family, n, i)
        y = _t_inverse(family, n, i)(x)
        return _in_S(family, n, k, y)
    if f_i is not None:
        i = int(f_i)
        if i == 0:
            return _in_S(family, n, 0, x)
        _check_args(family, n, i)
        k = monoid_domain(family, n, i)
        return _in_S(family, n, k, x) and not region_membership(family, n, f"T{i}(S{k})", x)
    if family == "A":
        return _in_S("A", n, 0, x)
    chain = (Q(1, 2),) + x + (Q(0),)
    return all(a >= b for a, b in zip(chain, chain[1:]))
