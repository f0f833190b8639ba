"""Hecke algebra representations at rational q and twisted Poincare series."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction as Q
from itertools import combinations
from pathlib import Path

from . import _linalg as la
from .factorizations import FactorSet, MonoidFactor, datum_for, factor_chain
from .group import AffineWeylElement, ball, braid_order, reduced_word
from .rootdata import RootDatum, build_root_datum
from .series import MatrixSeries, TruncSeries, matrix_series_det, series_inverse

_RATIONAL = re.compile(r"^[+-]?\d+(?:/\d+)?$")


class RepError(ValueError):
    pass


class RepFormatError(RepError):
    """The document is malformed (shape, types, rational syntax)."""


class RelationError(RepError):
    """A quadratic or braid relation fails."""

    def __init__(self, message: str, pair: tuple, residual: list):
        super().__init__(message)
        self.pair = pair
        self.residual = residual

    def to_json(self) -> dict:
        return {"pair": list(self.pair), "residual": [[la.fmt(x) for x in row] for row in self.residual]}


def parse_rational(s, where: str = "value") -> Q:
    if not isinstance(s, str) or not _RATIONAL.match(s.strip()):
        raise RepFormatError(f"{where}: expected a rational string like '3/2', got {s!r}")
    try:
        return Q(s.strip())
    except ZeroDivisionError:
        raise RepFormatError(f"{where}: zero denominator in {s!r}") from None


def _is_zero(m) -> bool:
    return all(x == 0 for row in m for x in row)


@dataclass
class HeckeRep:
    datum: RootDatum
    q: Q
    dim: int
    generators: dict  # index -> d x d Fraction matrix
    name: str = "custom"
    braid_orders: dict = field(default_factory=dict)

    def matrix(self, i: int):
        return self.generators[i]

    def to_json(self) -> dict:
        return {
            "family": self.datum.family,
            "rank": self.datum.rank,
            "affine": self.datum.affine,
            "q": la.fmt(self.q),
            "dim": self.dim,
            "generators": [[[la.fmt(x) for x in row] for row in self.generators[i]] for i in self.datum.generators],
        }


def check_relations(rep: HeckeRep) -> None:
    """Raise RelationError on the first failing quadratic or braid relation."""
    d, q = rep.dim, rep.q
    eye = la.identity(d)
    for i in rep.datum.generators:
        e = rep.generators[i]
        a = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(e, eye)]
        b = [[x - q * y for x, y in zip(r1, r2)] for r1, r2 in zip(e, eye)]
        res = la.matmul(a, b)
        if not _is_zero(res):
            raise RelationError(f"quadratic relation fails for generator {i}", (i, i), res)
    for i, j in combinations(rep.datum.generators, 2):
        m = braid_order(rep.datum, i, j)
        rep.braid_orders[(i, j)] = m
        if m is None:
            continue
        lhs, rhs = eye, eye
        for k in range(m):
            lhs = la.matmul(lhs, rep.generators[(i, j)[k % 2]])
            rhs = la.matmul(rhs, rep.generators[(j, i)[k % 2]])
        diff = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(lhs, rhs)]
        if not _is_zero(diff):
            raise RelationError(f"braid relation of length {m} fails for generators ({i}, {j})", (i, j), diff)


def _validate_q(q: Q) -> None:
    if q == 0 or q == -1:
        raise RepFormatError(f"q = {q} is excluded (degenerate quadratic relation)")


def load_rep(datum: RootDatum | None, source) -> HeckeRep:
    """Parse and validate a representation from a path, JSON text or dict.

    When ``datum`` is None it is built from the document's header.
    """
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        try:
            doc = json.loads(Path(source).read_text())
        except OSError as exc:
            raise RepFormatError(f"cannot read representation file: {exc}") from None
        except json.JSONDecodeError as exc:
            raise RepFormatError(f"invalid JSON: {exc}") from None
    elif isinstance(source, str):
        try:
            doc = json.loads(source)
        except json.JSONDecodeError as exc:
            raise RepFormatError(f"invalid JSON: {exc}") from None
    else:
        doc = source
    if not isinstance(doc, dict):
        raise RepFormatError("representation document must be an object")
    missing = {"family", "rank", "affine", "q", "dim", "generators"} - set(doc)
    if missing:
        raise RepFormatError(f"missing fields: {sorted(missing)}")
    fam, rank, affine = doc["family"], doc["rank"], doc["affine"]
    if not isinstance(fam, str) or type(rank) is not int or not isinstance(affine, bool):
        raise RepFormatError("family must be a string, rank an integer, affine a boolean")
    if datum is None:
        datum = build_root_datum(fam, rank, affine)
    elif (fam.upper(), rank, affine) != datum.key:
        raise RepFormatError(f"document is for {fam}{rank}{'~' if affine else ''}, expected {datum.name}")
    q = parse_rational(doc["q"], "q")
    _validate_q(q)
    d = doc["dim"]
    if type(d) is not int or d < 1:
        raise RepFormatError("dim must be a positive integer")
    gens = doc["generators"]
    if not isinstance(gens, list) or len(gens) != len(datum.generators):
        raise RepFormatError(f"expected {len(datum.generators)} generator matrices")
    mats = {}
    for idx, m in zip(datum.generators, gens):
        if not isinstance(m, list) or len(m) != d or any(not isinstance(r, list) or len(r) != d for r in m):
            raise RepFormatError(f"generator {idx} is not a {d}x{d} matrix")
        mats[idx] = [[parse_rational(x, f"generator {idx}[{a}][{b}]") for b, x in enumerate(r)] for a, r in enumerate(m)]
    rep = HeckeRep(datum, q, d, mats, name=str(doc.get("name", "custom")))
    check_relations(rep)
    return rep


def trivial_rep(datum: RootDatum, q) -> HeckeRep:
    q = la.as_q(q)
    _validate_q(q)
    rep = HeckeRep(datum, q, 1, {i: [[q]] for i in datum.generators}, name="trivial")
    check_relations(rep)
    return rep


def sign_rep(datum: RootDatum, q) -> HeckeRep:
    q = la.as_q(q)
    _validate_q(q)
    rep = HeckeRep(datum, q, 1, {i: [[Q(-1)]] for i in datum.generators}, name="sign")
    check_relations(rep)
    return rep


def a1_two_dim_rep(q, p=((1, 1), (1, 2))) -> HeckeRep:
    """Rank-one affine rep: E_0 = diag(q, -1), E_1 its conjugate by ``p``."""
    q = la.as_q(q)
    _validate_q(q)
    d = build_root_datum("A", 1, affine=True)
    p = [[Q(x) for x in row] for row in p]
    diag = [[q, Q(0)], [Q(0), Q(-1)]]
    e1 = la.matmul(la.matmul(p, diag), la.inverse(p))
    rep = HeckeRep(d, q, 2, {0: diag, 1: e1}, name="a1-2dim")
    check_relations(rep)
    return rep


def reflection_rep(datum: RootDatum, sqrt_q) -> HeckeRep:
    """Reflection representation at q = sqrt_q**2, one basis vector per generator.

    T_s e_s = -e_s and T_s e_t = q e_t - sqrt_q * A[s][t] e_s, with A the
    (generalized) Cartan matrix of the generating reflections.
    """
    r = la.as_q(sqrt_q)
    q = r * r
    _validate_q(q)
    roots = list(datum.simple_roots)
    idx = list(datum.generators)
    if datum.affine:
        roots = [tuple(-x for x in datum.highest_root)] + roots
    coroots = [la.scale(2 / la.dot(a, a), a) for a in roots]
    n = len(idx)
    mats = {}
    for a, s in enumerate(idx):
        m = [[Q(0)] * n for _ in range(n)]
        for b in range(n):
            if b == a:
                m[a][a] = Q(-1)
            else:
                m[b][b] = q
                m[a][b] = -r * la.dot(roots[b], coroots[a])
        mats[s] = m
    rep = HeckeRep(datum, q, n, mats, name="reflection")
    check_relations(rep)
    return rep


BUILTIN = {"trivial": trivial_rep, "sign": sign_rep}


def evaluate_basis(rep: HeckeRep, w: AffineWeylElement, strategy: str = "min"):
    """sigma(e_w) as the product along a reduced word."""
    out = la.identity(rep.dim)
    for i in reduced_word(w, strategy):
        out = la.matmul(out, rep.generators[i])
    return out


def twisted_series(rep: HeckeRep, source, cap: int) -> MatrixSeries:
    """Sum of sigma(e_w) u^len(w) over a parabolic (iterable of generator
    indices), a FactorSet, a MonoidFactor or a list of elements."""
    if isinstance(source, MonoidFactor):
        step = evaluate_basis(rep, source.generator)
        pairs, cur = [], la.identity(rep.dim)
        for k in range(cap // source.step_length + 1):
            pairs.append((k * source.step_length, cur))
            cur = la.matmul(cur, step)
        return MatrixSeries.from_terms(pairs, rep.dim, cap)
    if isinstance(source, FactorSet):
        elems = source.elements
    elif isinstance(source, (list, tuple)) and source and isinstance(source[0], AffineWeylElement):
        elems = source
    else:
        b = ball(rep.datum, tuple(source), cap)
        mats = []
        for k in range(len(b)):
            p = int(b.parent[k])
            mats.append(la.identity(rep.dim) if p < 0 else la.matmul(mats[p], rep.generators[int(b.pgen[k])]))
        return MatrixSeries.from_terms(zip(b.lengths.tolist(), mats), rep.dim, cap)
    return MatrixSeries.from_terms(((e.length, evaluate_basis(rep, e)) for e in elems if e.length <= cap), rep.dim, cap)


def twisted_det(rep: HeckeRep, source, cap: int) -> TruncSeries:
    return matrix_series_det(twisted_series(rep, source, cap))


@dataclass
class ConjectureReport:
    family: str
    n: int
    rep_name: str
    q: Q
    cap: int
    full: TruncSeries
    factored: TruncSeries
    alternating: TruncSeries
    monoid_product: TruncSeries
    shifted_reading: TruncSeries
    factored_ok: bool
    alternating_ok: bool
    shifted_ok: bool
    first_difference: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.factored_ok and self.alternating_ok

    def assertions(self) -> list[dict]:
        return [
            {"name": "factored_form", "pass": self.factored_ok, "detail": self.first_difference.get("factored", "equal")},
            {"name": "alternating_form", "pass": self.alternating_ok, "detail": self.first_difference.get("alternating", "equal")},
        ]

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "rep": self.rep_name,
            "q": la.fmt(self.q),
            "cap": self.cap,
            "convention": (
                "det W(sigma,u) = prod_{I proper} det W_I(sigma,u)^((-1)^(|S|+|I|+1)) * prod_i det T_i(sigma,u); "
                "equivalent to the product over all I with exponent (-1)^(|S|+|I|)"
            ),
            "full": self.full.to_json(),
            "factored": self.factored.to_json(),
            "alternating": self.alternating.to_json(),
            "monoid_product": self.monoid_product.to_json(),
            "shifted_exponent_reading": {"holds": self.shifted_ok, "lhs": self.shifted_reading.to_json()},
            "first_difference": self.first_difference,
        }


def _diff(a: TruncSeries, b: TruncSeries) -> dict | None:
    k = a.first_difference(b)
    if k is None:
        return None
    return {"degree": k, "lhs": la.fmt(a[k]), "rhs": la.fmt(b[k])}


def verify_conjecture_b(family: str, n: int, rep: HeckeRep, cap: int = 16) -> ConjectureReport:
    """Compare det of the full twisted series with its factored and alternating forms."""
    d = datum_for(family, n)
    if rep.datum.key != d.key:
        raise RepError(f"representation is for {rep.datum.name}, not {d.name}")
    S = d.generators
    full = twisted_det(rep, S, cap)
    chain = factor_chain(family, n)
    factored = TruncSeries.one(cap)
    monoids = TruncSeries.one(cap)
    for f in chain:
        det = twisted_det(rep, f, cap)
        factored = factored * det
        if isinstance(f, MonoidFactor):
            monoids = monoids * det
    proper = TruncSeries.one(cap)
    for k in range(len(S)):
        for sub in combinations(S, k):
            w = twisted_det(rep, sub, cap)
            proper = proper * (w if (len(S) + k + 1) % 2 == 0 else series_inverse(w))
    alternating = proper * monoids
    # exponent (-1)^(|S|-1+|I|) over all I: the full group lands in the denominator
    shifted = series_inverse(full) * proper
    rep_out = ConjectureReport(
        family=family,
        n=n,
        rep_name=rep.name,
        q=rep.q,
        cap=cap,
        full=full,
        factored=factored,
        alternating=alternating,
        monoid_product=monoids,
        shifted_reading=shifted,
        factored_ok=factored == full,
        alternating_ok=alternating == full,
        shifted_ok=shifted == monoids,
    )
    for key, s in (("factored", factored), ("alternating", alternating)):
        diff = _diff(s, full)
        if diff:
            rep_out.first_difference[key] = diff
    return rep_out
