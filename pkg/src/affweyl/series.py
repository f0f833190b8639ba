"""Truncated power series over exact rationals, matrix series and determinants."""

from __future__ import annotations

from fractions import Fraction as Q
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from . import _linalg as la
from .group import Ball, ball, finite_parabolic
from .rootdata import RootDatum

DEFAULT_CAP = 24


class NonUnitError(ZeroDivisionError):
    """Inversion of a series whose constant term vanishes."""


class TruncSeries:
    """Power series in ``u`` known up to and including ``u**cap``."""

    __slots__ = ("cap", "coeffs")

    def __init__(self, coeffs: Iterable = (), cap: int | None = None):
        cs = [la.as_q(c) for c in coeffs]
        if cap is None:
            cap = max(len(cs) - 1, 0)
        if cap < 0:
            raise ValueError("cap must be >= 0")
        cs = cs[: cap + 1] + [Q(0)] * (cap + 1 - len(cs))
        self.cap = cap
        self.coeffs = tuple(cs)

    @classmethod
    def one(cls, cap: int) -> "TruncSeries":
        return cls([1], cap)

    @classmethod
    def monomial(cls, k: int, cap: int, c=1) -> "TruncSeries":
        cs = [0] * (cap + 1)
        if k <= cap:
            cs[k] = c
        return cls(cs, cap)

    @classmethod
    def geometric(cls, d: int, cap: int) -> "TruncSeries":
        """1 / (1 - u**d)."""
        if d <= 0:
            raise ValueError("degree must be positive")
        return cls([int(k % d == 0) for k in range(cap + 1)], cap)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return self.cap + 1

    def __iter__(self):
        return iter(self.coeffs)

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        return TruncSeries([other], self.cap)

    def __eq__(self, other):
        if isinstance(other, (int, Q)):
            other = TruncSeries([other], self.cap)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = min(self.cap, other.cap)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.cap, other.cap)
        return TruncSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-a for a in self.coeffs], self.cap)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            c = la.as_q(other)
            return TruncSeries([c * a for a in self.coeffs], self.cap)
        n = min(self.cap, other.cap)
        a, b = self.coeffs, other.coeffs
        nz = [(i, x) for i, x in enumerate(a[: n + 1]) if x]
        out = [Q(0)] * (n + 1)
        for j, y in enumerate(b[: n + 1]):
            if y:
                for i, x in nz:
                    if i + j > n:
                        break
                    out[i + j] += x * y
        return TruncSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return series_inverse(self) ** (-k)
        out = TruncSeries.one(self.cap)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def truncate(self, cap: int) -> "TruncSeries":
        return TruncSeries(self.coeffs, min(cap, self.cap))

    def substitute_scale(self, c) -> "TruncSeries":
        """The series with ``u`` replaced by ``c * u``."""
        c = la.as_q(c)
        return TruncSeries([a * c**k for k, a in enumerate(self.coeffs)], self.cap)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def first_difference(self, other: "TruncSeries") -> int | None:
        n = min(self.cap, other.cap)
        for k in range(n + 1):
            if self.coeffs[k] != other.coeffs[k]:
                return k
        return None

    def to_json(self) -> dict:
        return {"cap": self.cap, "coeffs": [la.fmt(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "TruncSeries":
        return cls([Q(c) for c in obj["coeffs"]], int(obj["cap"]))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*u^{k}")
        return f"TruncSeries({' + '.join(terms) or '0'}; cap={self.cap})"


def series_inverse(s: TruncSeries) -> TruncSeries:
    c0 = s.coeffs[0]
    if c0 == 0:
        raise NonUnitError("series has zero constant term and is not invertible")
    n = s.cap
    inv0 = 1 / c0
    out = [inv0] + [Q(0)] * n
    a = s.coeffs
    for k in range(1, n + 1):
        acc = sum((a[j] * out[k - j] for j in range(1, k + 1) if a[j]), Q(0))
        out[k] = -acc * inv0
    return TruncSeries(out, n)


def poincare_series(elements, cap: int) -> TruncSeries:
    """Length generating function of a finite element set.

    ``elements`` may be a ``Ball``, an iterable of elements with a
    ``length`` attribute, or an iterable of integer lengths.
    """
    counts = [0] * (cap + 1)
    if isinstance(elements, Ball):
        lens = elements.lengths.tolist()
    else:
        lens = [e if isinstance(e, int) else e.length for e in elements]
    for ell in lens:
        if ell <= cap:
            counts[ell] += 1
    return TruncSeries(counts, cap)


def product_of_geometric(degrees: Iterable[int], cap: int) -> TruncSeries:
    """prod 1/(1 - u**d)."""
    out = TruncSeries.one(cap)
    for d in degrees:
        out = out * TruncSeries.geometric(d, cap)
    return out


def factor_geometric(s: TruncSeries) -> list[int] | None:
    """Write ``s`` as prod 1/(1-u**d) up to its cap by lowest-degree extraction.

    Returns the degrees (ascending) or None when ``s`` is not of that form.
    """
    cap = s.cap
    if s.coeffs[0] != 1:
        return None
    cur = s
    out = []
    for k in range(1, cap + 1):
        c = cur.coeffs[k]
        if c == 0:
            continue
        if c < 0 or c.denominator != 1:
            return None
        out += [k] * int(c)
        cur = cur * (TruncSeries([1], cap) - TruncSeries.monomial(k, cap)) ** int(c)
    return out if cur == TruncSeries.one(cap) else None


@lru_cache(maxsize=None)
def _parabolic_poly(datum: RootDatum, gens: tuple, cap: int) -> TruncSeries:
    return poincare_series(finite_parabolic(datum, gens), cap)


def parabolic_series(datum: RootDatum, gens: Sequence[int], cap: int) -> TruncSeries:
    """W_I(u) truncated at ``cap``; enumerates the whole group when it is proper."""
    gens = tuple(sorted(gens))
    if datum.affine and set(gens) == set(datum.generators):
        return poincare_series(ball(datum, gens, cap), cap)
    return _parabolic_poly(datum, gens, cap)


def alternating_product(datum: RootDatum, cap: int = DEFAULT_CAP) -> TruncSeries:
    """prod over all I subset of S of W_I(u)^((-1)^(|S|+|I|)), including I = S."""
    if not datum.affine:
        raise ValueError("alternating_product needs an affine root datum")
    S = datum.generators
    out = TruncSeries.one(cap)
    for k in range(len(S) + 1):
        for sub in combinations(S, k):
            w = parabolic_series(datum, sub, cap)
            out = out * (w if (len(S) + k) % 2 == 0 else series_inverse(w))
    return out


class MatrixSeries:
    """Square matrix of truncated series with a common cap."""

    __slots__ = ("dim", "cap", "entries")

    def __init__(self, entries: Sequence[Sequence[TruncSeries]]):
        self.dim = len(entries)
        if any(len(row) != self.dim for row in entries):
            raise ValueError("matrix series must be square")
        caps = {e.cap for row in entries for e in row}
        if len(caps) > 1:
            raise ValueError("entries must share a cap")
        self.cap = caps.pop() if caps else 0
        self.entries = tuple(tuple(row) for row in entries)

    @classmethod
    def zero(cls, dim: int, cap: int) -> "MatrixSeries":
        z = TruncSeries([], cap)
        return cls([[z] * dim for _ in range(dim)])

    @classmethod
    def identity(cls, dim: int, cap: int) -> "MatrixSeries":
        return cls([[TruncSeries([int(i == j)], cap) for j in range(dim)] for i in range(dim)])

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, Sequence[Sequence]]], dim: int, cap: int) -> "MatrixSeries":
        """Sum of ``matrix * u**k`` over ``(k, matrix)`` pairs."""
        acc = [[[Q(0)] * (cap + 1) for _ in range(dim)] for _ in range(dim)]
        for k, m in terms:
            if k > cap:
                continue
            for i in range(dim):
                for j in range(dim):
                    if m[i][j]:
                        acc[i][j][k] += m[i][j]
        return cls([[TruncSeries(acc[i][j], cap) for j in range(dim)] for i in range(dim)])

    def coefficient(self, k: int) -> list:
        return [[e.coeffs[k] for e in row] for row in self.entries]

    def __mul__(self, other: "MatrixSeries") -> "MatrixSeries":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        d = self.dim
        cap = min(self.cap, other.cap)
        out = []
        for i in range(d):
            row = []
            for j in range(d):
                acc = TruncSeries([], cap)
                for k in range(d):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return MatrixSeries(out)

    def __add__(self, other: "MatrixSeries") -> "MatrixSeries":
        return MatrixSeries([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def __eq__(self, other):
        if not isinstance(other, MatrixSeries):
            return NotImplemented
        return self.dim == other.dim and all(a == b for r1, r2 in zip(self.entries, other.entries) for a, b in zip(r1, r2))

    def to_json(self) -> dict:
        return {"dim": self.dim, "cap": self.cap, "entries": [[e.to_json()["coeffs"] for e in row] for row in self.entries]}


def _det_laplace(m: Sequence[Sequence[TruncSeries]], cap: int) -> TruncSeries:
    n = len(m)

    @lru_cache(maxsize=None)
    def minor(row: int, cols: frozenset) -> TruncSeries:
        if row == n:
            return TruncSeries.one(cap)
        acc = TruncSeries([], cap)
        for sign_pos, c in enumerate(sorted(cols)):
            e = m[row][c]
            if any(e.coeffs):
                term = e * minor(row + 1, cols - {c})
                acc = acc - term if sign_pos % 2 else acc + term
        return acc

    return minor(0, frozenset(range(n)))


def _det_bareiss(m: Sequence[Sequence[TruncSeries]], cap: int) -> TruncSeries | None:
    # fraction-free elimination; the divisions are exact, and in the truncated
    # ring they are only exact when the divisor is a unit
    a = [list(row) for row in m]
    n = len(a)
    sign = 1
    prev = TruncSeries.one(cap)
    for k in range(n - 1):
        p = next((i for i in range(k, n) if a[i][k].coeffs[0] != 0), None)
        if p is None:
            return None
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        inv_prev = series_inverse(prev)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) * inv_prev
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def matrix_series_det(m: MatrixSeries) -> TruncSeries:
    """Determinant in the truncated series ring."""
    if m.dim == 0:
        return TruncSeries.one(m.cap)
    if m.dim <= 4:
        return _det_laplace(m.entries, m.cap)
    d = _det_bareiss(m.entries, m.cap)
    return d if d is not None else _det_laplace(m.entries, m.cap)
