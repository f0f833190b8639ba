"""Affine Weyl group elements as exact affine isometries.

An element ``x -> M x + t`` is stored in coweight coordinates, where both
``M`` and ``t`` are integral (W preserves the coweight lattice and ``t``
lies in the coroot lattice). Ambient rational views are derived on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from . import _linalg as la
from .rootdata import RootDatum

DEFAULT_MAX_ELEMENTS = 3_000_000


class CapacityError(RuntimeError):
    """Enumeration would exceed the configured element budget."""


class DatumMismatch(ValueError):
    pass


def _ints(m) -> tuple:
    return tuple(tuple(int(x) for x in row) for row in m)


class AffineWeylElement:
    __slots__ = ("datum", "m", "t", "_len", "_hash", "_affine")

    def __init__(self, datum: RootDatum, m, t):
        self.datum = datum
        self.m = _ints(m)
        self.t = tuple(int(x) for x in t)
        self._len = None
        self._hash = None
        self._affine = None

    @classmethod
    def identity(cls, datum: RootDatum) -> "AffineWeylElement":
        r = datum.rank
        return cls(datum, [[int(i == j) for j in range(r)] for i in range(r)], [0] * r)

    # structure

    @property
    def canonical(self) -> tuple:
        return (self.m, self.t)

    def __eq__(self, other):
        if not isinstance(other, AffineWeylElement):
            return NotImplemented
        return self.datum.key == other.datum.key and self.m == other.m and self.t == other.t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.datum.key, self.m, self.t))
        return self._hash

    def __lt__(self, other):
        return (self.length, self.canonical) < (other.length, other.canonical)

    def __repr__(self):
        return f"AffineWeylElement({self.datum.name}, word={reduced_word(self)})"

    def is_identity(self) -> bool:
        return not any(self.t) and all(x == int(i == j) for i, row in enumerate(self.m) for j, x in enumerate(row))

    # group law

    def __mul__(self, other: "AffineWeylElement") -> "AffineWeylElement":
        return compose(self, other)

    def inverse(self) -> "AffineWeylElement":
        return invert(self)

    def __pow__(self, k: int) -> "AffineWeylElement":
        if k < 0:
            return invert(self) ** (-k)
        out = AffineWeylElement.identity(self.datum)
        base = self
        while k:
            if k & 1:
                out = compose(out, base)
            base = compose(base, base)
            k >>= 1
        return out

    @property
    def length(self) -> int:
        if self._len is None:
            self._len = length(self)
        return self._len

    # ambient views

    @property
    def linear(self) -> list:
        """Linear part as an ambient rational matrix."""
        d = self.datum
        n = d.ambient_dim
        omega = la.transpose([list(w) for w in d.fundamental_coweights])  # n x r
        bt = [list(a) for a in d.simple_roots]  # r x n
        proj = la.matmul(omega, bt)
        mq = [[Q(x) for x in row] for row in self.m]
        main = la.matmul(la.matmul(omega, mq), bt)
        eye = la.identity(n)
        return [[main[i][j] + eye[i][j] - proj[i][j] for j in range(n)] for i in range(n)]

    @property
    def translation(self) -> tuple:
        return self.datum.from_coweight_coords(self.t)

    def __call__(self, x) -> tuple:
        """Apply to an ambient rational point."""
        if self._affine is None:
            self._affine = (self.linear, self.translation)
        lin, tr = self._affine
        return la.add(la.matvec(lin, la.vec(x)), tr)

    def act_cw(self, y) -> tuple:
        """Apply in coweight coordinates."""
        return tuple(sum((a * b for a, b in zip(row, y)), Q(0)) + ti for row, ti in zip(self.m, self.t))


def _check_index(datum: RootDatum, i: int) -> None:
    if i not in datum.generators:
        lo = datum.generators[0]
        raise IndexError(f"generator index {i} out of range {lo}..{datum.rank} for {datum.name}")


def generator(datum: RootDatum, i: int) -> AffineWeylElement:
    """Simple reflection ``s_i``; ``s_0`` is the reflection in ``<highest root, x> = 1``."""
    _check_index(datum, i)
    m, t = datum.kernel_arrays()["gens"][i]
    return AffineWeylElement(datum, m, t)


def translation(datum: RootDatum, v) -> AffineWeylElement:
    """Pure translation ``t^v`` by a coroot-lattice vector (ambient coordinates)."""
    y = datum.to_coweight_coords(la.vec(v))
    if any(c.denominator != 1 for c in y):
        raise ValueError("translation vector is not in the coweight lattice")
    back = datum.from_coweight_coords(y)
    if la.sub(back, la.vec(v)) != tuple(Q(0) for _ in back):
        raise ValueError("translation vector is not in the span of the roots")
    r = datum.rank
    return AffineWeylElement(datum, [[int(i == j) for j in range(r)] for i in range(r)], [int(c) for c in y])


def compose(a: AffineWeylElement, b: AffineWeylElement) -> AffineWeylElement:
    """``x -> a(b(x))``."""
    if a.datum.key != b.datum.key:
        raise DatumMismatch(f"cannot compose elements of {a.datum.name} and {b.datum.name}")
    r = len(a.t)
    am, bm = a.m, b.m
    bcols = list(zip(*bm))
    m = [[sum(x * y for x, y in zip(am[i], bcols[j])) for j in range(r)] for i in range(r)]
    t = [sum(x * y for x, y in zip(am[i], b.t)) + a.t[i] for i in range(r)]
    return AffineWeylElement(a.datum, m, t)


def invert(a: AffineWeylElement) -> AffineWeylElement:
    # M is orthogonal for the coweight Gram matrix G, so M^{-1} = G^{-1} M^T G
    data = a.datum.kernel_arrays()
    g, ginv = data["cw_gram"], data["cw_gram_inv"]
    mt = [[Q(x) for x in row] for row in zip(*a.m)]
    minv = la.matmul(la.matmul(ginv, mt), g)
    if any(x.denominator != 1 for row in minv for x in row):
        raise AssertionError("inverse linear part is not integral")
    m = [[int(x) for x in row] for row in minv]
    t = [-sum(x * y for x, y in zip(row, a.t)) for row in m]
    return AffineWeylElement(a.datum, m, t)


def length(w: AffineWeylElement) -> int:
    """Count the walls separating the fundamental alcove from its image."""
    d = w.datum
    h = d.coxeter_number
    pt = [sum(row) + h * ti for row, ti in zip(w.m, w.t)]
    total = 0
    for c in d.positive_coeffs:
        v = sum(ci * pi for ci, pi in zip(c, pt))
        total += abs(v // h)
    return total


def word_to_element(datum: RootDatum, word: Iterable[int]) -> AffineWeylElement:
    """Left-to-right product ``s_{w[0]} s_{w[1]} ...``."""
    out = AffineWeylElement.identity(datum)
    for i in word:
        out = compose(out, generator(datum, int(i)))
    return out


def reduced_word(w: AffineWeylElement, strategy: str = "min") -> list[int]:
    """Reduced word by greedy left descent (smallest index first by default)."""
    d = w.datum
    gens = [generator(d, i) for i in d.generators]
    order = list(zip(d.generators, gens))
    if strategy == "max":
        order.reverse()
    elif strategy != "min":
        raise ValueError(f"unknown strategy {strategy!r}")
    word = []
    cur, ell = w, w.length
    while ell:
        for i, s in order:
            nxt = compose(s, cur)
            if nxt.length < ell:
                word.append(i)
                cur, ell = nxt, ell - 1
                break
        else:  # pragma: no cover - impossible for a Coxeter group
            raise AssertionError("no descent found for element of positive length")
    return word


def braid_order(datum: RootDatum, i: int, j: int, cap: int = 12) -> int | None:
    """Order of ``s_i s_j``; None when infinite (no power up to ``cap`` is trivial)."""
    p = compose(generator(datum, i), generator(datum, j))
    cur = p
    for k in range(1, cap + 1):
        if cur.is_identity():
            return k
        cur = compose(cur, p)
    return None


@dataclass
class Ball:
    """Elements of a standard parabolic subgroup up to a length cap.

    Rows are ordered by length, then lexicographically by canonical form.
    ``parent[k]`` is the row of ``w`` with ``row k = w * s_{pgen[k]}`` and
    ``len(w) = len(row k) - 1`` (-1 for the identity).
    """

    datum: RootDatum
    gens: tuple
    cap: int | None
    M: np.ndarray
    t: np.ndarray
    lengths: np.ndarray
    parent: np.ndarray
    pgen: np.ndarray
    complete: bool

    def __len__(self):
        return len(self.lengths)

    def element(self, k: int) -> AffineWeylElement:
        e = AffineWeylElement(self.datum, self.M[k], self.t[k])
        e._len = int(self.lengths[k])
        return e

    @property
    def elements(self) -> list[AffineWeylElement]:
        return [self.element(k) for k in range(len(self))]

    def __iter__(self):
        return (self.element(k) for k in range(len(self)))

    def histogram(self) -> list[int]:
        top = self.cap if self.cap is not None else (int(self.lengths.max()) if len(self) else 0)
        return np.bincount(self.lengths, minlength=top + 1).tolist()

    def index(self) -> dict:
        """Map canonical form -> row."""
        return {(_ints(self.M[k]), tuple(int(x) for x in self.t[k])): k for k in range(len(self))}


def ball(
    datum: RootDatum,
    gens: Iterable[int] | None = None,
    cap: int | None = None,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> Ball:
    """Breadth-first enumeration of ``W_I`` up to length ``cap``.

    With ``cap=None`` the enumeration runs until the group is exhausted,
    which only terminates for finite parabolics; the element budget guards
    against the infinite case.
    """
    if gens is None:
        gens = datum.generators
    gens = tuple(sorted(set(int(i) for i in gens)))
    for i in gens:
        _check_index(datum, i)
    if cap is not None and cap < 0:
        raise ValueError("cap must be >= 0")
    data = datum.kernel_arrays()
    pos, denom = data["pos"], data["denom"]
    r = datum.rank
    Ms = [np.eye(r, dtype=np.int64)[None]]
    ts = [np.zeros((1, r), dtype=np.int64)]
    lens = [np.zeros(1, dtype=np.int64)]
    parents = [np.full(1, -1, dtype=np.int64)]
    pgens = [np.full(1, -1, dtype=np.int64)]
    total, offset, ell = 1, 0, 0
    fM, ft = Ms[0], ts[0]
    complete = False
    while cap is None or ell < cap:
        if len(ft) == 0 or not gens:
            complete = True
            break
        candM, candt, candp, candg = [], [], [], []
        for g in gens:
            gm, gt = data["gens"][g]
            nm, nt = _kernels.right_multiply(fM, ft, gm, gt)
            keep = _kernels.lengths(nm, nt, pos, denom) == ell + 1
            candM.append(nm[keep])
            candt.append(nt[keep])
            candp.append(np.nonzero(keep)[0] + offset)
            candg.append(np.full(int(keep.sum()), g, dtype=np.int64))
        cM = np.concatenate(candM)
        ct = np.concatenate(candt)
        if len(ct) == 0:
            complete = True
            fM, ft = cM, ct
            break
        rows = np.concatenate([cM.reshape(len(cM), -1), ct], axis=1)
        _, first = np.unique(rows, axis=0, return_index=True)
        nxtM, nxtt = cM[first], ct[first]
        if total + len(first) > max_elements:
            raise CapacityError(
                f"ball({datum.name}, gens={list(gens)}, cap={cap}) exceeds {max_elements} elements at length {ell + 1}"
            )
        offset += len(ft)
        total += len(first)
        ell += 1
        Ms.append(nxtM)
        ts.append(nxtt)
        lens.append(np.full(len(first), ell, dtype=np.int64))
        parents.append(np.concatenate(candp)[first])
        pgens.append(np.concatenate(candg)[first])
        fM, ft = nxtM, nxtt
    else:
        # cap reached; the group may or may not continue
        complete = False
    return Ball(
        datum=datum,
        gens=gens,
        cap=cap,
        M=np.concatenate(Ms),
        t=np.concatenate(ts),
        lengths=np.concatenate(lens),
        parent=np.concatenate(parents),
        pgen=np.concatenate(pgens),
        complete=complete,
    )


def finite_parabolic(datum: RootDatum, gens: Sequence[int], max_elements: int = DEFAULT_MAX_ELEMENTS) -> Ball:
    """Exhaustive enumeration of a finite parabolic subgroup."""
    b = ball(datum, gens, None, max_elements=max_elements)
    if not b.complete:  # pragma: no cover
        raise CapacityError("parabolic enumeration did not terminate")
    return b
