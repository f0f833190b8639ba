"""Index vectors of parabolic subgroups and their alternating sums."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from .errors import VerificationError
from .group import braid_order
from .rootdata import RootDatum


class IndexVector:
    """Sparse integer vector indexed by connected generator subsets."""

    __slots__ = ("datum", "values")

    def __init__(self, datum: RootDatum, values: Mapping[frozenset, int] | None = None):
        self.datum = datum
        self.values = {frozenset(k): int(v) for k, v in (values or {}).items() if v}

    def __add__(self, other: "IndexVector") -> "IndexVector":
        out = dict(self.values)
        for k, v in other.values.items():
            out[k] = out.get(k, 0) + v
        return IndexVector(self.datum, out)

    def __neg__(self) -> "IndexVector":
        return IndexVector(self.datum, {k: -v for k, v in self.values.items()})

    def __sub__(self, other: "IndexVector") -> "IndexVector":
        return self + (-other)

    def __rmul__(self, c: int) -> "IndexVector":
        return IndexVector(self.datum, {k: c * v for k, v in self.values.items()})

    def __eq__(self, other):
        if not isinstance(other, IndexVector):
            return NotImplemented
        return self.values == other.values

    def __getitem__(self, key: Iterable[int]) -> int:
        return self.values.get(frozenset(key), 0)

    def items(self):
        return sorted(self.values.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))

    def to_json(self) -> list[dict]:
        return [{"subset": sorted(k), "value": v} for k, v in self.items()]

    def __repr__(self):
        body = ", ".join(f"{sorted(k)}: {v}" for k, v in self.items())
        return f"IndexVector({{{body}}})"


@lru_cache(maxsize=None)
def coxeter_edges(datum: RootDatum) -> frozenset:
    """Pairs {s, t} with m(s, t) >= 3 (infinite included)."""
    gens = datum.generators
    out = set()
    for a, b in combinations(gens, 2):
        m = braid_order(datum, a, b)
        if m is None or m >= 3:
            out.add(frozenset((a, b)))
    return frozenset(out)


def components(datum: RootDatum, subset: Iterable[int]) -> list[frozenset]:
    edges = coxeter_edges(datum)
    todo = set(subset)
    out = []
    while todo:
        stack = [todo.pop()]
        comp = set(stack)
        while stack:
            v = stack.pop()
            for w in list(todo):
                if frozenset((v, w)) in edges:
                    todo.discard(w)
                    comp.add(w)
                    stack.append(w)
        out.append(frozenset(comp))
    return sorted(out, key=sorted)


def is_connected(datum: RootDatum, subset: Iterable[int]) -> bool:
    return len(components(datum, subset)) == 1


def neighborhood(datum: RootDatum, subset: Iterable[int]) -> frozenset:
    subset = set(subset)
    edges = coxeter_edges(datum)
    out = set(subset)
    for e in edges:
        if e & subset:
            out |= e
    return frozenset(out)


def iota_parabolic(datum: RootDatum, subset: Iterable[int]) -> IndexVector:
    subset = set(subset)
    bad = subset - set(datum.generators)
    if bad:
        raise IndexError(f"generators {sorted(bad)} not in {datum.name}")
    return IndexVector(datum, {c: 1 for c in components(datum, subset)})


def closed_form_index(datum: RootDatum) -> IndexVector:
    """0 unless N(J) = S, in which case (-1)^(|S|+|J|+1), over connected proper J."""
    S = frozenset(datum.generators)
    vals = {}
    for k in range(1, len(S)):
        for J in combinations(sorted(S), k):
            if is_connected(datum, J) and neighborhood(datum, J) == S:
                vals[frozenset(J)] = (-1) ** (len(S) + k + 1)
    return IndexVector(datum, vals)


def signed_sum_index(datum: RootDatum) -> IndexVector:
    S = datum.generators
    out = IndexVector(datum)
    for k in range(len(S)):
        sign = (-1) ** (len(S) + k + 1)
        for sub in combinations(S, k):
            out = out + sign * iota_parabolic(datum, sub)
    return out


def alternating_index(datum: RootDatum) -> IndexVector:
    """Signed sum of iota over proper parabolics, checked against the closed form."""
    if not datum.affine:
        raise ValueError("alternating_index needs an affine root datum")
    direct = signed_sum_index(datum)
    closed = closed_form_index(datum)
    if direct != closed:
        raise VerificationError(
            f"alternating index of {datum.name} disagrees with the neighbourhood formula",
            {"signed_sum": direct.to_json(), "closed_form": closed.to_json()},
        )
    return direct
