"""The acceptance battery behind ``affweyl verify-all``.

Each check returns a list of ``Check`` rows; nothing here raises on a
mathematical failure, the row just records it.
"""

from __future__ import annotations

import random
import time
from collections import deque
from dataclasses import dataclass
from fractions import Fraction as Q

from .errors import VerificationError
from .factorizations import build_T, datum_for, factor_index, verify_factorization
from .group import AffineWeylElement, CapacityError, ball, compose, generator, invert, word_to_element
from .hecke import (
    RelationError,
    a1_two_dim_rep,
    evaluate_basis,
    load_rep,
    reflection_rep,
    sign_rep,
    trivial_rep,
    verify_conjecture_b,
)
from .index_calculus import alternating_index, closed_form_index
from .rootdata import build_root_datum, coweight_ratio
from .series import (
    MatrixSeries,
    NonUnitError,
    TruncSeries,
    alternating_product,
    matrix_series_det,
    product_of_geometric,
    series_inverse,
)
from .tubes import drift, stabilizes_tube, tube_degrees


@dataclass
class Check:
    criterion: int
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"name": f"{self.criterion}:{self.name}", "pass": self.passed, "detail": self.detail}


def _timed(criterion, name, fn, limit=None) -> Check:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except (VerificationError, CapacityError, ValueError) as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    if limit is not None and dt > limit:
        ok, detail = False, f"{detail}; took {dt:.1f}s > {limit}s"
    return Check(criterion, name, ok, detail, dt)


def eq1_type_a(cap: int = 24) -> list[Check]:
    out = []
    for n in range(2, 6):
        d = build_root_datum("A", n - 1)

        def run(d=d, n=n):
            lhs = alternating_product(d, cap)
            rhs = product_of_geometric([n] * (n - 1), cap)
            k = lhs.first_difference(rhs)
            return k is None, "equal" if k is None else f"differs at u^{k}"

        out.append(_timed(1, f"A{n - 1}~ cap {cap}", run, limit=60))
    return out


def eq1_type_c(cap: int = 24) -> list[Check]:
    out = []
    for n in range(3, 6):
        d = build_root_datum("C", n - 1)

        def run(d=d, n=n):
            lhs = alternating_product(d, cap)
            rhs = product_of_geometric([2 * n - i - 1 for i in range(1, n)], cap)
            k = lhs.first_difference(rhs)
            return k is None, "equal" if k is None else f"differs at u^{k}"

        out.append(_timed(2, f"C{n - 1}~ cap {cap}", run))
    return out


COHERENCE_TYPES = [("A", r) for r in range(1, 5)] + [("B", r) for r in range(2, 5)]
COHERENCE_TYPES += [("C", r) for r in range(2, 5)] + [("D", r) for r in range(3, 5)] + [("G", 2)]


def formula_coherence(cap: int = 24) -> list[Check]:
    out = []
    for fam, r in COHERENCE_TYPES:
        d = build_root_datum(fam, r)

        def run(d=d):
            degs = tube_degrees(d)
            k = alternating_product(d, cap).first_difference(product_of_geometric(degs, cap))
            return k is None, f"degrees {degs}" + ("" if k is None else f"; differs at u^{k}")

        out.append(_timed(3, f"{d.name} cap {cap}", run))
    return out


def bfs_distances(d, radius: int) -> dict:
    """Word-metric distances by a plain breadth-first search on the Cayley graph."""
    start = AffineWeylElement.identity(d)
    gens = [generator(d, i) for i in d.generators]
    dist = {start: 0}
    todo = deque([start])
    while todo:
        w = todo.popleft()
        if dist[w] == radius:
            continue
        for s in gens:
            v = compose(w, s)
            if v not in dist:
                dist[v] = dist[w] + 1
                todo.append(v)
    return dist


def length_oracle(radius: int = 10) -> list[Check]:
    out = []
    for fam, r in (("A", 2), ("C", 2), ("G", 2)):
        d = build_root_datum(fam, r)

        def run(d=d):
            dist = bfs_distances(d, radius)
            bad = sum(1 for w, k in dist.items() if w.length != k)
            return bad == 0, f"{len(dist)} elements, {bad} discrepancies"

        out.append(_timed(4, f"{d.name} radius {radius}", run))
    return out


def straightness() -> list[Check]:
    out = []
    for fam, ns in (("A", range(2, 6)), ("C", range(3, 6))):
        for n in ns:
            for i in range(1, n):

                def run(fam=fam, n=n, i=i):
                    t = build_T(fam, n, i).generator
                    expect = n if fam == "A" else 2 * n - i - 1
                    powers = all((t**k).length == k * t.length for k in range(1, 6))
                    c = drift(t).c_w
                    ratio = coweight_ratio(t.datum, i)
                    ok = powers and t.length == expect and stabilizes_tube(t, i) and c == ratio
                    return ok, f"len {t.length} (expect {expect}), c_w {c} vs {ratio}"

                out.append(_timed(5, f"{fam} n={n} T{i}", run))
    return out


FACTORIZATION_CASES = [("A", 3, 12), ("A", 4, 12), ("A", 5, 10), ("C", 3, 12), ("C", 4, 12)]


def factorizations() -> list[Check]:
    out = []
    t0 = time.perf_counter()
    for fam, n, cap in FACTORIZATION_CASES:

        def run(fam=fam, n=n, cap=cap):
            r = verify_factorization(fam, n, cap)
            ok = r.additive and r.injective and r.surjective
            return ok, f"{r.tuples} tuples onto {r.ball_size} elements, order {'.'.join(r.order)}"

        out.append(_timed(6, f"{fam} n={n} N={cap}", run))
    total = time.perf_counter() - t0
    ok = total < 300
    out.append(Check(6, "total runtime", ok, "under 300 s" if ok else f"{total:.0f} s", total))
    return out


def index_calculus() -> list[Check]:
    out = []
    for fam, ns in (("A", range(2, 6)), ("C", range(3, 6))):
        for n in ns:

            def run(fam=fam, n=n):
                d = datum_for(fam, n)
                alt = alternating_index(d)
                ok = alt == closed_form_index(d) and alt == factor_index(fam, n)
                return ok, repr(alt)

            out.append(_timed(7, f"{fam} n={n}", run))
    return out


def conjecture_b(cap: int = 16) -> list[Check]:
    out = []
    cases = [("A", n) for n in (3, 4, 5)] + [("C", n) for n in (3, 4)]
    for fam, n in cases:
        d = datum_for(fam, n)
        for mk in (trivial_rep, sign_rep):
            for q in (Q(2), Q(3), Q(1, 2)):

                def run(fam=fam, n=n, mk=mk, q=q, d=d):
                    r = verify_conjecture_b(fam, n, mk(d, q), cap)
                    return r.passed, "equal" if r.passed else str(r.first_difference)

                out.append(_timed(8, f"{fam} n={n} {mk(d, q).name} q={q}", run))
    for q in (Q(2), Q(1, 2)):

        def run(q=q):
            r = verify_conjecture_b("A", 2, a1_two_dim_rep(q), cap)
            return r.passed, "equal" if r.passed else str(r.first_difference)

        out.append(_timed(8, f"A n=2 two-dim q={q}", run))
    return out


def braid_violating_doc() -> dict:
    """A rank-2 affine type A document whose generators break a braid relation."""
    return {
        "family": "A",
        "rank": 2,
        "affine": True,
        "q": "2/1",
        "dim": 1,
        "generators": [[["2/1"]], [["-1/1"]], [["-1/1"]]],
    }


def negatives() -> list[Check]:
    def braid():
        try:
            load_rep(None, braid_violating_doc())
        except RelationError as exc:
            return exc.pair == (0, 1), f"rejected: {exc} (pair {exc.pair})"
        return False, "accepted"

    def nonunit():
        try:
            series_inverse(TruncSeries([0, 1], 8))
        except NonUnitError as exc:
            return True, str(exc)
        return False, "inverted a non-unit"

    def capacity():
        try:
            ball(build_root_datum("A", 2), None, 40, max_elements=500)
        except CapacityError as exc:
            return True, str(exc)
        return False, "no capacity error"

    return [_timed(9, "braid violation", braid), _timed(9, "non-unit inverse", nonunit), _timed(9, "ball capacity", capacity)]


def _random_element(d, rng, max_len):
    word = [rng.choice(d.generators) for _ in range(rng.randint(0, max_len))]
    return word_to_element(d, word)


def properties(seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    out = []

    def matsumoto():
        bad = total = 0
        for fam, r in (("A", 1), ("A", 2), ("A", 3), ("C", 2), ("C", 3), ("G", 2)):
            rep = reflection_rep(build_root_datum(fam, r), 2)
            for _ in range(200):
                w = _random_element(rep.datum, rng, 8)
                total += 1
                bad += evaluate_basis(rep, w, "min") != evaluate_basis(rep, w, "max")
        return bad == 0, f"{total} elements, {bad} mismatches"

    def det_mult():
        bad = 0
        for _ in range(20):
            a, b = _random_matrix_series(rng, 3, 8), _random_matrix_series(rng, 3, 8)
            bad += matrix_series_det(a * b) != matrix_series_det(a) * matrix_series_det(b)
        return bad == 0, f"20 pairs, {bad} failures"

    def inverse_length():
        bad = 0
        for fam, r in (("A", 2), ("C", 2), ("G", 2), ("B", 3), ("D", 4)):
            d = build_root_datum(fam, r)
            for _ in range(100):
                w = _random_element(d, rng, 12)
                bad += w.length != invert(w).length
        return bad == 0, f"500 words, {bad} failures"

    out.append(_timed(10, "Matsumoto invariance", matsumoto))
    out.append(_timed(10, "det multiplicativity", det_mult))
    out.append(_timed(10, "length of inverse", inverse_length))
    return out


def _random_matrix_series(rng, dim, cap) -> MatrixSeries:
    return MatrixSeries(
        [[TruncSeries([Q(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(cap + 1)], cap) for _ in range(dim)] for _ in range(dim)]
    )


SUITE = [
    eq1_type_a,
    eq1_type_c,
    formula_coherence,
    length_oracle,
    straightness,
    factorizations,
    index_calculus,
    conjecture_b,
    negatives,
    properties,
]


def run_all(seed: int = 0) -> list[Check]:
    out = []
    for fn in SUITE:
        out += fn(seed) if fn is properties else fn()
    return out
