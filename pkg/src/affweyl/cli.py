"""Command-line front end: ``affweyl <subcommand> ...``.

Exit status: 0 when every assertion holds, 1 on a mathematical failure,
2 on usage or capacity errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction as Q

from . import _linalg as la
from .checks import run_all
from .errors import VerificationError
from .factorizations import build_T, datum_for, factor_index, verify_factorization
from .group import DEFAULT_MAX_ELEMENTS, CapacityError, ball, reduced_word, word_to_element
from .hecke import BUILTIN, RelationError, RepError, load_rep, verify_conjecture_b
from .index_calculus import alternating_index, closed_form_index, signed_sum_index
from .rootdata import RootDataError, build_root_datum, to_json
from .series import alternating_product, product_of_geometric
from .tubes import EllipticError, TubeDegreeError, avoids_walls, drift, is_straight, min_set, stabilizes_tube, tube_degrees

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _rational(text: str) -> Q:
    try:
        return Q(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational like 3/2, got {text!r}") from None


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _assertion(name, ok, detail="") -> dict:
    return {"name": name, "pass": bool(ok), "detail": detail}


# subcommands: each returns (result, assertions, table rows for csv)


def cmd_rootdata(args):
    d = build_root_datum(args.family, args.rank, not args.finite)
    res = to_json(d)
    delta = all(
        la.dot(a, w) == int(i == j) for i, a in enumerate(d.simple_roots) for j, w in enumerate(d.fundamental_coweights)
    )
    rows = [{"i": i + 1, "simple_root": " ".join(map(la.fmt, a)), "coweight": " ".join(map(la.fmt, w))}
            for i, (a, w) in enumerate(zip(d.simple_roots, d.fundamental_coweights))]
    return res, [_assertion("dual_basis", delta, "<alpha_i, omega_j> = delta_ij")], rows


def cmd_ball(args):
    d = build_root_datum(args.family, args.rank, True)
    b = ball(d, args.gens, args.max_len, max_elements=args.max_elements)
    hist = b.histogram()
    res = {"size": len(b), "complete": b.complete, "count_by_length": hist}
    rows = [{"length": k, "count": c} for k, c in enumerate(hist)]
    if not args.count_by_length:
        res["elements"] = [{"length": e.length, "word": reduced_word(e)} for e in b]
        rows = [{"length": e["length"], "word": " ".join(map(str, e["word"]))} for e in res["elements"]]
    return res, [_assertion("enumerated", True, f"{len(b)} elements")], rows


def cmd_eq1(args):
    d = build_root_datum(args.family, args.rank, True)
    degs = tube_degrees(d)
    lhs = alternating_product(d, args.cap)
    rhs = product_of_geometric(degs, args.cap)
    k = lhs.first_difference(rhs)
    res = {"degrees": degs, "alternating_product": lhs.to_json(), "product_form": rhs.to_json()}
    rows = [{"degree": i, "lhs": la.fmt(a), "rhs": la.fmt(b)} for i, (a, b) in enumerate(zip(lhs, rhs))]
    detail = "equal" if k is None else f"first difference at u^{k}"
    return res, [_assertion("eq1", k is None, detail)], rows


def cmd_tube_check(args):
    if args.op == "T":
        if args.i is None:
            raise UsageError("--op T needs --i")
        n = args.rank + 1
        w = build_T(args.family, n, args.i).generator
    else:
        d = build_root_datum(args.family, args.rank, True)
        w = word_to_element(d, args.word or [])
    dd = drift(w)
    ms = min_set(w)
    st = is_straight(w, args.k_max)
    res = {
        "word": reduced_word(w),
        "length": w.length,
        "drift": {
            "order": dd.order_m,
            "v_w": [la.fmt(x) for x in dd.v_w],
            "v_coweight": [la.fmt(x) for x in dd.v_cw],
            "c_w": None if dd.c_w is None else la.fmt(dd.c_w),
            "direction": dd.direction,
        },
        "min_set_dim": ms.dim,
        "min_set_avoids_walls": avoids_walls(ms, w.datum),
        "straight": {"powers": st.powers_ok, "formula_value": la.fmt(st.formula_value), "formula": st.formula_ok},
    }
    asserts = [_assertion("straight_powers", st.powers_ok, f"k <= {args.k_max}"),
               _assertion("straight_formula", st.formula_ok, f"<2rho, v~> = {st.formula_value}")]
    if args.i is not None:
        if dd.elliptic:
            res["stabilizes_tube"] = None
            asserts.append(_assertion("stabilizes_tube", False, "elliptic element"))
        else:
            ok = stabilizes_tube(w, args.i)
            res["stabilizes_tube"] = ok
            asserts.append(_assertion("stabilizes_tube", ok, f"direction omega_{args.i}"))
    rows = [{"key": k, "value": json.dumps(v)} for k, v in res.items()]
    return res, asserts, rows


def cmd_iota(args):
    d = build_root_datum(args.family, args.rank, True)
    closed = closed_form_index(d)
    try:
        alt = alternating_index(d)
        ok = True
    except VerificationError:
        alt, ok = signed_sum_index(d), False
    res = {"alternating_index": alt.to_json(), "closed_form": closed.to_json()}
    asserts = [_assertion("closed_form", ok)]
    if args.family in ("A", "C") and args.rank + 1 >= (2 if args.family == "A" else 3):
        try:
            fi = factor_index(args.family, args.rank + 1)
            res["factor_index"] = fi.to_json()
            asserts.append(_assertion("factor_index", True))
        except VerificationError as exc:
            asserts.append(_assertion("factor_index", False, str(exc)))
    rows = [{"subset": " ".join(map(str, e["subset"])), "value": e["value"]} for e in res["alternating_index"]]
    return res, asserts, rows


def cmd_verify_factorization(args):
    rep = verify_factorization(args.family, args.n, args.max_len)
    res = rep.to_json()
    rows = [{"order": ".".join(rep.order), "tuples": rep.tuples, "image": rep.image_size, "ball": rep.ball_size}]
    return res, rep.assertions(), rows


def cmd_verify_b(args):
    d = datum_for(args.family, args.n)
    if args.rep in BUILTIN:
        rep = BUILTIN[args.rep](d, args.q)
    else:
        rep = load_rep(d, args.rep)
    r = verify_conjecture_b(args.family, args.n, rep, args.cap)
    res = r.to_json()
    rows = [{"degree": k, "full": la.fmt(a), "factored": la.fmt(b), "alternating": la.fmt(c)}
            for k, (a, b, c) in enumerate(zip(r.full, r.factored, r.alternating))]
    return res, r.assertions(), rows


def cmd_verify_all(args):
    checks = run_all(args.seed)
    asserts = [c.to_json() for c in checks]
    res = {"criteria": sorted({c.criterion for c in checks}), "checks": len(checks), "failed": sum(not c.passed for c in checks)}
    rows = [{"criterion": c.criterion, "name": c.name, "pass": c.passed, "detail": c.detail} for c in checks]
    return res, asserts, rows


COMMANDS = {
    "rootdata": cmd_rootdata,
    "ball": cmd_ball,
    "eq1": cmd_eq1,
    "tube-check": cmd_tube_check,
    "iota": cmd_iota,
    "verify-factorization": cmd_verify_factorization,
    "verify-b": cmd_verify_b,
    "verify-all": cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "csv", "text"), default="text")
    common.add_argument("--json", dest="output", action="store_const", const="json", help="shorthand for --output json")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="affweyl", description="Exact computations in affine Weyl groups.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def family(sp, rank=True):
        sp.add_argument("--family", required=True, type=str.upper, choices=list("ABCDEFG"))
        if rank:
            sp.add_argument("--rank", required=True, type=int)

    sp = sub.add_parser("rootdata", parents=[common], help="root datum of one type")
    family(sp)
    sp.add_argument("--finite", action="store_true", help="finite rather than affine datum")

    sp = sub.add_parser("ball", parents=[common], help="enumerate elements up to a length")
    family(sp)
    sp.add_argument("--gens", type=_int_list, default=None)
    sp.add_argument("--max-len", type=_nonneg, required=True)
    sp.add_argument("--count-by-length", action="store_true")
    sp.add_argument("--max-elements", type=int, default=DEFAULT_MAX_ELEMENTS)

    sp = sub.add_parser("eq1", parents=[common], help="alternating product vs product of 1/(1-u^d)")
    family(sp)
    sp.add_argument("--cap", type=_nonneg, default=24)

    sp = sub.add_parser("tube-check", parents=[common], help="drift, Min set and straightness of an element")
    family(sp)
    sp.add_argument("--op", choices=("T", "word"), default="T")
    sp.add_argument("--i", type=int)
    sp.add_argument("--word", type=_int_list)
    sp.add_argument("--k-max", type=int, default=5)

    sp = sub.add_parser("iota", parents=[common], help="alternating index vector")
    family(sp)

    sp = sub.add_parser("verify-factorization", parents=[common], help="check the length-additive factorization")
    sp.add_argument("--family", required=True, type=str.upper, choices=["A", "C"])
    sp.add_argument("--n", required=True, type=int)
    sp.add_argument("--max-len", type=_nonneg, default=12)

    sp = sub.add_parser("verify-b", parents=[common], help="twisted determinant identity for a Hecke rep")
    sp.add_argument("--family", required=True, type=str.upper, choices=["A", "C"])
    sp.add_argument("--n", required=True, type=int)
    sp.add_argument("--rep", required=True, help="path to a rep file, or 'trivial' / 'sign'")
    sp.add_argument("--q", type=_rational, default=Q(2), help="q for the built-in reps")
    sp.add_argument("--cap", type=_nonneg, default=16)

    sub.add_parser("verify-all", parents=[common], help="run the full acceptance battery")
    return p


def _config(args) -> dict:
    out = {}
    for k, v in sorted(vars(args).items()):
        if isinstance(v, Q):
            v = la.fmt(v)
        out[k] = v
    return out


def _emit(args, result, assertions, rows, out) -> None:
    if args.output == "json":
        env = {"command": args.command, "config": _config(args), "result": result, "assertions": assertions}
        out.write(json.dumps(env, indent=2) + "\n")
    elif args.output == "csv":
        rows = rows or [{}]
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        out.write(buf.getvalue())
    else:
        for r in rows:
            out.write("  ".join(f"{k}={v}" for k, v in r.items()) + "\n")
        for a in assertions:
            mark = "PASS" if a["pass"] else "FAIL"
            out.write(f"[{mark}] {a['name']}" + (f": {a['detail']}" if a["detail"] else "") + "\n")


def _error(args, kind: str, message: str, payload: dict | None, code: int, out) -> int:
    if getattr(args, "output", "text") == "json":
        env = {
            "command": args.command,
            "config": _config(args),
            "result": None,
            "assertions": [_assertion(kind, False, message)],
            "error": {"kind": kind, "message": message, "counterexample": payload or {}},
        }
        out.write(json.dumps(env, indent=2) + "\n")
    else:
        sys.stderr.write(f"affweyl {args.command}: {kind}: {message}\n")
        if payload:
            sys.stderr.write(json.dumps(payload) + "\n")
    return code


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result, assertions, rows = COMMANDS[args.command](args)
    except RelationError as exc:
        return _error(args, "relation_failure", str(exc), exc.to_json(), EXIT_FAIL, out)
    except (VerificationError, TubeDegreeError) as exc:
        return _error(args, "verification_failure", str(exc), getattr(exc, "payload", None), EXIT_FAIL, out)
    except CapacityError as exc:
        return _error(args, "capacity", str(exc), None, EXIT_USAGE, out)
    except (UsageError, RepError, RootDataError, EllipticError, ValueError, IndexError) as exc:
        return _error(args, "usage", str(exc), None, EXIT_USAGE, out)
    _emit(args, result, assertions, rows, out)
    return EXIT_OK if all(a["pass"] for a in assertions) else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
