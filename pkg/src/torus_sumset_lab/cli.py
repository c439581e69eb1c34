"""Command-line front end.

Exit codes: 0 success or verified, 1 counterexample or violated check,
2 invalid input, 3 sample budget exhausted without an admissible instance.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
import warnings
from fractions import Fraction

from . import circle, freiman, ksumfree, real_line, zp
from .literals import (
    LiteralWarning,
    SetLiteralError,
    format_circle_set,
    format_real_set,
    format_zp_set,
    parse_circle_set,
    parse_real_set,
    parse_zp_set,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

_RAT = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


def rational(text: str) -> Fraction:
    if not _RAT.match(text):
        raise argparse.ArgumentTypeError(f"expected a rational like 1/10000, got {text!r}")
    return Fraction(text.replace(" ", ""))


def _circle_str(S) -> str:
    return format_circle_set(S)


def _emit(payload, fmt: str, rows=None, header=None) -> None:
    if fmt == "csv" and rows is not None:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def _set_result(S) -> dict:
    return {"result": _circle_str(S), "measure": str(circle.measure(S))}


# --- handlers ---------------------------------------------------------------------


def cmd_sum(args):
    if args.real:
        A, B = parse_real_set(args.left), parse_real_set(args.right)
        S = real_line.sumset_R(A, B)
        _emit({"result": format_real_set(S), "measure": str(real_line.measure_R(S))}, args.format)
    else:
        S = circle.sumset(parse_circle_set(args.left), parse_circle_set(args.right))
        _emit(_set_result(S), args.format)
    return EXIT_OK


def cmd_dilate(args):
    _emit(_set_result(circle.dilate(parse_circle_set(args.set), args.n)), args.format)
    return EXIT_OK


def cmd_complement(args):
    _emit(_set_result(circle.complement(parse_circle_set(args.set))), args.format)
    return EXIT_OK


def cmd_diameter(args):
    S = parse_circle_set(args.set)
    rows = [(n, str(circle.n_diameter(S, n))) for n in range(1, args.n_max + 1)]
    payload = {"set": _circle_str(S), "diameters": [{"n": n, "D": d} for n, d in rows]}
    _emit(payload, args.format, rows, ("n", "D_n"))
    return EXIT_OK


def cmd_fourier(args):
    B = parse_zp_set(args.set)
    if args.s is not None:
        _emit({"p": B.p, "s": args.s, "magnitude": zp.fourier_mag(B, args.s)}, args.format)
        return EXIT_OK
    rep = zp.check_fourier_decay(B)
    rows = [(r.s, repr(r.magnitude), repr(r.bound), r.satisfied) for r in rep]
    payload = {
        "p": B.p,
        "m": rep.m,
        "all_satisfied": rep.all_satisfied,
        "reports": [
            {"s": s, "magnitude": float(m), "bound": float(b), "satisfied": ok}
            for s, m, b, ok in ((r.s, r.magnitude, r.bound, r.satisfied) for r in rep)
        ],
    }
    _emit(payload, args.format, rows, ("s", "magnitude", "bound", "satisfied"))
    return EXIT_OK if rep.all_satisfied else EXIT_FAIL


def cmd_discretize(args):
    B = zp.discretize(parse_circle_set(args.set), args.p)
    _emit({"result": format_zp_set(B), "size": len(B)}, args.format)
    return EXIT_OK


def _verify(args, scan):
    limits = freiman.exhaustive_limits(args.exhaustive_limit)
    name = {"verify-sz": "sz", "verify-pair": "pair", "verify-trio": "trio"}[args.command]
    budget = None if args.budget in (None, "exhaustive") else int(args.budget)
    cert = scan(args.p, budget=budget, seed=args.seed, jobs=args.jobs, limit=limits[name])
    sys.stdout.write(cert.to_json(timing=not args.no_timing) + "\n")
    if cert.kind == "counterexample":
        return EXIT_FAIL
    if cert.kind == "budget-exhausted":
        return EXIT_BUDGET
    return EXIT_OK


def _witness_out(w):
    return None if w is None else [str(x) for x in w]


def cmd_ksf_check(args):
    if re.match(r"^\s*\d+\s*:", args.set):
        rep = ksumfree.is_k_sum_free_zp(parse_zp_set(args.set), args.k)
    else:
        rep = ksumfree.is_k_sum_free_T(parse_circle_set(args.set), args.k)
    _emit({"k": rep.k, "is_ksf": rep.is_ksf, "witness": _witness_out(rep.witness)}, args.format)
    return EXIT_OK


def cmd_ksf_max(args):
    res = ksumfree.max_ksf_zp(args.p, args.k, limit=args.limit)
    _emit(res.to_dict(), args.format)
    return EXIT_OK


def cmd_ksf_bound(args):
    I = ksumfree.extremal_interval(args.k)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        upper = ksumfree.dk_upper_bound(args.k, args.eps)
    payload = {
        "k": args.k,
        "eps": str(args.eps),
        "upper_bound": str(upper),
        "interval_lower_bound": str(I.length),
        "extremal_interval": _circle_str(circle.simple_set(I)),
        "eps_in_window": not caught,
    }
    if args.set is not None:
        case = ksumfree.structure_or_bound(parse_circle_set(args.set), args.k, args.eps)
        if isinstance(case, ksumfree.BoundCase):
            payload["case"] = {"kind": "bound", "measure": str(case.measure)}
        else:
            payload["case"] = {
                "kind": "structure",
                "n": case.n,
                "interval": _circle_str(circle.simple_set(case.interval)),
                "defect": str(case.defect),
                "defect_within": case.defect_within,
            }
    _emit(payload, args.format)
    return EXIT_OK


def cmd_doubling(args):
    S = parse_real_set(args.set)
    st = real_line.doubling_structure(S, args.eps)
    dec = st.decomposition
    payload = {
        "n": st.n,
        "interval": _circle_str(circle.simple_set(st.interval)),
        "interval_measure": str(st.interval.length),
        "pieces": [format_real_set(P) for P in dec.pieces],
        "alphas": [str(a) for a in dec.alphas],
        "d0": str(dec.d0),
        "dn": str(dec.dn),
    }
    _emit(payload, args.format)
    return EXIT_OK


def cmd_egm(args):
    S = parse_real_set(args.set)
    res = real_line.egm_interval(S, args.delta, args.eps)
    payload = {
        "interval": format_real_set(real_line.real_set(res.interval)),
        "length": str(res.interval.length),
        "density": str(res.density),
        "length_floor": str(res.length_floor),
        "density_floor": str(res.density_floor),
        "branch": res.branch,
    }
    _emit(payload, args.format)
    return EXIT_OK


# --- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")

    scan = argparse.ArgumentParser(add_help=False)
    scan.add_argument("--p", type=int, required=True)
    scan.add_argument("--budget", default=None, help="sample count, or 'exhaustive' (default)")
    scan.add_argument("--seed", type=int, default=0)
    scan.add_argument("--jobs", type=int, default=1)
    scan.add_argument("--exhaustive-limit", default=None, help="N or sz/pair/trio, e.g. 23/11/7")
    scan.add_argument("--no-timing", action="store_true", help="omit wall_ms for byte-stable output")

    ap = argparse.ArgumentParser(prog="torus-sumset-lab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sum", parents=[common], help="Minkowski sum of two sets")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--real", action="store_true", help="treat both sets as real-line sets")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("dilate", parents=[common], help="image under x -> n x")
    p.add_argument("set")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_dilate)

    p = sub.add_parser("diameter", parents=[common], help="D_n for n = 1..n-max")
    p.add_argument("set")
    p.add_argument("--n-max", type=int, default=10)
    p.set_defaults(func=cmd_diameter)

    p = sub.add_parser("complement", parents=[common])
    p.add_argument("set")
    p.set_defaults(func=cmd_complement)

    p = sub.add_parser("fourier", parents=[common], help="Fourier magnitudes of a Z_p set")
    p.add_argument("set", help="p:{j1,...} or p:0x<hex>")
    p.add_argument("--s", type=int, default=None)
    p.set_defaults(func=cmd_fourier)

    p = sub.add_parser("discretize", parents=[common], help="restrict a circle set to (1/p)Z_p")
    p.add_argument("set")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_discretize)

    for name, fn in (
        ("verify-sz", freiman.verify_conjecture_sz),
        ("verify-pair", freiman.verify_conjecture_pair),
        ("verify-trio", freiman.verify_conjecture_trio),
    ):
        p = sub.add_parser(name, parents=[common, scan])
        p.set_defaults(func=lambda a, fn=fn: _verify(a, fn))

    p = sub.add_parser("ksf-check", parents=[common], help="test x + y = k z avoidance")
    p.add_argument("set", help="circle literal or p:{...}")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_ksf_check)

    p = sub.add_parser("ksf-max", parents=[common], help="largest k-sum-free subset of Z_p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--limit", type=int, default=31)
    p.set_defaults(func=cmd_ksf_max)

    p = sub.add_parser("ksf-bound", parents=[common], help="density bounds for k-sum-free sets of T")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--eps", type=rational, default=Fraction(1, 10**4))
    p.add_argument("--set", default=None, help="optional k-sum-free circle set to classify")
    p.set_defaults(func=cmd_ksf_bound)

    p = sub.add_parser("doubling", parents=[common], help="structure of a real set of doubling < 4")
    p.add_argument("set")
    p.add_argument("--eps", type=rational, default=Fraction(1, 10**4))
    p.set_defaults(func=cmd_doubling)

    p = sub.add_parser("egm", parents=[common], help="dense interval of a real set")
    p.add_argument("set")
    p.add_argument("--delta", type=rational, required=True)
    p.add_argument("--eps", type=rational, default=Fraction(1, 10**4))
    p.set_defaults(func=cmd_egm)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default", LiteralWarning)
            return args.func(args)
    except (SetLiteralError, freiman.ExhaustiveLimitError, ksumfree.SearchLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (real_line.NoWitnessError, ksumfree.NoStructureError, AssertionError) as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
