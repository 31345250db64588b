"""Command-line front end: ``trigl1 {en-chi, sweep, constants, verify}``.

Exit codes: 0 success, 1 verification failure, 2 bad arguments,
3 internal inconsistency, 4 I/O error.
"""

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .closed_forms import (ApproxResult, InconsistencyError, en_chi, favard_F, favard_F_sum,
                           sec_plus_tan_one, theoremC_limit, v0)
from .extremal_signs import lower_bound_via_duality
from .inequalities import is_half_lattice
from .l1_oracle import default_grid, oracle_result
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_ARGS, EXIT_INCONSISTENT, EXIT_IO = 0, 1, 2, 3, 4

REFERENCE = {
    "1-2v0": 0.3817350529,
    "sum F_j": 3.408223443,
    "F_1": 1.0, "F_2": 1 / 2, "F_3": 1 / 3, "F_4": 5 / 24, "F_5": 2 / 15,
}


class UsageError(ValueError):
    pass


def parse_h(text):
    """``p/q`` gives an exact Fraction, anything else a float."""
    try:
        if "/" in text:
            return Fraction(text)
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number or p/q rational: {text!r}") from None


def _fmt(x):
    return f"{x:.15g}"


def _certificate_text(cert):
    if cert is None:
        return "none"
    q, orientation = cert
    if q is None:
        return f"sign(cos 2 pi n t), orientation {orientation:+d}"
    return f"q = {q:.15g}, orientation {orientation:+d}"


def _en_chi_result(n, h, j, oracle, grid):
    if j == 1 and not oracle:
        return en_chi(n, h)
    if j > 1 and not oracle and is_half_lattice(n, h):
        return ApproxResult(favard_F(j), "closed_form")
    return oracle_result(n, float(h), j, grid)


def cmd_en_chi(args):
    if args.n < 2:
        raise UsageError("--n must be >= 2")
    if args.h <= 0:
        raise UsageError("--h must be positive")
    if args.j < 1:
        raise UsageError("--j must be >= 1")
    grid = args.grid or default_grid()
    res = _en_chi_result(args.n, args.h, args.j, args.oracle, grid)
    if args.json:
        print(json.dumps({"n": args.n, "h": str(args.h), "j": args.j, "value": res.value,
                          "method": res.method, "certificate": res.certificate,
                          "error_bound": res.error_bound}))
    else:
        print(f"value        {res.value:.15g}")
        print(f"method       {res.method}")
        print(f"certificate  {_certificate_text(res.certificate)}")
        print(f"error_bound  {res.error_bound:.3g}")
    return EXIT_OK


def sweep_grid(h_min, h_max, steps):
    h_min, h_max = Fraction(h_min), Fraction(h_max)
    return [h_min + (h_max - h_min) * i / (steps - 1) for i in range(steps)]


def sweep_row(n, h, method, grid):
    if method == "auto":
        res = en_chi(n, h)
        value, tag = res.value, res.method
    elif method == "dual":
        value, tag = lower_bound_via_duality(n, float(h)).value, "dual_max"
    else:
        value, tag = oracle_result(n, float(h), 1, grid).value, "lp_oracle"
    return float(h), value, float(h) * value, tag


def sweep_table(n, h_min, h_max, steps, method="auto", grid=None, workers=4):
    grid = grid or default_grid()
    hs = sweep_grid(h_min, h_max, steps)
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        return list(pool.map(lambda h: sweep_row(n, h, method, grid), hs))


def format_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["h", "E", "hE", "method"])
    for h, e, he, tag in rows:
        writer.writerow([_fmt(h), _fmt(e), _fmt(he), tag])
    return buf.getvalue()


def cmd_sweep(args):
    try:
        h_min = Fraction(args.h_min)
        h_max = Fraction(args.h_max)
    except (ValueError, ZeroDivisionError):
        raise UsageError("--h-min and --h-max must be numbers") from None
    if not 0 < h_min < h_max <= 1:
        raise UsageError("need 0 < h-min < h-max <= 1")
    if args.steps < 2:
        raise UsageError("--steps must be >= 2")
    if args.n < 2:
        raise UsageError("--n must be >= 2")
    grid = args.grid or default_grid()
    rows = sweep_table(args.n, h_min, h_max, args.steps, args.method, grid)
    text = format_csv(rows)
    if args.out:
        try:
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    if args.json:
        print(json.dumps({
            "n": args.n,
            "rows": [{"h": h, "E": e, "hE": he, "method": tag} for h, e, he, tag in rows],
            "metadata": {"grid": grid, "method": args.method, "lattice_tol": 1e-12,
                         "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z")},
        }))
    elif not args.out:
        sys.stdout.write(text)
    else:
        print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def constants_report():
    v = v0()
    lines = [("v0", v, None), ("1-2v0", theoremC_limit(), REFERENCE["1-2v0"])]
    for j in range(11):
        lines.append((f"F_{j}", favard_F(j), REFERENCE.get(f"F_{j}", 1.0 if j == 0 else None)))
    lines.append(("sum F_j", favard_F_sum(60), REFERENCE["sum F_j"]))
    lines.append(("sec(1)+tan(1)", sec_plus_tan_one(), REFERENCE["sum F_j"]))
    return lines


def cmd_constants(args):
    lines = constants_report()
    if args.json:
        print(json.dumps([{"name": k, "value": v, "reference": r} for k, v, r in lines]))
        return EXIT_OK
    for name, value, ref in lines:
        tail = "" if ref is None else f"   ref {ref:.10f}  diff {abs(value - ref):.1e}"
        print(f"{name:14s} {value:.15f}{tail}")
    return EXIT_OK


def cmd_verify(args):
    results = run_suite(args.suite, args.grid or default_grid(), args.seed)
    for r in results:
        print(r.line(), flush=True)
    failed = [r for r in results if not r.passed]
    if failed:
        print("\nfailures:")
        print(f"{'#':>3}  {'criterion':<52} detail")
        for r in failed:
            print(f"{r.number:>3}  {r.title:<52} {r.detail}")
        return EXIT_FAIL
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="trigl1", description="Best L1 approximation constants "
                                "of periodised box kernels.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("en-chi", help="E_n of a box power")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--h", type=parse_h, required=True, help="decimal or exact p/q")
    e.add_argument("--j", type=int, default=1, help="convolution power (default 1)")
    e.add_argument("--oracle", action="store_true", help="use the LP oracle")
    e.add_argument("--grid", type=int, help="oracle grid size (default $TRIGL1_GRID or 4096)")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_en_chi)

    s = sub.add_parser("sweep", help="table of E_n(chi~_h) over h")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--h-min", required=True)
    s.add_argument("--h-max", required=True)
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--out", help="CSV path (stdout if omitted)")
    s.add_argument("--method", choices=("auto", "dual", "oracle"), default="auto")
    s.add_argument("--grid", type=int)
    s.add_argument("--json", action="store_true", help="also print the table as JSON")
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("constants", help="v0, the F_j and their sum")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_constants)

    v = sub.add_parser("verify", help="run acceptance suites")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--grid", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"trigl1: error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except (InconsistencyError, ArithmeticError, RuntimeError) as exc:
        print(f"trigl1: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
