"""Command-line interface.

Four subcommands cover the library surface:

* ``table``  - recompute a built-in reference table and compare per cell;
* ``zeros``  - certified zeros of one family polynomial;
* ``bounds`` - closed-form inner bounds, optionally verified against the
  computed zeros (direction contracts + completed interlacing);
* ``verify`` - identity/contract checks (beardon, christoffel, mixedrec,
  interlacing) with residual statistics.

Output is CSV (default) or JSON; numbers are printed in scientific
notation with 17 significant digits so that parse / re-emit round trips
are byte-identical.  Exit codes: 0 success, 1 usage or parameter error,
2 verification or table mismatch.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import gmpy2

from .bigfloat import context, default_precision, sci_str
from .bounds import bounds_for, completed_interlacing, verify_bound_report
from .christoffel import CSpec, build_mixed_recurrence, christoffel_eval, mixed_recurrence_residual
from .errors import OrthoBoundsError, ParameterDomainError
from .families import Family, FamilySpec, family_spec, recurrence_table, shifted_spec
from .recurrence import beardon_residual_scaled, eval_monic
from .tables import run_table
from .zeros import family_zeros

_FAMILY_TOKENS = {fam.value: fam for fam in Family}
_SAMPLE_MULTIPLIERS = ("0.13", "0.77", "1.9", "-0.6", "3.7", "0.125", "5.1", "-2.3", "0.01", "9.7",
                       "0.31", "1.07", "-4.2", "6.3", "0.055", "2.71", "-0.91", "8.1", "0.44", "12.5")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses status 2 for usage errors; this tool reserves 2 for
        # verification mismatches, so usage problems map to 1
        return 0 if exc.code == 0 else 1
    if args.command is None:
        parser.print_help()
        return 1
    try:
        return args.handler(args)
    except (ParameterDomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OrthoBoundsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ortho-bounds",
        description="zeros and inner bounds for classical and q-classical orthogonal polynomials",
    )
    parser.set_defaults(command=None)
    sub = parser.add_subparsers(dest="command")

    def add_common(p):
        p.add_argument("--precision", type=int, default=None,
                       help="working precision in bits (default 256, or ORTHO_BOUNDS_PRECISION)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p_table = sub.add_parser("table", help="recompute a reference table and compare per cell")
    p_table.add_argument("--id", type=int, required=True, help="table number, 1..6")
    add_common(p_table)
    p_table.set_defaults(handler=_cmd_table)

    p_zeros = sub.add_parser("zeros", help="certified zeros of a family polynomial")
    p_zeros.add_argument("--family", required=True, choices=sorted(_FAMILY_TOKENS))
    p_zeros.add_argument("--n", type=int, required=True)
    p_zeros.add_argument("--param", action="append", default=[], metavar="k=v")
    p_zeros.add_argument("--rtol", default=None, help="relative tolerance (default 1e-30)")
    add_common(p_zeros)
    p_zeros.set_defaults(handler=_cmd_zeros)

    p_bounds = sub.add_parser("bounds", help="closed-form inner bounds for the extreme zeros")
    p_bounds.add_argument("--family", required=True, choices=sorted(_FAMILY_TOKENS))
    p_bounds.add_argument("--n", type=int, required=True)
    p_bounds.add_argument("--param", action="append", default=[], metavar="k=v")
    p_bounds.add_argument("--verify", action="store_true",
                          help="check the bounds against the computed zero set")
    add_common(p_bounds)
    p_bounds.set_defaults(handler=_cmd_bounds)

    p_verify = sub.add_parser("verify", help="identity and contract checks")
    p_verify.add_argument("--check", required=True,
                          choices=("beardon", "christoffel", "interlacing", "mixedrec"))
    p_verify.add_argument("--family", required=True, choices=sorted(_FAMILY_TOKENS))
    p_verify.add_argument("--n", type=int, required=True)
    p_verify.add_argument("--m", type=int, default=None)
    p_verify.add_argument("--param", action="append", default=[], metavar="k=v")
    p_verify.add_argument("--samples", type=int, default=10)
    add_common(p_verify)
    p_verify.set_defaults(handler=_cmd_verify)

    return parser


def _parse_params(pairs):
    out = {}
    for item in pairs:
        if "=" not in item:
            raise ValueError(f"--param expects k=v, got {item!r}")
        key, _, value = item.partition("=")
        out[key.strip()] = value.strip()
    return out


def _spec_from_args(args) -> tuple[FamilySpec, dict]:
    params = _parse_params(args.param)
    family = _FAMILY_TOKENS[args.family]
    extra = {k: v for k, v in params.items() if k not in ("alpha", "beta", "q")}
    fam_params = {k: v for k, v in params.items() if k in ("alpha", "beta", "q")}
    return family_spec(family, **fam_params), extra


def _effective_precision(args, spec: FamilySpec | None, n: int | None) -> int:
    prec = args.precision or default_precision()
    # the large-n q-family computations need the wider format throughout
    if spec is not None and n is not None and spec.is_q_family and n >= 70:
        prec = max(prec, 512)
    return prec


def _emit(args, command: str, inputs: dict, results, passed: bool, csv_rows, csv_header) -> None:
    if args.format == "json":
        doc = {"command": command, "inputs": inputs, "results": results, "pass": passed}
        print(json.dumps(doc, indent=2))
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(csv_header)
        for row in csv_rows:
            writer.writerow(row)


def _cmd_table(args) -> int:
    if args.id not in range(1, 7):
        raise ValueError("table id must be in 1..6")
    prec = args.precision or default_precision()
    result = run_table(args.id, prec=prec)
    rows = []
    json_rows = []
    for row in result.rows:
        params = dict(row.params)
        for cell in row.cells:
            rows.append([
                ";".join(f"{k}={v}" for k, v in row.params),
                cell.name,
                cell.printed if cell.printed is not None else "n/a",
                cell.computed if cell.computed is not None else "",
                cell.status,
                "" if cell.err_ulps is None else f"{cell.err_ulps:.6f}",
                cell.note,
            ])
        json_rows.append({
            "params": params,
            "cells": [
                {
                    "name": c.name,
                    "printed": c.printed,
                    "computed": c.computed,
                    "status": c.status,
                    "err_ulps": c.err_ulps,
                    "note": c.note,
                }
                for c in row.cells
            ],
            "notes": list(row.notes),
        })
    _emit(args, "table", {"id": args.id, "precision": prec},
          {"title": result.title, "rows": json_rows}, result.passed,
          rows, ["row_params", "cell", "printed", "computed", "status", "err_ulps", "note"])
    return 0 if result.passed else 2


def _cmd_zeros(args) -> int:
    spec, extra = _spec_from_args(args)
    if extra:
        raise ValueError(f"unexpected parameters: {sorted(extra)}")
    prec = _effective_precision(args, spec, args.n)
    zs = family_zeros(spec, args.n, rtol=args.rtol, prec=prec)
    inputs = {"family": spec.family.value, "n": args.n,
              "params": {k: str(v) for k, v in spec.params},
              "rtol": args.rtol or "1e-30", "precision": prec}
    results = {
        "zeros": [sci_str(z) for z in zs.zeros],
        "achieved_rtol": sci_str(zs.achieved_rtol),
        "count": zs.n,
    }
    csv_rows = [[i + 1, sci_str(z)] for i, z in enumerate(zs.zeros)]
    _emit(args, "zeros", inputs, results, True, csv_rows, ["index", "zero"])
    return 0


def _cmd_bounds(args) -> int:
    spec, extra = _spec_from_args(args)
    if extra:
        raise ValueError(f"unexpected parameters: {sorted(extra)}")
    prec = _effective_precision(args, spec, args.n)
    report = bounds_for(spec, args.n, prec=prec)
    verification = None
    passed = True
    if args.verify:
        zs = family_zeros(spec, args.n, rtol="1e-25", prec=prec)
        verification = verify_bound_report(report, zs, prec=prec)
        passed = verification.holds
    inputs = {"family": spec.family.value, "n": args.n,
              "params": {k: str(v) for k, v in spec.params}, "precision": prec,
              "verify": bool(args.verify)}
    entries_json = []
    csv_rows = []
    for e in report.entries:
        value = sci_str(e.value) if e.value is not None else ""
        entries_json.append({
            "name": e.name, "direction": e.direction.value, "value": value or None,
            "source": e.source, "applicable": e.applicable, "note": e.note,
        })
        csv_rows.append([e.name, e.direction.value, value, e.source,
                         "yes" if e.applicable else "no", e.note])
    results: dict = {"entries": entries_json}
    if verification is not None:
        results["verification"] = {
            "holds": verification.holds,
            "violations": [[str(i), sci_str(a) if a is not None else "", sci_str(b) if b is not None else ""]
                           for i, a, b in verification.violations],
            "common_zeros": [sci_str(z) for z in verification.common_zeros],
            "bound_violations": [[name, sci_str(v), sci_str(x)]
                                 for name, v, x in verification.bound_violations],
        }
    _emit(args, "bounds", inputs, results, passed, csv_rows,
          ["name", "direction", "value", "source", "applicable", "note"])
    return 0 if passed else 2


def _sample_points(spec: FamilySpec, n: int, count: int, prec: int):
    """Deterministic evaluation points scaled to the zero range."""
    cs, ls = recurrence_table(spec, n, prec)
    with context(prec):
        scale = abs(cs[n]) + gmpy2.sqrt(abs(ls[n]))
        if scale == 0:
            scale = gmpy2.mpfr(1)
        mults = list(_SAMPLE_MULTIPLIERS)
        while len(mults) < count:
            mults.extend(_SAMPLE_MULTIPLIERS)
        return [scale * gmpy2.mpfr(m) for m in mults[:count]]


def _cmd_verify(args) -> int:
    spec, extra = _spec_from_args(args)
    k = int(extra.pop("k", 0))
    if extra:
        raise ValueError(f"unexpected parameters: {sorted(extra)}")
    prec = _effective_precision(args, spec, args.n)
    n, m, samples = args.n, args.m, max(1, args.samples)
    inputs = {"check": args.check, "family": spec.family.value, "n": n, "m": m, "k": k,
              "params": {key: str(v) for key, v in spec.params},
              "samples": samples, "precision": prec}

    if args.check == "beardon":
        if m is None or not 2 <= m <= n - 1:
            raise ValueError("beardon check needs 2 <= m <= n-1")
        bound = gmpy2.exp2(-(prec - 64))
        worst = gmpy2.mpfr(0)
        for x in _sample_points(spec, n, samples, prec):
            residual, scale = beardon_residual_scaled(spec, n, m, x, prec)
            if scale > 0:
                worst = max(worst, abs(residual) / scale)
        passed = worst <= bound
        results = {"max_relative_residual": sci_str(worst), "tolerance": sci_str(bound)}
        csv_rows = [["beardon", n, m, samples, sci_str(worst), sci_str(bound), "pass" if passed else "fail"]]
        header = ["check", "n", "m", "samples", "max_relative_residual", "tolerance", "status"]

    elif args.check == "christoffel":
        if k < 1:
            raise ValueError("christoffel check needs --param k=<shift> with k >= 1")
        target = shifted_spec(spec, k)
        c = CSpec.power_of_x(k)
        ratios = []
        with context(prec + 64):
            for x in _sample_points(spec, n, max(samples, 2), prec):
                x = abs(x) + gmpy2.mpfr("0.01")  # keep away from the zero of c_k
                num = gmpy2.mpfr(christoffel_eval(spec, n, c, x, prec))
                den = x**k * gmpy2.mpfr(eval_monic(target, n, x, prec))
                ratios.append(num / den)
            spread = gmpy2.mpfr(0)
            for r in ratios[1:]:
                spread = max(spread, abs(r - ratios[0]) / abs(ratios[0]))
        bound = gmpy2.mpfr("1e-25")
        passed = spread <= bound
        results = {"ratio_spread": sci_str(spread), "tolerance": sci_str(bound)}
        csv_rows = [["christoffel", n, k, len(ratios), sci_str(spread), sci_str(bound),
                     "pass" if passed else "fail"]]
        header = ["check", "n", "k", "samples", "ratio_spread", "tolerance", "status"]

    elif args.check == "mixedrec":
        if m is None or not 2 <= m <= n - 1:
            raise ValueError("mixedrec check needs 2 <= m <= n-1")
        c = CSpec.power_of_x(k)
        rec = build_mixed_recurrence(spec, n, m, c, prec=prec)
        bound = gmpy2.exp2(-(prec - 64))
        worst = gmpy2.mpfr(0)
        with context(prec + 64):
            for x in _sample_points(spec, n, samples, prec):
                residual, scale = mixed_recurrence_residual(spec, rec, c, x, prec)
                if scale > 0:
                    worst = max(worst, abs(residual) / scale)
        passed = worst <= bound and not rec.degree_warning
        results = {"max_relative_residual": sci_str(worst), "tolerance": sci_str(bound),
                   "bound_factor_degree": rec.bound_factor.degree,
                   "degree_warning": rec.degree_warning}
        csv_rows = [["mixedrec", n, m, k, sci_str(worst), sci_str(bound), "pass" if passed else "fail"]]
        header = ["check", "n", "m", "k", "max_relative_residual", "tolerance", "status"]

    else:  # interlacing
        if m is None or not 2 <= m <= n - 1:
            raise ValueError("interlacing check needs 2 <= m <= n-1")
        zs = family_zeros(spec, n, rtol="1e-25", prec=prec)
        violations, commons = completed_interlacing(spec, n, m, k, zs, prec=prec)
        passed = not violations
        results = {
            "violations": [[str(i), sci_str(a) if a is not None else "",
                            sci_str(b) if b is not None else ""] for i, a, b in violations],
            "common_zeros": [sci_str(z) for z in commons],
        }
        csv_rows = [["interlacing", n, m, k, len(violations), len(commons), "pass" if passed else "fail"]]
        header = ["check", "n", "m", "k", "violations", "common_zeros", "status"]

    _emit(args, "verify", inputs, results, passed, csv_rows, header)
    return 0 if passed else 2


if __name__ == "__main__":
    sys.exit(main())
