"""Command-line interface.

Subcommands map one-to-one onto the library's verification suites and emit
deterministic CSV or JSON reports (fixed row ordering, no timestamps in the
data section).  Exit codes: 0 clean, 1 violations found, 2 inconclusive
results only, 64 usage error, 70 resource guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .backend import BACKEND, Rat, as_rat, decimal_str
from .certificates import (
    check_above_half,
    check_boundary_cases,
    check_exp_bounds,
    check_medium,
    check_r_positivity,
    check_root_bounds,
    check_small_b,
    check_z_lowerbound,
)
from .exactcore import BinomialSpec, DomainError, p_diff_sign
from .highprec import INCONCLUSIVE, theorem2_threshold, z_diff_sign
from .kernel import (
    ORACLE_MAX_N,
    DeltaCell,
    ResourceError,
    derivative_closed_form_polynomial,
    derivative_oracle,
    eval_g,
    taylor_sandwich,
    verify_claim1,
)
from .poisson import (
    beta_sharpness_identity,
    beta_upper_bound,
    factorial_moment_identity,
    falling_factorial_sum,
    summarize,
    truncated_moment,
)
from .precision import PrecisionPolicy
from .report import CSV_HEADER, SCAN_P_HEADER, Report, ViolationReport, merge_reports
from .smalldev import conjecture_scan, tilde_p_monotonicity_scan, verify_samuels

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64
EXIT_RESOURCE = 70


class _Parser(argparse.ArgumentParser):
    """argparse with the BSD usage exit code instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _grid_step(text: str):
    try:
        if "/" in text:
            p, q = text.split("/", 1)
            return Rat(int(p), int(q))
        return Rat(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad grid step {text!r}: expected P/Q") from exc


def _add_common(sub, *, n_max=None, b_max=None, digits=None, workers=False, grid=False):
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--out", metavar="PATH", default=None)
    if n_max is not None:
        sub.add_argument("--n-max", type=int, default=n_max)
    if b_max is not None:
        sub.add_argument("--b-max", type=int, default=b_max)
    if digits is not None:
        sub.add_argument("--digits", type=int, default=digits)
    if workers:
        sub.add_argument("--workers", type=int, default=1)
    if grid:
        sub.add_argument("--grid-step", type=_grid_step, default=Rat(1, 20))


def build_parser() -> _Parser:
    parser = _Parser(prog="binram", description=__doc__)
    parser.add_argument("--config", metavar="FILE", default=None,
                        help="key=value defaults file; explicit flags override")
    subs = parser.add_subparsers(dest="command", required=True)

    _add_common(subs.add_parser("scan-p", help="exact tail-difference sign scan"),
                n_max=300, workers=True)
    _add_common(subs.add_parser("scan-z", help="exact z-difference sign map (n <= 2000)"),
                n_max=300, workers=True)
    thr = subs.add_parser("threshold", help="locate the z sign-flip near sqrt(77n/360)")
    thr.add_argument("--n", type=int, required=True)
    _add_common(thr, digits=60)
    ver = subs.add_parser("verify", help="exact identity suites")
    ver.add_argument("--claims", default="1,2,3,lemma1,moments",
                     help="comma list from {1,2,3,lemma1,moments}")
    _add_common(ver, n_max=60)
    _add_common(subs.add_parser("poisson", help="rigorous Poisson enclosures"),
                b_max=300, digits=30)
    cert = subs.add_parser("certify", help="finite-range inequality certificates")
    cert.add_argument("target", choices=("appendix-b", "appendix-c", "root-bounds",
                                         "exp-bounds", "z-lowerbound"))
    _add_common(cert, n_max=2000, b_max=None)
    sd = subs.add_parser("smalldev", help="small-deviation reductions")
    sd.add_argument("target", choices=("samuels", "conjecture", "monotonicity"))
    sd.add_argument("--c", default="1", help="shift parameter for monotonicity")
    sd.add_argument("--n-max", type=int, default=None)
    _add_common(sd, grid=True)
    merge = subs.add_parser("report-merge", help="merge JSON reports deterministically")
    merge.add_argument("inputs", nargs="+", metavar="REPORT.json")
    _add_common(merge)
    return parser


def _apply_config(parser: _Parser, argv: list) -> argparse.Namespace:
    """Parse, then fold --config key=value pairs into any option the user did
    not pass explicitly on the command line."""
    args = parser.parse_args(argv)
    if not args.config:
        return args
    try:
        with open(args.config, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        parser.error(f"cannot read config {args.config}: {exc}")
    explicit = {a.split("=", 1)[0] for a in argv if a.startswith("--")}
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            parser.error(f"bad config line (expected key=value): {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        dest = key.replace("-", "_")
        if f"--{key.replace('_', '-')}" in explicit or not hasattr(args, dest):
            continue
        current = getattr(args, dest)
        try:
            if dest == "grid_step":
                value = _grid_step(value)
            elif isinstance(current, bool):
                value = value.lower() in ("1", "true", "yes")
            elif isinstance(current, int):
                value = int(value)
        except (ValueError, argparse.ArgumentTypeError) as exc:
            parser.error(f"bad config value for {key}: {exc}")
        setattr(args, dest, value)
    return args


def _emit(report: Report, args) -> int:
    fmt = args.format
    report.meta.setdefault("header", report.header)
    if args.out:
        report.write(args.out, fmt)
    else:
        sys.stdout.write(report.to_csv() if fmt == "csv" else report.to_json())
    return report.exit_code()


def _meta(args, **extra) -> dict:
    meta = {"command": args.command, "backend": BACKEND}
    meta.update(extra)
    return meta


# -- scans ----------------------------------------------------------------------


def _scan_p_chunk(bounds):
    n_lo, n_hi = bounds
    rows = []
    for n in range(n_lo, n_hi):
        for b in range(1, n):
            sign = p_diff_sign(b, n)
            want = 1 if n >= 3 * b + 2 else -1
            rows.append(["thm3", b, n, sign, sign == want])
    return rows


def _chunks(lo: int, hi: int, workers: int):
    span = max(1, (hi - lo + workers - 1) // workers)
    return [(s, min(s + span, hi)) for s in range(lo, hi, span)]


def cmd_scan_p(args) -> int:
    report = Report(meta=_meta(args, n_max=args.n_max), header=SCAN_P_HEADER)
    bounds = _chunks(2, args.n_max + 1, max(1, args.workers))
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            parts = list(pool.map(_scan_p_chunk, bounds))
    else:
        parts = [_scan_p_chunk(b) for b in bounds]
    for rows in parts:
        report.results.extend(rows)
    for row in report.results:
        if not row[4]:
            report.violations.append(
                ViolationReport.from_rationals("thm3", row[1], row[2], row[3],
                                               1 if row[2] >= 3 * row[1] + 2 else -1)
            )
    return _emit(report, args)


def _scan_z_chunk(bounds):
    n_lo, n_hi = bounds
    rows = []
    for n in range(n_lo, n_hi):
        for b in range(1, n):
            rows.append(["z-sign", b, n, z_diff_sign(b, n)])
    return rows


def cmd_scan_z(args) -> int:
    if args.n_max > 2000:
        raise ResourceError("scan-z is exact and guarded at n <= 2000")
    report = Report(meta=_meta(args, n_max=args.n_max),
                    header=["claim_id", "b", "n", "sign"])
    bounds = _chunks(2, args.n_max + 1, max(1, args.workers))
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            parts = list(pool.map(_scan_z_chunk, bounds))
    else:
        parts = [_scan_z_chunk(b) for b in bounds]
    for rows in parts:
        report.results.extend(rows)
    report.inconclusive = sum(1 for row in report.results if row[3] == INCONCLUSIVE)
    return _emit(report, args)


def cmd_threshold(args) -> int:
    policy = PrecisionPolicy(digits=args.digits, max_escalations=4)
    tr = theorem2_threshold(args.n, policy)
    report = Report(
        meta=_meta(args, n=args.n, digits=args.digits, predicted=tr.predicted,
                   window=list(tr.window)),
        header=["claim_id", "n", "b_star_low", "b_star_high",
                "ratio_low", "ratio_high", "sign_changes"],
        results=[["thm2", tr.n, tr.b_star_low, tr.b_star_high,
                  f"{tr.ratio_low:.6f}", f"{tr.ratio_high:.6f}",
                  ";".join(f"{b}:{a}->{c}" for b, a, c in tr.sign_changes)]],
        inconclusive=len(tr.inconclusive_points),
    )
    return _emit(report, args)


# -- verify ----------------------------------------------------------------------


def _verify_claim2(report: Report, n_max: int) -> None:
    n_max = min(n_max, 30)
    for n in range(2, n_max + 1):
        for b in range(1, n):
            spec = BinomialSpec(b, n)
            for order in range(1, min(b - 1, n - b) + 1):
                closed = derivative_closed_form_polynomial(spec, order)
                oracle = derivative_oracle(spec, order)
                ok = closed.coeffs == oracle.coeffs and closed.scale == oracle.scale
                report.results.append(["claim2", b, n, "ok" if ok else "mismatch",
                                       f"order={order}", "", "", ""])
                if not ok:
                    report.violations.append(ViolationReport.from_rationals(
                        "claim2", b, n, 0, 1, note=f"order={order}"))


def _verify_claim3(report: Report, n_max: int) -> None:
    for n in range(10, min(n_max, 200) + 1, 10):
        for b in range(5, n // 2 + 1):
            sandwich = taylor_sandwich(BinomialSpec(b, n))
            ok = True
            for z in DeltaCell.of(BinomialSpec(b, n)).grid(5):
                g = eval_g(BinomialSpec(b, n), z)
                if not (sandwich.lower(z) <= g <= sandwich.upper(z)):
                    ok = False
                    report.violations.append(ViolationReport.from_rationals(
                        "claim3", b, n, g, sandwich.lower(z), note=f"z={z}"))
            report.results.append(["claim3", b, n, "ok" if ok else "violated",
                                   "", "", "", ""])


def cmd_verify(args) -> int:
    claims = [c.strip() for c in args.claims.split(",") if c.strip()]
    report = Report(meta=_meta(args, claims=claims, n_max=args.n_max), header=CSV_HEADER)
    for claim in claims:
        if claim == "1":
            for n in range(2, min(args.n_max, ORACLE_MAX_N) + 1):
                for b in range(1, n):
                    ok = verify_claim1(BinomialSpec(b, n))
                    report.results.append(["claim1", b, n, "ok" if ok else "violated",
                                           "", "", "", ""])
                    if not ok:
                        report.violations.append(ViolationReport.from_rationals(
                            "claim1", b, n, 0, 1))
        elif claim == "2":
            _verify_claim2(report, args.n_max)
        elif claim == "3":
            _verify_claim3(report, args.n_max)
        elif claim == "lemma1":
            for b in range(1, min(args.n_max, 200) + 1):
                for s in range(1, b + 1):
                    ok = factorial_moment_identity(b, s)
                    if not ok:
                        report.violations.append(ViolationReport.from_rationals(
                            "lemma1", s, b, 0, 1))
                report.results.append(["lemma1", b, b, "ok", "", "", "", ""])
            for k in range(1, 31):
                for s in range(0, k):
                    val = falling_factorial_sum(k, s)
                    if val != 0:
                        report.violations.append(ViolationReport.from_rationals(
                            "lemma1-ffs", s, k, val, 0))
        elif claim == "moments":
            for b in (25, 100):
                for k in (1, 2):
                    for which in ("h1", "h2"):
                        enc = truncated_moment(b, k, which)
                        report.results.append(
                            ["claim4", b, k, which,
                             decimal_str(enc.lo), decimal_str(enc.hi), "", ""])
        else:
            raise DomainError(f"unknown claim {claim!r}")
    return _emit(report, args)


# -- poisson ----------------------------------------------------------------------


def cmd_poisson(args) -> int:
    policy = PrecisionPolicy(digits=args.digits, max_escalations=4)
    report = Report(
        meta=_meta(args, b_max=args.b_max, digits=args.digits),
        header=["claim_id", "b", "y_lo", "y_hi", "alpha_lo", "alpha_hi",
                "beta_lo", "beta_hi"],
    )
    prev_y = None
    prev_alpha = None
    beta_upper = beta_upper_bound(args.digits)
    for b in range(1, args.b_max + 1):
        s = summarize(b, policy)
        report.results.append(["poisson", b,
                               decimal_str(s.y.lo), decimal_str(s.y.hi),
                               decimal_str(s.alpha.lo), decimal_str(s.alpha.hi),
                               decimal_str(s.beta.lo), decimal_str(s.beta.hi)])
        if not (Rat(1, 3) < s.y.lo and s.y.hi < Rat(1, 2)):
            report.violations.append(ViolationReport.from_rationals(
                "poisson-y-range", b, b, s.y.lo, s.y.hi))
        if prev_y is not None and not s.y.strictly_below(prev_y):
            report.violations.append(ViolationReport.from_rationals(
                "poisson-y-monotone", b, b, s.y.hi, prev_y.lo))
        if not (Rat(2, 21) <= s.alpha.lo and s.alpha.hi <= Rat(8, 45)):
            report.violations.append(ViolationReport.from_rationals(
                "poisson-alpha-range", b, b, s.alpha.lo, s.alpha.hi))
        if prev_alpha is not None and not s.alpha.strictly_below(prev_alpha):
            report.violations.append(ViolationReport.from_rationals(
                "poisson-alpha-monotone", b, b, s.alpha.hi, prev_alpha.lo))
        if not s.beta.lo > Rat(-1, 3):
            report.violations.append(ViolationReport.from_rationals(
                "poisson-beta-range", b, b, s.beta.lo, Rat(-1, 3)))
        # upper bound -1 + 4/sqrt(21(368-135e)); attained exactly at b = 1,
        # where it reduces to an exact algebraic identity
        if b == 1:
            if not beta_sharpness_identity():
                report.violations.append(ViolationReport.from_rationals(
                    "poisson-beta-range", b, b, s.beta.hi, beta_upper.hi))
        elif not s.beta.hi < beta_upper.lo:
            report.violations.append(ViolationReport.from_rationals(
                "poisson-beta-range", b, b, s.beta.hi, beta_upper.lo))
        prev_y, prev_alpha = s.y, s.alpha
    return _emit(report, args)


# -- certify ----------------------------------------------------------------------


def _certificate_report(args, certs) -> Report:
    report = Report(meta=_meta(args, target=args.target), header=CSV_HEADER)
    for cert in certs:
        report.results.append([cert.claim_id, cert.range.b_lo, cert.range.n_hi,
                               cert.status, cert.range.describe(), "", "", ""])
        report.violations.extend(cert.witnesses)
        report.inconclusive += len(cert.inconclusive_points)
    return report


def cmd_certify(args) -> int:
    if args.target == "appendix-b":
        certs = [check_boundary_cases()]
    elif args.target == "appendix-c":
        certs = [check_small_b(), check_medium(), check_above_half(),
                 check_r_positivity()]
    elif args.target == "root-bounds":
        certs = [check_root_bounds()]
    elif args.target == "exp-bounds":
        certs = [check_exp_bounds(n_max=min(args.n_max, 2000))]
    else:  # z-lowerbound
        certs = [check_z_lowerbound(n_max=min(args.n_max, 2000))]
    return _emit(_certificate_report(args, certs), args)


# -- smalldev ----------------------------------------------------------------------


def cmd_smalldev(args) -> int:
    report = Report(meta=_meta(args, target=args.target), header=CSV_HEADER)
    if args.target == "samuels":
        n_max = args.n_max or 200
        report.violations.extend(verify_samuels(n_max))
        report.results.append(["samuels", 2, n_max, "scanned", "", "", "", ""])
    elif args.target == "conjecture":
        n_max = args.n_max or 20
        for n in range(2, n_max + 1):
            result = conjecture_scan(n, args.grid_step)
            report.violations.extend(result.violations)
            report.results.append([
                "conjecture", 0, n,
                f"witnesses={len(result.equality_witnesses)}",
                f"degenerate={result.degenerate_points}", "", "", ""])
    else:  # monotonicity: recorded signs, decreases listed but not violations
        n_max = args.n_max or 100
        signs, decreases = tilde_p_monotonicity_scan(as_rat(args.c), n_max)
        increases = sum(1 for v in signs.values() if v > 0)
        report.results.append(["tilde-p-monotone", 1, n_max,
                               f"increases={increases}",
                               f"decreases={len(decreases)}",
                               f"points={len(signs)}", "", ""])
    return _emit(report, args)


# -- merge ------------------------------------------------------------------------


def _load_report(path: str) -> Report:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    meta = doc.get("meta", {})
    rows = doc.get("results", [])
    header = meta.get("header") or (list(rows[0].keys()) if rows else CSV_HEADER)
    report = Report(meta=meta, header=header)
    report.results = [[row.get(key, "") for key in header] for row in rows]
    report.violations = [
        ViolationReport(**{k: v for k, v in item.items()})
        for item in doc.get("violations", [])
    ]
    report.inconclusive = doc.get("inconclusive", 0)
    return report


def cmd_report_merge(args) -> int:
    reports = [_load_report(path) for path in args.inputs]
    merged = merge_reports(reports)
    merged.meta["header"] = merged.header
    return _emit(merged, args)


_COMMANDS = {
    "scan-p": cmd_scan_p,
    "scan-z": cmd_scan_z,
    "threshold": cmd_threshold,
    "verify": cmd_verify,
    "poisson": cmd_poisson,
    "certify": cmd_certify,
    "smalldev": cmd_smalldev,
    "report-merge": cmd_report_merge,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = _apply_config(parser, list(sys.argv[1:] if argv is None else argv))
    try:
        handler = _COMMANDS[args.command]
        return handler(args)
    except ResourceError as exc:
        print(f"binram: resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (DomainError, ValueError) as exc:
        print(f"binram: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"binram: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
