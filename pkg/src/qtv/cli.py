"""Command line front end.

Subcommands cover the library surface: eval (one enclosure of Q(x)),
decompose (per-gap-class table), verify (identity and residual checks,
the headline pass/fail gate), coeffs (per-class amplitudes and their
partial sums), constants (zeta(3/2), the main constant, and the
extrapolation cross-check), scan and fit (error-term grids and the
log-log slope), selftest (fast smoke checks).

Conventions shared by every subcommand: rational inputs are "p/q" or
decimal strings and are converted exactly; every numeric field in CSV
or JSON output is an enclosure endpoint or exact rational rendered in
decimal with directed rounding (lower endpoints down, upper endpoints
up), so nothing in the output is wider than the arithmetic behind it;
JSON objects carry "schema": 1; CSV uses a header row and LF line
endings.  Exit codes: 0 success, 1 verification failure, 2 usage or
parse error, 3 precision budget exhausted, 4 runtime cap hit.

The only numbers exempt from the endpoint rule are wall-clock seconds
and the regression outputs of fit, which are measurements, not
enclosures; they are printed as plain decimals.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from fractions import Fraction

from .asymptotics import (EVALUATORS, FitError, ScanRecord, decompose,
                          decomposed_eval, error_term, fast_estimate,
                          fit_exponent, geometric_grid, scan)
from .blocks import RESIDUAL_NAMES, cut_point, q0_blocks, qd_blocks, residual_report
from .coefficients import (DEFAULT_COEFFS, coeff_sum_limit, gap_coeff,
                           gap_coeff_sum, limit_estimate, main_constant,
                           zeta_3_2)
from .interval import (BudgetError, Enclosure, PrecisionBudget,
                       sqrt_enclosure)
from .oracle import q0_direct, q_d_direct, q_eval
from .rational import format_rational, parse_rational
from .tails import g2, g2_tail

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_CAP = 4

DIGITS = 15

# Pass thresholds for the residual checks in `verify`: roughly twice
# the worst ratio seen on dev panels (x = 1e4 and 1e6, d <= 50), so a
# genuine shape change in any envelope trips them while honest noise
# does not.
RESIDUAL_CAPS = {
    "cut_point": Fraction(4),
    "cut_window_k1": Fraction(1),
    "cut_window_k3": Fraction(3),
    "between_cuts_k4": Fraction(5),
    "tail_series": Fraction(1, 4),
    "summand_main": Fraction(1),
    "window_sum_center": Fraction(1, 2),
    "window_sum_upper": Fraction(3),
    "window_sum_lower": Fraction(1, 2),
    "q0_mean": Fraction(1),
}


class UsageError(ValueError):
    """Bad argument values discovered after argparse."""


def _down(value: Fraction, digits: int = DIGITS) -> str:
    return format_rational(value, digits, "down")


def _up(value: Fraction, digits: int = DIGITS) -> str:
    return format_rational(value, digits, "up")


def _near(value: Fraction, digits: int = DIGITS) -> str:
    return format_rational(value, digits, "nearest")


def _enc_pair(enc: Enclosure, digits: int = DIGITS) -> tuple[str, str]:
    return _down(enc.lo, digits), _up(enc.hi, digits)


def _frac_str(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _parse_x(text: str, minimum: Fraction = Fraction(0)) -> Fraction:
    try:
        x = parse_rational(text)
    except ValueError as exc:
        raise UsageError(f"cannot parse {text!r} as a rational") from exc
    if x <= minimum:
        raise UsageError(f"x must be > {minimum}, got {text}")
    return x


def _budget(args: argparse.Namespace) -> PrecisionBudget:
    try:
        width = parse_rational(args.tolerance)
    except ValueError as exc:
        raise UsageError(f"cannot parse tolerance {args.tolerance!r}") from exc
    if width <= 0:
        raise UsageError("tolerance must be positive")
    return PrecisionBudget(width)


def _open_output(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _emit_json(payload: dict, stream) -> None:
    json.dump(payload, stream, indent=2)
    stream.write("\n")


# ---------------------------------------------------------------- eval


def cmd_eval(args: argparse.Namespace) -> int:
    x = _parse_x(args.x)
    budget = _budget(args)
    started = time.perf_counter()
    rigorous = args.evaluator != "fast"
    extra: dict[str, str] = {}
    if args.evaluator == "oracle":
        value = q_eval(x, budget).value
    elif args.evaluator == "decomposed":
        value = decomposed_eval(x, args.d_max or 50, budget).value
    else:
        est = fast_estimate(x, args.d_max, budget)
        value = est.value
        extra["allowance"] = _up(est.allowance)
        extra["d_cut"] = str(est.d_cut)
    seconds = time.perf_counter() - started
    lo, hi = _enc_pair(value)

    stream, close = _open_output(args.output)
    try:
        if args.format == "json":
            payload = {
                "schema": 1,
                "x": _frac_str(x),
                "q_lo": lo,
                "q_hi": hi,
                "width": _up(value.width),
                "evaluator": args.evaluator,
                "rigorous": rigorous,
                "seconds": round(seconds, 3),
            }
            payload.update(extra)
            _emit_json(payload, stream)
        else:
            stream.write(f"Q({_frac_str(x)}) in [{lo}, {hi}]\n")
            stream.write(f"width <= {_up(value.width)}\n")
            tag = "rigorous" if rigorous else "heuristic, rigorous: false"
            stream.write(f"evaluator {args.evaluator} ({tag})\n")
            for key, val in extra.items():
                stream.write(f"{key} {val}\n")
            stream.write(f"seconds {seconds:.3f}\n")
    finally:
        if close:
            stream.close()
    return EXIT_OK


# ----------------------------------------------------------- decompose


def cmd_decompose(args: argparse.Namespace) -> int:
    x = _parse_x(args.x)
    if args.d_max < 0:
        raise UsageError("--d-max must be >= 0")
    budget = _budget(args)
    report = decompose(x, max(2, args.d_max), budget)

    rows: list[tuple[str, Enclosure, Enclosure, str]] = []
    cum = report.base
    rows.append(("0", report.base, cum, ""))
    for d in range(1, args.d_max + 1):
        enc = report.classes[d - 1]
        cum = cum + enc
        bound = sqrt_enclosure(x / (d - 1), budget).hi if d >= 2 else None
        rows.append((str(d), enc, cum, _up(bound) if bound is not None else ""))
    rest = report.discarded
    for enc in report.classes[args.d_max:]:
        rest = rest + enc
    cum = cum + rest
    rows.append(("rest", rest, cum, _up(rest.hi)))

    stream, close = _open_output(args.output)
    try:
        if args.format == "csv":
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(["d", "qd_lo", "qd_hi", "cum_lo", "cum_hi",
                             "tail_bound"])
            for label, enc, cum_enc, bound in rows:
                qlo, qhi = _enc_pair(enc)
                clo, chi = _enc_pair(cum_enc)
                writer.writerow([label, qlo, qhi, clo, chi, bound])
        elif args.format == "json":
            payload = {
                "schema": 1,
                "x": _frac_str(x),
                "d_max": args.d_max,
                "rows": [
                    {"d": label, "qd_lo": _enc_pair(enc)[0],
                     "qd_hi": _enc_pair(enc)[1],
                     "cum_lo": _enc_pair(cum_enc)[0],
                     "cum_hi": _enc_pair(cum_enc)[1],
                     "tail_bound": bound}
                    for label, enc, cum_enc, bound in rows
                ],
                "op_count": report.op_count,
            }
            _emit_json(payload, stream)
        else:
            stream.write(f"Q({_frac_str(x)}) by gap class, cut at "
                         f"d = {args.d_max}\n")
            head = f"{'d':>6} {'class total':^44} {'cumulative':^44}"
            stream.write(head + "\n")
            for label, enc, cum_enc, _bound in rows:
                qlo, qhi = _enc_pair(enc)
                clo, chi = _enc_pair(cum_enc)
                stream.write(f"{label:>6} [{qlo:>20}, {qhi:>20}] "
                             f"[{clo:>20}, {chi:>20}]\n")
            stream.write(f"block operations: {report.op_count}\n")
    finally:
        if close:
            stream.close()
    return EXIT_OK


# -------------------------------------------------------------- verify


def _check(name: str, params: dict, lhs: Fraction | None,
           rhs: Enclosure, passed: bool) -> dict:
    lo, hi = _enc_pair(rhs)
    return {
        "name": name,
        "params": params,
        "lhs": _near(lhs) if lhs is not None else None,
        "rhs_lo": lo,
        "rhs_hi": hi,
        "pass": passed,
    }


def _mutated_coeffs(spec_text: str | None) -> tuple[int, ...]:
    if not spec_text:
        return DEFAULT_COEFFS
    try:
        index_text, delta_text = spec_text.split(":", 1)
        index, delta = int(index_text), int(delta_text)
        coeffs = list(DEFAULT_COEFFS)
        coeffs[index] += delta
    except (ValueError, IndexError) as exc:
        raise UsageError(f"bad coefficient mutation {spec_text!r}; "
                         f"expected INDEX:DELTA") from exc
    return tuple(coeffs)


def cmd_verify(args: argparse.Namespace) -> int:
    budget = _budget(args)
    x_texts = args.x if args.x is not None else ["1000", "10000"]
    xs = [(_parse_x(text), text) for text in x_texts]
    coeffs = _mutated_coeffs(args.mutate_coeff)
    checks: list[dict] = []

    # Closed form of each gap-class total against the exact class sum.
    for x, x_text in xs:
        for d in range(1, args.d_max + 1):
            if 2 * (d + 1) > x:
                continue
            exact = q_d_direct(x, d)
            rep = qd_blocks(x, d, budget, compare_direct=False,
                            _middle_shift=args.shift_middle)
            checks.append(_check("class_closed_form",
                                 {"x": x_text, "d": d},
                                 exact, rep.value, rep.value.contains(exact)))

    # Telescoped amplitude partial sums against term-by-term addition.
    for limit in (1, 10, 100):
        per = PrecisionBudget(budget.target_width / (2 * limit))
        direct = Enclosure.point(Fraction(0))
        for d in range(1, limit + 1):
            direct = direct + gap_coeff(d, per, coeffs)
        closed = gap_coeff_sum(limit, budget.split(2))
        checks.append(_check("coeff_partial_sum", {"limit": limit},
                             None, closed, direct.intersects(closed)))

    # One step of the tail series must telescope exactly.
    for m in (1, 10, 100):
        step = g2_tail(m, budget.split(2)) - g2_tail(m + 1, budget.split(2))
        checks.append(_check("tail_telescope", {"m": m}, g2(m), step,
                             step.contains(g2(m))))

    # Zero-gap closed form against the subtraction route.
    for x, x_text in xs:
        if x > 10**5:
            continue  # direct route sums x terms; keep verify quick
        direct = q0_direct(x, budget)
        formula = q0_blocks(x, budget)
        checks.append(_check("zero_gap_formula", {"x": x_text},
                             direct.midpoint, formula,
                             formula.intersects(direct)))

    # Residual envelopes: ratio against the fitted caps.
    tight = PrecisionBudget(Fraction(1, 10**12))
    for x, x_text in xs:
        for name in RESIDUAL_NAMES:
            cap = RESIDUAL_CAPS[name]
            if name == "tail_series":
                cases = [(None, None, Fraction(10))] if x == xs[0][0] else []
            elif name == "q0_mean":
                cases = [(None, None, x)]
            elif name in ("cut_point", "between_cuts_k4"):
                cases = [(d, None, x) for d in (0, 1, 5, 20)]
            elif name == "summand_main":
                cases = [(d, cut_point(x, d), x) for d in (1, 5, 20)]
            else:
                cases = [(d, None, x) for d in (1, 5, 20)]
            for d, k, arg in cases:
                if d is not None and 2 * (d + 1) > arg:
                    continue
                rep = residual_report(name, arg, d, k, tight)
                ratio = rep.ratio_hi
                params = {"x": x_text, "d": d, "k": k}
                if name == "tail_series":
                    params = {"t": str(arg)}
                checks.append(_check(f"residual_{name}", params, ratio,
                                     Enclosure(Fraction(0), cap),
                                     ratio <= cap))

    failed = sum(1 for c in checks if not c["pass"])
    payload = {
        "schema": 1,
        "checks": checks,
        "passed": len(checks) - failed,
        "failed": failed,
    }
    stream, close = _open_output(args.output)
    try:
        _emit_json(payload, stream)
    finally:
        if close:
            stream.close()
    if not checks:
        print("warning: no checks selected", file=sys.stderr)
        return EXIT_OK
    return EXIT_OK if failed == 0 else EXIT_FAIL


# -------------------------------------------------------------- coeffs


def cmd_coeffs(args: argparse.Namespace) -> int:
    if args.limit < 0:
        raise UsageError("limit must be >= 0")
    budget = _budget(args)
    per = PrecisionBudget(budget.target_width / max(1, args.limit))
    rows = []
    partial = Enclosure.point(Fraction(0))
    for d in range(1, args.limit + 1):
        enc = gap_coeff(d, per)
        partial = partial + enc
        rows.append((d, enc, partial))

    stream, close = _open_output(args.output)
    try:
        if args.format == "csv":
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(["d", "coeff_lo", "coeff_hi",
                             "partial_lo", "partial_hi"])
            for d, enc, part in rows:
                clo, chi = _enc_pair(enc)
                plo, phi = _enc_pair(part)
                writer.writerow([d, clo, chi, plo, phi])
        else:
            summary = None
            if args.limit >= 1:
                closed = gap_coeff_sum(args.limit, budget.split(2))
                lim = coeff_sum_limit(budget.split(2))
                gap_enc = closed - lim
                summary = (closed, lim, gap_enc)
            if args.format == "json":
                payload = {
                    "schema": 1,
                    "limit": args.limit,
                    "rows": [
                        {"d": d, "coeff_lo": _enc_pair(enc)[0],
                         "coeff_hi": _enc_pair(enc)[1],
                         "partial_lo": _enc_pair(part)[0],
                         "partial_hi": _enc_pair(part)[1]}
                        for d, enc, part in rows
                    ],
                }
                if summary:
                    closed, lim, gap_enc = summary
                    payload["closed_form_lo"], payload["closed_form_hi"] = \
                        _enc_pair(closed)
                    payload["limit_lo"], payload["limit_hi"] = _enc_pair(lim)
                    payload["limit_gap_lo"], payload["limit_gap_hi"] = \
                        _enc_pair(gap_enc)
                _emit_json(payload, stream)
            else:
                stream.write(f"{'d':>5} {'amplitude':^44} "
                             f"{'partial sum':^44}\n")
                for d, enc, part in rows:
                    clo, chi = _enc_pair(enc)
                    plo, phi = _enc_pair(part)
                    stream.write(f"{d:>5} [{clo:>20}, {chi:>20}] "
                                 f"[{plo:>20}, {phi:>20}]\n")
                if summary:
                    closed, lim, gap_enc = summary
                    clo, chi = _enc_pair(closed)
                    llo, lhi = _enc_pair(lim)
                    glo, ghi = _enc_pair(gap_enc)
                    stream.write(f"closed form  [{clo}, {chi}]\n")
                    stream.write(f"series limit [{llo}, {lhi}]\n")
                    stream.write(f"limit gap    [{glo}, {ghi}]\n")
    finally:
        if close:
            stream.close()
    return EXIT_OK


# ----------------------------------------------------------- constants


def cmd_constants(args: argparse.Namespace) -> int:
    budget = _budget(args)
    zeta = zeta_3_2(budget)
    constant = main_constant(budget)
    tight = PrecisionBudget(min(budget.target_width, Fraction(1, 10**11)))
    cut = args.cross_check_cut
    est = limit_estimate(cut, tight)
    lim = coeff_sum_limit(tight)
    gap_value = (est - lim).abs().hi

    zl, zh = _enc_pair(zeta)
    cl, ch = _enc_pair(constant)
    payload = {
        "schema": 1,
        "zeta_3_2_lo": zl,
        "zeta_3_2_hi": zh,
        "main_constant_lo": cl,
        "main_constant_hi": ch,
        "cross_check_cut": cut,
        "cross_check_gap": _up(gap_value),
    }
    stream, close = _open_output(args.output)
    try:
        if args.format == "json":
            _emit_json(payload, stream)
        else:
            stream.write(f"zeta(3/2)      in [{zl}, {zh}]\n")
            stream.write(f"zeta(3/2)/pi   in [{cl}, {ch}]\n")
            stream.write(f"extrapolation cross-check at cut {cut}: "
                         f"gap <= {_up(gap_value)}\n")
    finally:
        if close:
            stream.close()
    return EXIT_OK


# ---------------------------------------------------------------- scan


SCAN_COLUMNS = ["x", "q_lo", "q_hi", "main_lo", "main_hi",
                "err_lo", "err_hi", "ratio_hi", "evaluator", "seconds"]


def _record_row(record: ScanRecord) -> list[str]:
    qlo, qhi = _enc_pair(record.value)
    mlo, mhi = _enc_pair(record.main)
    elo, ehi = _enc_pair(record.error)
    return [_frac_str(record.x), qlo, qhi, mlo, mhi, elo, ehi,
            _up(record.bound_ratio.hi), record.evaluator,
            f"{record.seconds:.3f}"]


def cmd_scan(args: argparse.Namespace) -> int:
    budget = _budget(args)
    lo = _parse_x(args.grid_min)
    hi = _parse_x(args.grid_max)
    ratio = parse_rational(args.grid_ratio)
    if lo < 2 or lo.denominator != 1 or hi.denominator != 1:
        raise UsageError("grid endpoints must be integers >= 2")
    if ratio <= 1:
        raise UsageError("--grid-ratio must be > 1")
    grid = [Fraction(g) for g in
            geometric_grid(int(lo), int(hi), ratio)]
    result = scan(grid, budget, args.evaluator, args.d_max,
                  workers=args.workers, time_cap=args.runtime_cap)

    for index, x, message in result.failures:
        print(f"warning: point {index} (x = {_frac_str(x)}) failed: "
              f"{message}", file=sys.stderr)

    stream, close = _open_output(args.output)
    try:
        if args.format == "json":
            payload = {
                "schema": 1,
                "evaluator": args.evaluator,
                "capped": result.capped,
                "records": [dict(zip(SCAN_COLUMNS, _record_row(r)))
                            for r in result.records],
                "failures": [{"index": i, "x": _frac_str(x), "message": m}
                             for i, x, m in result.failures],
            }
            _emit_json(payload, stream)
        else:
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(SCAN_COLUMNS)
            for record in result.records:
                writer.writerow(_record_row(record))
    finally:
        if close:
            stream.close()
    if result.capped:
        print("warning: runtime cap hit; output is a prefix of the grid",
              file=sys.stderr)
        return EXIT_CAP
    return EXIT_OK


# ----------------------------------------------------------------- fit


def cmd_fit(args: argparse.Namespace) -> int:
    if args.input is None or args.input == "-":
        stream = sys.stdin
        close = False
    else:
        stream = open(args.input, "r", encoding="utf-8", newline="")
        close = True
    try:
        reader = csv.DictReader(stream)
        records = []
        for row in reader:
            x = parse_rational(row["x"])
            error = Enclosure(parse_rational(row["err_lo"]),
                              parse_rational(row["err_hi"]))
            ratio_hi = parse_rational(row["ratio_hi"])
            records.append(ScanRecord(
                x=x, value=error, main=Enclosure.point(Fraction(0)),
                error=error,
                bound_ratio=Enclosure(Fraction(0), ratio_hi),
                evaluator=row.get("evaluator", "oracle"),
                seconds=float(row.get("seconds", "0") or 0.0),
            ))
    except (KeyError, ValueError) as exc:
        raise UsageError(f"input is not a scan CSV: {exc}") from exc
    finally:
        if close:
            stream.close()

    try:
        report = fit_exponent(records)
    except FitError as exc:
        print(f"fit error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    payload = {
        "schema": 1,
        "slope": round(report.slope, 12),
        "stderr": round(report.stderr, 12),
        "max_bound_ratio": _up(Fraction(report.max_bound_ratio)),
        "n_points": report.n_points,
        "n_skipped": report.n_skipped,
    }
    out, close = _open_output(args.output)
    try:
        _emit_json(payload, out)
    finally:
        if close:
            out.close()
    return EXIT_OK


# ------------------------------------------------------------ selftest


def cmd_selftest(args: argparse.Namespace) -> int:
    del args
    failures = 0

    def check(label: str, fn) -> None:
        nonlocal failures
        try:
            fn()
            print(f"ok      {label}")
        except Exception as exc:  # noqa: BLE001  report and continue
            failures += 1
            print(f"FAIL    {label}: {type(exc).__name__}: {exc}")

    def parse_exact():
        assert parse_rational("2.5") == Fraction(5, 2)
        assert parse_rational("3/2") == Fraction(3, 2)

    def nested_tolerances():
        wide = q_eval(Fraction(1), PrecisionBudget(Fraction(1, 100))).value
        tight = q_eval(Fraction(1), PrecisionBudget(Fraction(1, 10**10))).value
        assert wide.encloses(tight)

    def record_consistent():
        record = error_term(Fraction(4))
        assert record.error == record.value - record.main
        assert record.value.encloses(record.main + record.error) or \
            (record.main + record.error).encloses(record.value)

    def decompose_intersects():
        qv = q_eval(Fraction(10))
        rep = decompose(Fraction(10), 5)
        assert rep.value.intersects(qv.value)

    def empty_partial_sum():
        assert gap_coeff_sum(0).contains(Fraction(0))

    def duplicate_records():
        res = scan([Fraction(100), Fraction(100)],
                   PrecisionBudget(Fraction(1, 10**6)))
        assert res.records[0] == res.records[1]

    def synthetic_slope():
        recs = []
        for x in (10**4, 10**6, 10**8):
            e = Enclosure.point(Fraction(int(x**0.25 * 10**9), 10**9))
            zero = Enclosure.point(Fraction(0))
            recs.append(ScanRecord(Fraction(x), e, zero, e, e.abs(),
                                   "oracle"))
        fit = fit_exponent(recs)
        assert abs(fit.slope - 0.25) < 1e-6

    def heuristic_finite():
        est = fast_estimate(Fraction(1))
        assert est.rigorous is False
        assert est.value.width < 1

    check("parse rational inputs exactly", parse_exact)
    check("loose tolerance nests the tight result", nested_tolerances)
    check("error record internally consistent", record_consistent)
    check("decomposition intersects direct evaluation", decompose_intersects)
    check("empty amplitude partial sum is zero", empty_partial_sum)
    check("duplicate scan points give identical records", duplicate_records)
    check("synthetic exponent recovered", synthetic_slope)
    check("fast estimate flagged heuristic and finite", heuristic_finite)
    return EXIT_OK if failures == 0 else EXIT_FAIL


# ---------------------------------------------------------------- main


def _add_common(parser: argparse.ArgumentParser,
                tolerance: str = "1e-9") -> None:
    parser.add_argument("--tolerance", default=tolerance,
                        help=f"target enclosure width (default {tolerance})")
    parser.add_argument("--output", default=None, metavar="PATH",
                        help="write to PATH instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtv",
        description="Exact and certified evaluation of the fractional-part "
                    "increment series Q(x) and its square-root law.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="enclose Q(x) at one point")
    p.add_argument("x", help="evaluation point, 'p/q' or decimal")
    p.add_argument("--evaluator", choices=EVALUATORS, default="oracle")
    p.add_argument("--d-max", type=int, default=None,
                   help="class cut for the non-oracle evaluators "
                        "(decomposed: 50; fast: x^(1/7) rounded)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    _add_common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("decompose", help="table of gap-class totals")
    p.add_argument("x")
    p.add_argument("--d-max", type=int, default=10)
    p.add_argument("--format", choices=("text", "csv", "json"),
                   default="text")
    _add_common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify",
                       help="identity and residual checks (exit 1 on any "
                            "failure)")
    p.add_argument("--x", action="append",
                   default=None, metavar="X",
                   help="check points (repeatable; default 1000 and 10000)")
    p.add_argument("--d-max", type=int, default=20)
    p.add_argument("--mutate-coeff", default=None, help=argparse.SUPPRESS)
    p.add_argument("--shift-middle", type=int, default=0,
                   help=argparse.SUPPRESS)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("coeffs",
                       help="per-class amplitudes and partial sums")
    p.add_argument("limit", type=int, help="largest class index d")
    p.add_argument("--format", choices=("text", "csv", "json"),
                   default="text")
    _add_common(p)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("constants",
                       help="zeta(3/2), the main constant, cross-check")
    p.add_argument("--cross-check-cut", type=int, default=10**6,
                   help="partial-sum cut for the extrapolation cross-check")
    p.add_argument("--format", choices=("text", "json"), default="text")
    _add_common(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("scan", help="error-term records over a grid")
    p.add_argument("--grid-min", default="100")
    p.add_argument("--grid-max", default="1000000")
    p.add_argument("--grid-ratio", default="3.16227766017",
                   help="geometric step (default ~sqrt(10))")
    p.add_argument("--evaluator", choices=EVALUATORS, default="oracle")
    p.add_argument("--d-max", type=int, default=50)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--runtime-cap", type=float, default=None,
                   metavar="SECONDS")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_common(p, tolerance="1e-8")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("fit", help="log-log slope of a scan CSV")
    p.add_argument("--input", default="-", metavar="PATH",
                   help="scan CSV (default stdin)")
    p.add_argument("--output", default=None, metavar="PATH")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("selftest", help="fast smoke checks")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetError as exc:
        print(f"precision budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
