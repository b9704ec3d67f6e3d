"""Grid experiments on the error term E(x) = Q(x) - c sqrt(x).

Here c = zeta(3/2)/pi.  Everything that claims to be an enclosure is
one: Q(x) comes from the direct evaluator or from the gap-class
decomposition, c sqrt(x) from the constants module, and x^(3/7) from
exact 7th-root bracketing of x^3, so a record's bound_ratio really
brackets |E(x)| / x^(3/7).

The decomposition evaluator re-sums the series by gap class.  One pass
over the floor blocks of x collects the exact class totals for
1 <= d <= d_cut (each class member sits at a block end, so the pass
touches about 2 sqrt(x) blocks, never x terms), the zero-gap class
comes from its own closed form, and the discarded classes d > d_cut
are bracketed by [0, sqrt(x / (d_cut - 1))]: each discarded term is a
square trapped between consecutive jumps, and those jumps thin out
fast enough that the whole discard stays under that root.  op_count
reports the pass length so scaling tests can watch the growth rate.

The fast estimator is the one uncertified number in this module.  It
evaluates (2/15 + sum_{d <= D} gap_coeff(d)) * sqrt(x) through the
closed-form partial sum and attaches the allowance C1 D^3 +
C2 sqrt(x/D).  The allowance is a fitted envelope, not a bound; the
rigorous flag on the result stays False and the defaults for C1, C2
record what the dev-time panels showed, nothing more.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures import TimeoutError as _FutureTimeout
from dataclasses import dataclass, field
from fractions import Fraction
from math import fsum, log, sqrt
from statistics import StatisticsError, linear_regression

from .blocks import q0_block_cut, q0_blocks
from .coefficients import gap_coeff_sum, main_constant
from .interval import (DEFAULT_BUDGET, Enclosure, PrecisionBudget,
                       pow_enclosure, scale_for, sqrt_enclosure)
from .oracle import QValue, _blocks, q_eval
from .rational import RationalScalar, iroot, isqrt

EVALUATORS = ("oracle", "decomposed", "fast")


@dataclass(frozen=True)
class DecompositionReport:
    """Q(x) reassembled from gap classes up to d_cut.

    base is the zero-gap class, classes[i] encloses the exact class
    d = i + 1 total, discarded brackets everything above d_cut, and
    value is their interval sum.  discarded collapses to an exact 0
    when the block pass saw no gap above the cut, so small x with a
    generous cut reassemble Q(x) at full budget width.
    """

    x: RationalScalar
    d_cut: int
    base: Enclosure
    classes: tuple[Enclosure, ...]
    discarded: Enclosure
    value: Enclosure
    op_count: int

    def __post_init__(self) -> None:
        if len(self.classes) != self.d_cut:
            raise ValueError("need one class enclosure per d <= d_cut")
        if self.discarded.lo < 0:
            raise ValueError("discarded classes are sums of squares")

    @property
    def class_total(self) -> Enclosure:
        total = self.base
        for enc in self.classes:
            total = total + enc
        return total


def decompose(x: RationalScalar, d_cut: int = 50,
              budget: PrecisionBudget = DEFAULT_BUDGET) -> DecompositionReport:
    """Enclose Q(x) as base + classes 1..d_cut + discarded bracket.

    The budget is split three ways: the zero-gap closed form, the class
    accumulators (scaled-integer grid, one rounding per block end), and
    the square root in the discard bracket.  Work is one block pass
    plus the zero-gap formula's own pass, both O(sqrt(x)).
    """
    f = Fraction(x)
    if f <= 0:
        raise ValueError("x must be positive")
    if d_cut < 2:
        raise ValueError("the discard bracket needs d_cut >= 2")
    part = budget.split(3)
    p, q = f.numerator, f.denominator

    # Class pass.  Block ends carry the only nonzero gaps; ends with a
    # gap above the cut belong to the discard and are only counted.
    end_bound = 2 * isqrt(p // q) + 4
    scale = scale_for(part.target_width, units=end_bound)
    accs = [0] * (d_cut + 1)
    slacks = [0] * (d_cut + 1)
    ops = 0
    over_cut = 0
    for _start, n_end, gap_val in _blocks(f):
        ops += 1
        if gap_val == 0:
            continue
        if gap_val > d_cut:
            over_cut += 1
            continue
        m = q * n_end * (n_end + 1)
        e = gap_val * m - p
        accs[gap_val] += e * e * scale // (m * m)
        slacks[gap_val] += 1
    classes = tuple(
        Enclosure(Fraction(accs[d], scale), Fraction(accs[d] + slacks[d], scale))
        for d in range(1, d_cut + 1)
    )

    base = q0_blocks(f, part)
    ops += q0_block_cut(f)

    if over_cut:
        root = sqrt_enclosure(f / (d_cut - 1), part)
        discarded = Enclosure(Fraction(0), root.hi)
    else:
        discarded = Enclosure.point(Fraction(0))

    value = base + discarded
    for enc in classes:
        value = value + enc
    return DecompositionReport(f, d_cut, base, classes, discarded, value, ops)


def decomposed_eval(x: RationalScalar, d_cut: int = 50,
                    budget: PrecisionBudget = DEFAULT_BUDGET) -> QValue:
    """Q(x) through the gap-class route, packaged like q_eval output.

    The whole enclosure rides in the tail slot (head 0): no initial
    segment of the series is summed term by term here.
    """
    report = decompose(x, d_cut, budget)
    return QValue(x=report.x, value=report.value, head=Fraction(0),
                  tail=report.value, head_count=0)


# Fitted on dev panels x in {10^5, 10^6, 10^7} (direct evaluator as
# truth), d_cut in {5, 10, 20, 50}; see FastEstimate.
FAST_C1 = Fraction(1, 1000)
FAST_C2 = Fraction(1, 3)


@dataclass(frozen=True)
class FastEstimate:
    """The closed-form estimate of Q(x) with a fitted error allowance.

    value rigorously encloses the expression
    (2/15 + sum_{d <= d_cut} gap_coeff(d)) * sqrt(x) -- the expression,
    not Q(x).  allowance is c1 d_cut^3 + c2 sqrt(x / d_cut) with fitted
    constants: the d^2-sized wobble each kept class leaves behind, plus
    the discarded classes.  Nothing certifies it, hence rigorous False.
    """

    x: RationalScalar
    d_cut: int
    value: Enclosure
    allowance: Fraction
    rigorous: bool = False


def default_fast_cut(x: RationalScalar) -> int:
    """Balance point of the allowance terms: x^(1/7), rounded."""
    f = Fraction(x)
    if f < 1:
        return 1
    n = f.numerator // f.denominator
    lo = iroot(n, 7)
    # nearest integer: compare n against the half-step (lo + 1/2)^7
    up = 128 * n > (2 * lo + 1) ** 7
    return max(1, lo + 1 if up else lo)


def fast_estimate(x: RationalScalar, d_cut: int | None = None,
                  budget: PrecisionBudget = DEFAULT_BUDGET,
                  c1: Fraction = FAST_C1,
                  c2: Fraction = FAST_C2) -> FastEstimate:
    """Estimate Q(x) from the amplitude partial sum, O(d_cut) work.

    d_cut defaults to x^(1/7) rounded, which balances the two halves
    of the allowance.  The result is labeled non-rigorous: its value
    encloses the estimating expression exactly, but the distance from
    that expression to Q(x) is only covered by the fitted allowance.
    """
    f = Fraction(x)
    if f <= 0:
        raise ValueError("x must be positive")
    if d_cut is None:
        d_cut = default_fast_cut(f)
    if d_cut < 1:
        raise ValueError("d_cut must be >= 1")
    half = budget.split(2)
    root_x = isqrt(f.numerator // f.denominator) + 2
    amp = gap_coeff_sum(d_cut, PrecisionBudget(half.target_width / root_x))
    amp = amp.shift(Fraction(2, 15))
    value = amp * sqrt_enclosure(f, half)
    allowance = c1 * d_cut**3 + c2 * (isqrt(f.numerator // (f.denominator * d_cut)) + 1)
    return FastEstimate(f, d_cut, value, allowance)


@dataclass(frozen=True)
class ScanRecord:
    """One grid point of the error-term experiment.

    error = value - main endpointwise and bound_ratio brackets
    |error| / x^(3/7).  seconds is wall clock and stays out of
    equality, so records of duplicate grid points compare equal.
    """

    x: RationalScalar
    value: Enclosure
    main: Enclosure
    error: Enclosure
    bound_ratio: Enclosure
    evaluator: str
    seconds: float = field(default=0.0, compare=False)

    def __post_init__(self) -> None:
        if self.evaluator not in EVALUATORS:
            raise ValueError(f"unknown evaluator {self.evaluator!r}")
        if self.error != self.value - self.main:
            raise ValueError("error must equal value - main endpointwise")


def error_term(x: RationalScalar, budget: PrecisionBudget = DEFAULT_BUDGET,
               evaluator: str = "oracle", d_cut: int = 50) -> ScanRecord:
    """Enclose E(x) = Q(x) - c sqrt(x) at one point.

    evaluator picks the Q(x) route; "fast" substitutes the estimator
    expression (the record then inherits its non-rigorous status, which
    the evaluator tag carries).  d_cut feeds the non-oracle routes.
    """
    f = Fraction(x)
    if f < 2:
        raise ValueError("the error-term experiment starts at x = 2")
    if evaluator not in EVALUATORS:
        raise ValueError(f"unknown evaluator {evaluator!r}")
    started = time.perf_counter()
    half = budget.split(2)
    if evaluator == "oracle":
        value = q_eval(f, half).value
    elif evaluator == "decomposed":
        value = decomposed_eval(f, d_cut, half).value
    else:
        value = fast_estimate(f, d_cut, half).value

    root_x = isqrt(f.numerator // f.denominator) + 2
    const = main_constant(PrecisionBudget(budget.target_width / (4 * root_x)))
    main = const * sqrt_enclosure(f, budget.split(4))
    error = value - main
    ratio = error.abs() / pow_enclosure(f, 3, 7, budget)
    seconds = time.perf_counter() - started
    return ScanRecord(f, value, main, error, ratio, evaluator, seconds)


@dataclass(frozen=True)
class ScanResult:
    """Records in grid order, with per-point failures kept aside.

    capped means the time budget ran out: records is then a prefix of
    the grid.  failures hold (index, x, message) for points that raised
    instead of producing a record; they do not abort the scan.
    """

    records: tuple[ScanRecord, ...]
    failures: tuple[tuple[int, RationalScalar, str], ...] = ()
    capped: bool = False


def _pack_enclosure(enc: Enclosure) -> tuple[int, int, int, int]:
    return (enc.lo.numerator, enc.lo.denominator,
            enc.hi.numerator, enc.hi.denominator)


def _unpack_enclosure(packed: tuple[int, int, int, int]) -> Enclosure:
    return Enclosure(Fraction(packed[0], packed[1]),
                     Fraction(packed[2], packed[3]))


def _scan_one(args: tuple[str, str, str, int]) -> tuple:
    """Worker entry: run one point and flatten the record to integers.

    Fraction pickles through its decimal string, and exact-path
    enclosure endpoints can run to tens of thousands of digits, past
    the interpreter's int-to-string guard.  Bare integers pickle in
    binary, so the record crosses the process boundary as
    numerator/denominator tuples and is reassembled bit-identical.
    """
    x_text, width_text, evaluator, d_cut = args
    budget = PrecisionBudget(Fraction(width_text))
    record = error_term(Fraction(x_text), budget, evaluator, d_cut)
    return (record.x.numerator, record.x.denominator,
            _pack_enclosure(record.value), _pack_enclosure(record.main),
            _pack_enclosure(record.error), _pack_enclosure(record.bound_ratio),
            record.evaluator, record.seconds)


def _unpack_record(packed: tuple) -> ScanRecord:
    return ScanRecord(Fraction(packed[0], packed[1]),
                      _unpack_enclosure(packed[2]), _unpack_enclosure(packed[3]),
                      _unpack_enclosure(packed[4]), _unpack_enclosure(packed[5]),
                      packed[6], packed[7])


def scan(grid: list[RationalScalar],
         budget: PrecisionBudget = DEFAULT_BUDGET,
         evaluator: str = "oracle", d_cut: int = 50,
         workers: int = 1, time_cap: float | None = None) -> ScanResult:
    """Run error_term over a grid; order of records follows the grid.

    workers > 1 fans points out to a process pool; results are
    collected by grid index, so the output order (and every number in
    it) is independent of scheduling.  time_cap stops the scan after
    the point that crosses the cap and marks the result capped.
    """
    points = [Fraction(x) for x in grid]
    if workers < 1:
        raise ValueError("workers must be >= 1")
    started = time.perf_counter()
    records: list[ScanRecord] = []
    failures: list[tuple[int, RationalScalar, str]] = []
    capped = False

    if workers == 1:
        for index, point in enumerate(points):
            try:
                records.append(error_term(point, budget, evaluator, d_cut))
            except Exception as exc:  # noqa: BLE001  recorded, not fatal
                failures.append((index, point, f"{type(exc).__name__}: {exc}"))
            if time_cap is not None and time.perf_counter() - started > time_cap:
                capped = index + 1 < len(points)
                break
        return ScanResult(tuple(records), tuple(failures), capped)

    width_text = str(budget.target_width)
    args = [(str(point), width_text, evaluator, d_cut) for point in points]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_scan_one, arg) for arg in args]
        for index, future in enumerate(futures):
            remaining = None
            if time_cap is not None:
                remaining = max(0.0, time_cap - (time.perf_counter() - started))
            try:
                records.append(_unpack_record(future.result(timeout=remaining)))
            except _FutureTimeout:
                capped = True
                for leftover in futures[index:]:
                    leftover.cancel()
                break
            except Exception as exc:  # noqa: BLE001  recorded, not fatal
                failures.append((index, points[index],
                                 f"{type(exc).__name__}: {exc}"))
    return ScanResult(tuple(records), tuple(failures), capped)


class FitError(ValueError):
    """Raised when fewer than three usable points remain to fit."""


@dataclass(frozen=True)
class FitReport:
    """Least-squares slope of log |E(x)| against log x.

    Only records whose error enclosure excludes zero enter the fit
    (their midpoints have a well-defined magnitude); the rest are
    counted in n_skipped.  max_bound_ratio is the largest certified
    upper bound of |E(x)| / x^(3/7) over all records, skipped or not.
    """

    slope: float
    stderr: float
    max_bound_ratio: RationalScalar
    n_points: int
    n_skipped: int
    records: tuple[ScanRecord, ...]


def fit_exponent(records: list[ScanRecord]) -> FitReport:
    """Fit the growth exponent of the error term from scan records."""
    usable = [r for r in records if not r.error.straddles_zero()]
    skipped = len(records) - len(usable)
    if len(usable) < 3:
        raise FitError(f"need >= 3 usable points, have {len(usable)} "
                       f"({skipped} skipped for straddling zero)")
    xs = [log(float(r.x)) for r in usable]
    ys = [log(abs(float(r.error.midpoint))) for r in usable]
    try:
        slope, intercept = linear_regression(xs, ys)
    except StatisticsError as exc:
        raise FitError(str(exc)) from exc
    residue = fsum((y - (intercept + slope * x)) ** 2
                   for x, y in zip(xs, ys))
    mean_x = fsum(xs) / len(xs)
    spread = fsum((x - mean_x) ** 2 for x in xs)
    if len(usable) > 2 and spread > 0:
        stderr = sqrt(max(0.0, residue) / ((len(usable) - 2) * spread))
    else:
        stderr = 0.0
    top = max(r.bound_ratio.hi for r in records)
    return FitReport(slope, stderr, top, len(usable), skipped,
                     tuple(records))


def geometric_grid(start: int, stop: int,
                   ratio: RationalScalar = Fraction(10)) -> list[int]:
    """Integer grid start, ~start*ratio, ... capped at stop, deduplicated.

    The running point is kept as an exact rational and rounded to the
    nearest integer at each step, so the grid is reproducible no matter
    how the ratio was written.
    """
    r = Fraction(ratio)
    if start < 1 or stop < start:
        raise ValueError("need 1 <= start <= stop")
    if r <= 1:
        raise ValueError("ratio must be > 1")
    grid: list[int] = []
    current = Fraction(start)
    while True:
        point = round(current)
        if point > stop:
            break
        if not grid or point != grid[-1]:
            grid.append(point)
        current *= r
    return grid
