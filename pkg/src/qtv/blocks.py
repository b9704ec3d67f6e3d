"""Closed-form block evaluation of the gap classes of Q(x).

The gap d >= 1 indices are block ends of floor(x/n), so each class is
reachable without visiting indices one by one.  Writing K_d for the
largest k >= 0 with k(k - d) <= dx (equivalently floor((d +
sqrt(d^2+4dx))/2); K_0 = 0), the class-d sum collapses, for
d + 1 <= x/2, to five short sums over quotients k:

    Q_d(x) = ( 2 sum_{K_d-d < k <= K_d}
                 - sum_{K_{d+1}-d-1 < k <= K_{d+1}}
                 - sum_{K_{d-1}-d+1 < k <= K_{d-1}} ) summand(k)
             - ( sum_{K_d < k <= K_{d+1}}
                 - sum_{K_{d-1} < k <= K_d} ) (d - x jump_weight(x/k))^2

with summand(k) = d^2 floor(x/k) + 2dx/floor(x/k) - x^2 tail(x/k),
tail(t) = sum_{n > t-1} 1/(n(n+1))^2.  All sums run over O(d) values
of k near sqrt(dx), so the cost is independent of x; every piece is
exact rational except the tail, which carries a certified bracket.
Empty ranges (upper bound <= lower bound) contribute nothing, which
silently handles d = 1 where the K_0 ranges vanish.

The gap-0 class has its own cut: with K the largest k >= 0 with
k(k+1) <= x, the blocks of quotient v <= K are exactly the blocks of
length >= 2 (v(v+1) <= x iff the block holds more than one index, and
then the block ends floor(x/v), v = 1..K, are pairwise distinct), so

    Q_0(x) = x^2 ( sum_{n > floor(x/(K+1))} g2(n)
                   - sum_{v=1}^{K} g2(floor(x/v)) ),

one tail evaluation and K exact terms, again O(sqrt(x)) total.

residual_report packages the difference between each of these sums
and its leading asymptotic term, normalized by the expected error
envelope, so the envelopes can be checked empirically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .interval import (DEFAULT_BUDGET, Enclosure, PrecisionBudget, scale_for,
                       sqrt_enclosure)
from .oracle import q_d_direct
from .rational import RationalScalar, floor_sqrt_rational
from .tails import g2_tail, g2_tail_real


def q0_block_cut(x: RationalScalar) -> int:
    """Largest k >= 0 with k(k+1) <= x; blocks with quotient above it
    are singletons or empty."""
    f = Fraction(x)
    if f <= 0:
        raise ValueError("x must be positive")
    # k(k+1) <= x  iff  (2k+1)^2 <= 4x+1
    s = floor_sqrt_rational(4 * f + 1)
    return (s - 1) // 2


def cut_point(x: RationalScalar, d: int) -> int:
    """Largest k >= 0 with k(k - d) <= dx, for 0 <= d <= x.

    Equals floor((d + sqrt(d^2 + 4dx))/2): both conditions say
    (2k - d)^2 <= d^2 + 4dx on the increasing branch k >= d/2, and
    below that branch k(k - d) <= 0 <= dx holds anyway.
    """
    f = Fraction(x)
    if f <= 0:
        raise ValueError("x must be positive")
    if d < 0 or d > f:
        raise ValueError("cut_point needs 0 <= d <= x")
    s = floor_sqrt_rational(Fraction(d * d) + 4 * d * f)
    return (d + s) // 2


def _s1(n: int) -> int:
    return n * (n + 1) // 2


def _s3(n: int) -> int:
    return (n * (n + 1) // 2) ** 2


def _s4(n: int) -> int:
    return n * (n + 1) * (2 * n + 1) * (3 * n * n + 3 * n - 1) // 30


def _range_sum(prefix, a: int, b: int) -> int:
    if a < 0:
        raise ValueError("range sums start at nonnegative cuts")
    return prefix(b) - prefix(a) if b > a else 0


def sum_k_range(a: int, b: int) -> int:
    """sum of k over a < k <= b, 0 when the range is empty."""
    return _range_sum(_s1, a, b)


def sum_k3_range(a: int, b: int) -> int:
    """sum of k^3 over a < k <= b, 0 when the range is empty."""
    return _range_sum(_s3, a, b)


def sum_k4_range(a: int, b: int) -> int:
    """sum of k^4 over a < k <= b, 0 when the range is empty."""
    return _range_sum(_s4, a, b)


def block_summand(x: RationalScalar, d: int, k: int,
                  budget: PrecisionBudget = DEFAULT_BUDGET) -> Enclosure:
    """d^2 floor(x/k) + 2dx/floor(x/k) - x^2 tail(x/k), needs x/k >= 1."""
    f = Fraction(x)
    if f <= 0:
        raise ValueError("x must be positive")
    if k < 1 or k > f:
        raise ValueError("block summand needs 1 <= k <= x")
    if d < 0:
        raise ValueError("gap values are nonnegative")
    fk = f.numerator // (f.denominator * k)
    exact = d * d * fk + 2 * d * f / fk
    xx = f * f
    tail = g2_tail_real(f / k, PrecisionBudget(budget.target_width / xx))
    return Enclosure(exact - xx * tail.hi, exact - xx * tail.lo)


@dataclass(frozen=True)
class QdBlockReport:
    """Outcome of the closed-form class-d evaluation.

    cuts = (K_{d-1}, K_d, K_{d+1}); direct is the per-index exact
    value when it was computed, and matches says the closed form
    brackets it.
    """

    x: Fraction
    d: int
    value: Enclosure
    cuts: tuple[int, int, int]
    direct: Fraction | None

    @property
    def matches(self) -> bool:
        return self.direct is not None and self.value.contains(self.direct)


def qd_blocks(x: RationalScalar, d: int,
              budget: PrecisionBudget = DEFAULT_BUDGET,
              compare_direct: bool = True,
              _middle_shift: int = 0) -> QdBlockReport:
    """Evaluate Q_d(x) by the five-range closed form, d >= 1.

    Needs d + 1 <= x/2.  The result enclosure has width at most the
    budget; with compare_direct the exact per-index value is computed
    too (O(sqrt x) extra).  _middle_shift displaces the middle summand
    range and exists so tests can prove the range endpoints matter;
    leave it at 0.
    """
    f = Fraction(x)
    if d < 1:
        raise ValueError("closed form covers d >= 1; use q0_blocks for d = 0")
    if 2 * (d + 1) > f:
        raise ValueError("closed form needs d + 1 <= x/2")
    km = cut_point(f, d - 1)
    k0 = cut_point(f, d)
    kp = cut_point(f, d + 1)
    summand_ranges = (
        ("center", (k0 - d, k0), 2),
        ("upper", (kp - d - 1 + _middle_shift, kp + _middle_shift), -1),
        ("lower", (km - d + 1, km), -1),
    )
    square_ranges = (
        ("between upper", (k0, kp), -1),
        ("between lower", (km, k0), 1),
    )
    # All accumulation happens on a power-of-ten grid: every term is
    # outward-rounded to integer units first, so denominators never
    # compound across the sum.  Budget: a quarter on the summand
    # tails, a quarter on summand rounding, a quarter on square-term
    # rounding; ranges sized by |coefficient| times length.
    w = budget.target_width
    evals = sum(abs(c) * max(0, b - a) for _, (a, b), c in summand_ranges)
    per = PrecisionBudget(w / (4 * max(1, evals)))
    s_scale = scale_for(w / 4, units=max(1, evals))
    lo_units = 0
    hi_units = 0
    for name, (a, b), coef in summand_ranges:
        if b > a and a < 0:
            raise ValueError(f"summand range '{name}' reaches k = {a + 1} < 1")
        for k in range(a + 1, b + 1):
            enc = block_summand(f, d, k, per)
            lo_g = (enc.lo.numerator * s_scale) // enc.lo.denominator
            hi_g = -((-enc.hi.numerator * s_scale) // enc.hi.denominator)
            if coef > 0:
                lo_units += coef * lo_g
                hi_units += coef * hi_g
            else:
                lo_units += coef * hi_g
                hi_units += coef * lo_g
    sq_len = sum(max(0, b - a) for _, (a, b), c in square_ranges)
    q_scale = scale_for(w / 4, units=max(1, sq_len))
    sq_lo = 0
    sq_hi = 0
    p, q = f.numerator, f.denominator
    for name, (a, b), coef in square_ranges:
        if b > a and a < 0:
            raise ValueError(f"square range '{name}' reaches k = {a + 1} < 1")
        for k in range(a + 1, b + 1):
            # (d - x jump_weight(x/k))^2 with m = floor(x/k), exact
            # numerator/denominator, floored onto the grid
            m = p // (q * k)
            den = q * m * (m + 1)
            num = d * den - p
            u = num * num * q_scale // (den * den)
            if coef > 0:
                sq_lo += u
                sq_hi += u + 1
            else:
                sq_lo -= u + 1
                sq_hi -= u
    value = Enclosure(Fraction(lo_units, s_scale) + Fraction(sq_lo, q_scale),
                      Fraction(hi_units, s_scale) + Fraction(sq_hi, q_scale))
    direct = q_d_direct(f, d) if compare_direct else None
    return QdBlockReport(f, d, value, (km, k0, kp), direct)


def q0_blocks(x: RationalScalar,
              budget: PrecisionBudget = DEFAULT_BUDGET) -> Enclosure:
    """Certified enclosure of Q_0(x) in O(sqrt x) operations."""
    f = Fraction(x)
    if f <= 0:
        raise ValueError("x must be positive")
    p, q = f.numerator, f.denominator
    cut = q0_block_cut(f)
    xx = f * f
    half = budget.target_width / 2
    top = p // (q * (cut + 1)) + 1
    whole = g2_tail(top, PrecisionBudget(half / xx))
    lo = xx * whole.lo
    hi = xx * whole.hi
    if cut:
        # subtract the block ends floor(x/v), v = 1..cut, scaled integers
        scale = scale_for(half, units=cut)
        pp = p * p * scale
        qq = q * q
        acc = 0
        for v in range(1, cut + 1):
            mv = p // (q * v)
            acc += pp // (qq * (mv * (mv + 1)) ** 2)
        lo -= Fraction(acc + cut, scale)
        hi -= Fraction(acc, scale)
    return Enclosure(max(Fraction(0), lo), hi)


@dataclass(frozen=True)
class ResidualReport:
    """actual - main compared against an error envelope.

    ratio_hi is a certified upper estimate of |actual - main| divided
    by the envelope; watching it stay bounded (and drift slowly in x)
    is the empirical check that the envelope has the right shape.
    """

    name: str
    x: Fraction
    d: int | None
    k: int | None
    actual: Enclosure
    main: Enclosure
    residual: Enclosure
    bound: Enclosure

    @property
    def ratio_hi(self) -> Fraction:
        if self.bound.lo <= 0:
            raise ValueError("error envelope enclosure touches zero; "
                             "tighten the budget")
        r = self.residual.abs()
        return r.hi / self.bound.lo


def _need_d(d: int | None, low: int = 1) -> int:
    if d is None or d < low:
        raise ValueError(f"this residual needs d >= {low}")
    return d


def _r_cut_point(f, d, k, b):
    d = _need_d(d, 0)
    actual = Enclosure.point(Fraction(cut_point(f, d)))
    main = sqrt_enclosure(d * f, b).shift(Fraction(d, 2))
    bound = sqrt_enclosure(Fraction(d**3) / f, b).shift(1)
    return actual, main, bound


def _r_cut_window_k1(f, d, k, b):
    d = _need_d(d)
    k0 = cut_point(f, d)
    actual = Enclosure.point(Fraction(sum_k_range(k0 - d, k0)))
    main = sqrt_enclosure(d * f, b).scale(d)
    bound = sqrt_enclosure(Fraction(d**5) / f, b).shift(d)
    return actual, main, bound


def _r_cut_window_k3(f, d, k, b):
    d = _need_d(d)
    k0 = cut_point(f, d)
    actual = Enclosure.point(Fraction(sum_k3_range(k0 - d, k0)))
    main = sqrt_enclosure(d * f, b).scale(d * d * f)
    bound = sqrt_enclosure(Fraction(d**7) * f, b).shift(d * d * f)
    return actual, main, bound


def _r_between_cuts_k4(f, d, k, b):
    d = _need_d(d, 0)
    lo_cut = cut_point(f, d)
    hi_cut = cut_point(f, d + 1)
    actual = Enclosure.point(Fraction(sum_k4_range(lo_cut, hi_cut)))
    x5 = f**5
    main = (sqrt_enclosure((d + 1) * x5, b).scale(Fraction((d + 1) ** 2, 5))
            - sqrt_enclosure(d * x5, b).scale(Fraction(d * d, 5)))
    bound = Enclosure.point(Fraction((d + 1) ** 2) * f * f)
    return actual, main, bound


def _r_tail_series(f, d, k, b):
    if f < 1:
        raise ValueError("tail comparison needs t >= 1")
    actual = g2_tail_real(f, b)
    m = f.numerator // f.denominator
    main = Enclosure.point(Fraction(1, 3 * m**3))
    bound = Enclosure.point(f**-5)
    return actual, main, bound


def _r_summand_main(f, d, k, b):
    d = _need_d(d)
    k0 = cut_point(f, d)
    if k is None or not k0 - d < k <= k0:
        raise ValueError("summand comparison needs k in the center range")
    actual = block_summand(f, d, k, b)
    main = sqrt_enclosure(d * f, b).scale(2 * d).shift(k * d - Fraction(k**3, 3) / f)
    bound = sqrt_enclosure(Fraction(d**5) / f, b)
    return actual, main, bound


def _window_actual(f, d, a, co, b):
    if co <= a:
        return Enclosure.point(Fraction(0))
    per = PrecisionBudget(b.target_width / (co - a))
    total = Enclosure.point(Fraction(0))
    for k in range(a + 1, co + 1):
        total = total + block_summand(f, d, k, per)
    return total


def _r_window_sum_center(f, d, k, b):
    d = _need_d(d)
    k0 = cut_point(f, d)
    actual = _window_actual(f, d, k0 - d, k0, b)
    main = sqrt_enclosure(d * f, b).scale(Fraction(8 * d * d, 3))
    bound = sqrt_enclosure(Fraction(d**7) / f, b).shift(d * d)
    return actual, main, bound


def _r_window_sum_upper(f, d, k, b):
    d = _need_d(d)
    if 2 * (d + 1) > f:
        raise ValueError("upper window needs d + 1 <= x/2")
    kp = cut_point(f, d + 1)
    actual = _window_actual(f, d, kp - d - 1, kp, b)
    main = sqrt_enclosure((d + 1) * f, b).scale(Fraction(8 * d * d + 4 * d - 1, 3))
    bound = sqrt_enclosure(Fraction(d**7) / f, b).shift(d * d)
    return actual, main, bound


def _r_window_sum_lower(f, d, k, b):
    d = _need_d(d)
    if 2 * (d - 1) > f:
        raise ValueError("lower window needs d - 1 <= x/2")
    km = cut_point(f, d - 1)
    actual = _window_actual(f, d, km - d + 1, km, b)
    main = sqrt_enclosure((d - 1) * f, b).scale(Fraction(8 * d * d - 4 * d - 1, 3))
    bound = sqrt_enclosure(Fraction(d**7) / f, b).shift(d * d)
    return actual, main, bound


def _r_q0_mean(f, d, k, b):
    actual = q0_blocks(f, b)
    main = sqrt_enclosure(f, b).scale(Fraction(2, 15))
    bound = Enclosure.point(Fraction(1))
    return actual, main, bound


_RESIDUALS = {
    "cut_point": _r_cut_point,
    "cut_window_k1": _r_cut_window_k1,
    "cut_window_k3": _r_cut_window_k3,
    "between_cuts_k4": _r_between_cuts_k4,
    "tail_series": _r_tail_series,
    "summand_main": _r_summand_main,
    "window_sum_center": _r_window_sum_center,
    "window_sum_upper": _r_window_sum_upper,
    "window_sum_lower": _r_window_sum_lower,
    "q0_mean": _r_q0_mean,
}

RESIDUAL_NAMES = tuple(_RESIDUALS)


def residual_report(name: str, x: RationalScalar, d: int | None = None,
                    k: int | None = None,
                    budget: PrecisionBudget = DEFAULT_BUDGET) -> ResidualReport:
    """Compare one of the named quantities against its main term.

    Returns enclosures for the actual value, the main term, their
    difference, and the error envelope the difference is expected to
    respect up to a bounded constant.
    """
    try:
        builder = _RESIDUALS[name]
    except KeyError:
        raise ValueError(f"unknown residual {name!r}; "
                         f"choose from {', '.join(RESIDUAL_NAMES)}") from None
    f = Fraction(x)
    if f <= 0:
        raise ValueError("x must be positive")
    b = PrecisionBudget(budget.target_width / 4)
    actual, main, bound = builder(f, d, k, b)
    return ResidualReport(name, f, d, k, actual, main, actual - main, bound)
