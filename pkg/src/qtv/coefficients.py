"""The per-gap amplitude coefficients and their limiting constant.

Each gap class contributes gap_coeff(d) * sqrt(x) to Q(x) up to O(d^2),
where 15 * gap_coeff(d) is the integer-coefficient combination

    96 d^2 sqrt(d) - (48 d^2 + 16 d - 2) sqrt(d+1)
                   - (48 d^2 - 16 d - 2) sqrt(d-1).

Regrouping by half-integer powers gives the telescoping form

    gap_coeff(d) = (16/5) (d^{5/2} - (d+1)^{5/2})
                 - (16/5) ((d-1)^{5/2} - d^{5/2})
                 + (16/3) ((d+1)^{3/2} - (d-1)^{3/2})
                 - 2 sqrt(d+1) - 2 sqrt(d-1),

whose partial sums collapse term by term:

    sum_{d<=D} gap_coeff(d) = -2/15
        - (16/5) ((D+1)^{5/2} - D^{5/2})
        + (16/3) ((D+1)^{3/2} + D^{3/2})
        - 2 ((D+1)^{1/2} - D^{1/2})
        - 4 sum_{d<=D} sqrt(d).

Expanding the powers and the square-root sum (Euler-Maclaurin, with
zeta(-1/2) = -zeta(3/2)/(4 pi) by the functional equation) every
growing power cancels and

    sum_{d<=D} gap_coeff(d) = -2/15 + zeta(3/2)/pi
                              - (1/6) D^{-1/2} + (1/24) D^{-3/2} + ...

so adding the 2/15 from the gap-0 class identifies the global
constant zeta(3/2)/pi of Q(x) ~ (zeta(3/2)/pi) sqrt(x).

zeta(3/2) itself is enclosed by Euler-Maclaurin at a cutoff N = m^2:
the choice of a perfect square makes every correction term an exact
rational (integral 2/m, half-term 1/(2 m^3), Bernoulli terms
B_2, B_4, B_6 against rising powers of 3/2 at m^{-5}, m^{-9}, m^{-13}),
and t^{-3/2} is completely monotone, so the remainder is within the
first omitted Bernoulli term; the bracket charges twice that,
(429/16384) m^{-17}.  pi is a hard-coded 40-digit truncation bracket,
far below every width this package hands out.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .interval import (DEFAULT_BUDGET, Enclosure, PrecisionBudget, scale_for,
                       sqrt_enclosure)
from .rational import iroot, isqrt

DEFAULT_COEFFS = (96, 48, 16, 2, 48, 16, 2)


def gap_coeff(d: int, budget: PrecisionBudget = DEFAULT_BUDGET,
              _coeffs: tuple[int, ...] = DEFAULT_COEFFS) -> Enclosure:
    """Enclosure of the sqrt(x) amplitude of gap class d >= 1.

    _coeffs holds the seven integers of the quindecuple form above and
    exists so tests can prove each one matters; leave it alone.
    """
    if d < 1:
        raise ValueError("amplitudes are defined for d >= 1")
    c0, a2, a1, a0, b2, b1, b0 = _coeffs
    wa = abs(c0) * d * d
    wb = abs(a2 * d * d + a1 * d - a0)
    wc = abs(b2 * d * d - b1 * d - b0)
    per = PrecisionBudget(budget.target_width * 15 / (wa + wb + wc + 1))
    mid = sqrt_enclosure(Fraction(d), per).scale(c0 * d * d)
    up = sqrt_enclosure(Fraction(d + 1), per).scale(a2 * d * d + a1 * d - a0)
    dn = sqrt_enclosure(Fraction(d - 1), per).scale(b2 * d * d - b1 * d - b0)
    return (mid - up - dn).scale(Fraction(1, 15))


def gap_coeff_telescoped(d: int,
                         budget: PrecisionBudget = DEFAULT_BUDGET) -> Enclosure:
    """Same amplitude through the half-integer-power regrouping.

    Written independently of gap_coeff on purpose: the two enclosures
    must always intersect, which pins the algebra of both.
    """
    if d < 1:
        raise ValueError("amplitudes are defined for d >= 1")
    per = PrecisionBudget(budget.target_width / 30)
    five = (sqrt_enclosure(Fraction(d**5), per).scale(2)
            - sqrt_enclosure(Fraction((d + 1) ** 5), per)
            - sqrt_enclosure(Fraction((d - 1) ** 5), per)).scale(Fraction(16, 5))
    three = (sqrt_enclosure(Fraction((d + 1) ** 3), per)
             - sqrt_enclosure(Fraction((d - 1) ** 3), per)).scale(Fraction(16, 3))
    ones = (sqrt_enclosure(Fraction(d + 1), per)
            + sqrt_enclosure(Fraction(d - 1), per)).scale(2)
    return five + three - ones


def sqrt_sum(limit: int, budget: PrecisionBudget = DEFAULT_BUDGET) -> Enclosure:
    """Enclosure of sum_{d=1}^{limit} sqrt(d) by one scaled isqrt per d."""
    if limit < 0:
        raise ValueError("limit must be >= 0")
    if limit == 0:
        return Enclosure.point(Fraction(0))
    scale = scale_for(budget.target_width, units=limit)
    ss = scale * scale
    acc = 0
    for d in range(1, limit + 1):
        acc += isqrt(d * ss)
    return Enclosure(Fraction(acc, scale), Fraction(acc + limit, scale))


def gap_coeff_sum(limit: int, budget: PrecisionBudget = DEFAULT_BUDGET) -> Enclosure:
    """Closed-form enclosure of sum_{d=1}^{limit} gap_coeff(d).

    Cost does not grow with limit beyond the sqrt_sum loop, so this is
    the form the fast estimator uses.  limit = 0 gives the empty sum;
    the collapsed expression lands on an exact 0 there, a handy check
    that the telescoping bookkeeping is right.
    """
    if limit < 0:
        raise ValueError("limit must be >= 0")
    return _closed_form_sum(limit, budget)


def _closed_form_sum(limit: int, budget: PrecisionBudget) -> Enclosure:
    """The telescoped partial sum: five roots and one sqrt_sum."""
    w = budget.target_width
    per = PrecisionBudget(w / 60)
    out = Enclosure.point(Fraction(-2, 15))
    out = out - (sqrt_enclosure(Fraction((limit + 1) ** 5), per)
                 - sqrt_enclosure(Fraction(limit**5), per)).scale(Fraction(16, 5))
    out = out + (sqrt_enclosure(Fraction((limit + 1) ** 3), per)
                 + sqrt_enclosure(Fraction(limit**3), per)).scale(Fraction(16, 3))
    out = out - (sqrt_enclosure(Fraction(limit + 1), per)
                 - sqrt_enclosure(Fraction(limit), per)).scale(2)
    out = out - sqrt_sum(limit, PrecisionBudget(w / 8)).scale(4)
    return out


@dataclass(frozen=True)
class CoeffPartialSum:
    """Partial sum of the amplitudes three ways.

    direct_sum adds gap_coeff(d) term by term; closed_form is the
    telescoped expression; limit_gap is closed_form minus the limit
    constant -2/15 + zeta(3/2)/pi.  The first two must intersect
    (same real number), and limit_gap * sqrt(D) should hover near
    -1/6, the leading coefficient of the convergence rate.
    """

    limit: int
    direct_sum: Enclosure
    closed_form: Enclosure
    limit_gap: Enclosure

    @property
    def identity_holds(self) -> bool:
        return self.direct_sum.intersects(self.closed_form)


def gap_coeff_partial_sum(limit: int,
                          budget: PrecisionBudget = DEFAULT_BUDGET) -> CoeffPartialSum:
    """Compare the term-by-term and telescoped partial sums up to limit."""
    if limit < 1:
        raise ValueError("partial sums need limit >= 1")
    w = budget.target_width
    per = PrecisionBudget(w / (2 * limit))
    total = Enclosure.point(Fraction(0))
    for d in range(1, limit + 1):
        total = total + gap_coeff(d, per)
    closed = _closed_form_sum(limit, PrecisionBudget(w / 2))
    lim = coeff_sum_limit(PrecisionBudget(w / 2))
    return CoeffPartialSum(limit, total, closed, closed - lim)


def zeta_3_2(budget: PrecisionBudget = DEFAULT_BUDGET) -> Enclosure:
    """Enclosure of zeta(3/2) = sum n^{-3/2}, width <= budget."""
    w = budget.target_width
    # remainder slice: (429/16384) m^-17 <= w/4
    need = -(-4 * 429 * w.denominator // (16384 * w.numerator))
    m = max(2, iroot(need, 17) + 1)
    cut = m * m
    core = (Fraction(2, m) + Fraction(1, 2 * m**3) + Fraction(1, 8 * m**5)
            - Fraction(7, 384 * m**9) + Fraction(11, 1024 * m**13))
    margin = Fraction(429, 16384 * m**17)
    # head slice: n^{-3/2} = sqrt(n)/n^2 bracketed within one grid unit
    scale = scale_for(w / 2, units=cut - 1)
    ss = scale * scale
    acc = 0
    for n in range(1, cut):
        acc += isqrt(n * ss) // (n * n)
    return Enclosure(Fraction(acc, scale) + core - margin,
                     Fraction(acc + cut - 1, scale) + core + margin)


# pi truncated after 40 digits; the true value continues 6939... so
# this pair of rationals brackets it with width 1e-40
_PI_LO = Fraction(31415926535897932384626433832795028841971, 10**40)


def pi_enclosure() -> Enclosure:
    """Fixed 40-digit bracket of pi, width 1e-40."""
    return Enclosure(_PI_LO, _PI_LO + Fraction(1, 10**40))


def main_constant(budget: PrecisionBudget = DEFAULT_BUDGET) -> Enclosure:
    """Enclosure of zeta(3/2)/pi, the sqrt(x) coefficient of Q(x)."""
    z = zeta_3_2(PrecisionBudget(budget.target_width * 2))
    return z / pi_enclosure()


def coeff_sum_limit(budget: PrecisionBudget = DEFAULT_BUDGET) -> Enclosure:
    """Enclosure of -2/15 + zeta(3/2)/pi, the amplitude series limit."""
    return main_constant(budget).shift(Fraction(-2, 15))


def limit_estimate(limit: int,
                   budget: PrecisionBudget = DEFAULT_BUDGET) -> Enclosure:
    """Estimate the series limit from partial sums alone.

    Richardson step on the D^{-1/2} decay: with S(D) the closed-form
    partial sum, 2 S(D) - S(D/4) cancels the leading term, leaving
    -(1/4) D^{-3/2} + O(D^{-5/2}).  The enclosure covers only the
    arithmetic, not that model error, so this is an estimator to be
    compared against coeff_sum_limit, not a certificate.
    """
    if limit < 4:
        raise ValueError("the two-point estimate needs limit >= 4")
    w = budget.target_width
    big = _closed_form_sum(limit, PrecisionBudget(w / 4))
    small = _closed_form_sum(limit // 4, PrecisionBudget(w / 2))
    return big.scale(2) - small
