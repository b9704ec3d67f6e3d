"""Rational-endpoint enclosures.

An Enclosure is a closed interval [lo, hi] with exact Fraction endpoints
that is guaranteed to contain the (possibly irrational) value being
computed.  All arithmetic here is outward-exact: endpoints are computed
with exact rational operations, so no directed rounding mode is needed
and containment is preserved by construction.

Square roots and k-th roots are enclosed by one exact integer root at a
power-of-ten denominator chosen from the precision budget: for a target
width w pick S = 10^e >= 1/w, then

    lo = floor(sqrt(r) * S) / S,   hi = lo            if lo is exact,
                                        lo + 1/S      otherwise,

with lo decided by math.isqrt on floor(r * S^2).  This is the unit
integer bracket [floor(sqrt r), floor(sqrt r)+1] bisected e decimal
digits deep, collapsed into a single integer square root; the iteration
count is deterministic in the budget and the result is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .rational import RationalScalar, iroot, isqrt, parse_rational

RationalLike = Union[RationalScalar, int]

# Hard cap on the decimal scale of any single enclosure step.  Budgets
# that would need a longer denominator raise BudgetError instead of
# silently grinding on multi-megabyte integers.
MAX_SCALE_DIGITS = 100_000


def _decimal_digits(n: int) -> int:
    """Digit count of n >= 1 without int-to-str (which caps at 4300)."""
    d = max(1, n.bit_length() * 30103 // 100000)
    while 10**d <= n:
        d += 1
    while d > 1 and 10 ** (d - 1) > n:
        d -= 1
    return d


class BudgetError(RuntimeError):
    """A precision budget cannot be met within the scale cap.

    The exact requested width rides along as .requested; the message
    only sketches its magnitude, since the width's own denominator can
    be too large to print.
    """

    def __init__(self, requested: Fraction, detail: str = ""):
        self.requested = requested
        mag = (_decimal_digits(requested.denominator)
               - _decimal_digits(requested.numerator))
        msg = f"cannot reach target width (about 10^-{mag})"
        super().__init__(msg + (f": {detail}" if detail else ""))


@dataclass(frozen=True)
class PrecisionBudget:
    """Target width for one enclosure result; must be > 0."""

    target_width: RationalScalar

    def __post_init__(self) -> None:
        if self.target_width <= 0:
            raise ValueError("target width must be positive")

    @classmethod
    def parse(cls, text: str) -> "PrecisionBudget":
        return cls(parse_rational(text))

    def split(self, parts: int) -> "PrecisionBudget":
        """Budget for one of `parts` summands whose widths add up."""
        if parts < 1:
            raise ValueError("parts must be >= 1")
        return PrecisionBudget(self.target_width / parts)


DEFAULT_BUDGET = PrecisionBudget(Fraction(1, 10**9))


def scale_for(width: Fraction, units: int = 1) -> int:
    """Smallest power of ten S with units/S <= width.

    `units` is the number of terms that will each contribute at most 1/S
    of slack, so an accumulation of that many floor-rounded terms stays
    inside `width`.
    """
    if width <= 0:
        raise ValueError("width must be positive")
    if units < 1:
        units = 1
    need = (units * width.denominator + width.numerator - 1) // width.numerator
    if need <= 1:
        return 1
    if (need - 1).bit_length() > int(3.33 * MAX_SCALE_DIGITS):
        raise BudgetError(width, "scale cap exceeded")
    digits = _decimal_digits(need - 1)
    return 10**digits


def sqrt_scaled(num: int, den: int, scale: int) -> tuple[int, int]:
    """Integer endpoints of sqrt(num/den) at denominator `scale`.

    Returns (a, b) with a/scale <= sqrt(num/den) <= b/scale and b-a <= 1.
    """
    if num < 0 or den <= 0:
        raise ValueError("sqrt_scaled needs num >= 0, den > 0")
    target = num * scale * scale
    a = isqrt(target // den)
    if a * a * den == target:
        return a, a
    return a, a + 1


def root_scaled(num: int, den: int, k: int, scale: int) -> tuple[int, int]:
    """Integer endpoints of (num/den)^(1/k) at denominator `scale`."""
    if num < 0 or den <= 0:
        raise ValueError("root_scaled needs num >= 0, den > 0")
    target = num * scale**k
    a = iroot(target // den, k)
    if a**k * den == target:
        return a, a
    return a, a + 1


@dataclass(frozen=True)
class Enclosure:
    """Closed interval [lo, hi] with exact rational endpoints, lo <= hi."""

    lo: RationalScalar
    hi: RationalScalar

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"inverted enclosure [{self.lo}, {self.hi}]")

    # --- constructors -------------------------------------------------

    @classmethod
    def point(cls, value: RationalLike) -> "Enclosure":
        f = Fraction(value)
        return cls(f, f)

    @classmethod
    def from_scaled(cls, lo_units: int, hi_units: int, scale: int) -> "Enclosure":
        return cls(Fraction(lo_units, scale), Fraction(hi_units, scale))

    # --- queries ------------------------------------------------------

    @property
    def width(self) -> RationalScalar:
        return self.hi - self.lo

    @property
    def midpoint(self) -> RationalScalar:
        return (self.lo + self.hi) / 2

    def contains(self, value: RationalLike) -> bool:
        return self.lo <= value <= self.hi

    def encloses(self, other: "Enclosure") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersects(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def straddles_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    # --- arithmetic (containment-preserving) --------------------------

    def __add__(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo)

    def __mul__(self, other: "Enclosure") -> "Enclosure":
        cands = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Enclosure(min(cands), max(cands))

    def scale(self, factor: RationalLike) -> "Enclosure":
        f = Fraction(factor)
        if f >= 0:
            return Enclosure(self.lo * f, self.hi * f)
        return Enclosure(self.hi * f, self.lo * f)

    def shift(self, offset: RationalLike) -> "Enclosure":
        f = Fraction(offset)
        return Enclosure(self.lo + f, self.hi + f)

    def abs(self) -> "Enclosure":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Enclosure(Fraction(0), max(-self.lo, self.hi))

    def reciprocal(self) -> "Enclosure":
        if self.straddles_zero():
            raise ZeroDivisionError("reciprocal of an enclosure containing 0")
        return Enclosure(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other: "Enclosure") -> "Enclosure":
        return self * other.reciprocal()

    def __repr__(self) -> str:
        return f"Enclosure({self.lo}, {self.hi})"


ZERO = Enclosure(Fraction(0), Fraction(0))


# Named aliases for the arithmetic surface.
def enc_add(a: Enclosure, b: Enclosure) -> Enclosure:
    return a + b


def enc_sub(a: Enclosure, b: Enclosure) -> Enclosure:
    return a - b


def enc_mul(a: Enclosure, b: Enclosure) -> Enclosure:
    return a * b


def enc_scale(a: Enclosure, factor: RationalLike) -> Enclosure:
    return a.scale(factor)


def sqrt_enclosure(r: RationalLike, budget: PrecisionBudget = DEFAULT_BUDGET) -> Enclosure:
    """Enclosure of sqrt(r) with width <= budget.target_width."""
    f = Fraction(r)
    if f < 0:
        raise ValueError("sqrt of a negative value")
    scale = scale_for(budget.target_width)
    a, b = sqrt_scaled(f.numerator, f.denominator, scale)
    return Enclosure.from_scaled(a, b, scale)


def root_enclosure(r: RationalLike, k: int, budget: PrecisionBudget = DEFAULT_BUDGET) -> Enclosure:
    """Enclosure of r ** (1/k) with width <= budget.target_width."""
    f = Fraction(r)
    if f < 0:
        raise ValueError("root of a negative value")
    if k < 1:
        raise ValueError("root order must be >= 1")
    scale = scale_for(budget.target_width)
    a, b = root_scaled(f.numerator, f.denominator, k, scale)
    return Enclosure.from_scaled(a, b, scale)


def pow_enclosure(
    r: RationalLike, num: int, den: int, budget: PrecisionBudget = DEFAULT_BUDGET
) -> Enclosure:
    """Enclosure of r ** (num/den) for r >= 0, num >= 0, den >= 1.

    Exact integer power first, then one k-th root at budget scale.
    """
    f = Fraction(r)
    if num < 0:
        raise ValueError("negative exponents not supported")
    return root_enclosure(f**num, den, budget)
