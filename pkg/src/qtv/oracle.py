"""Reference evaluation of Q(x) = sum_{n>=1} ({x/(n+1)} - {x/n})^2.

Everything else in the package is checked against this module, so it
stays as close to the definition as possible and certifies its output:
q_eval returns an enclosure whose endpoints are exact rationals that
provably bracket Q(x).

Writing {u} = u - floor(u) and gap(n) = floor(x/n) - floor(x/(n+1)),

    {x/(n+1)} - {x/n} = gap(n) - x/(n(n+1)),

so with x = p/q and m = q n (n+1) each term is the exact rational
(gap(n) m - p)^2 / m^2.  For n > x both floors vanish, gap(n) = 0,
and the term is x^2/(n(n+1))^2, which sums to the certified series
tail of tails.g2_tail.  The crossover is sharp: for x >= 1 the last
nonzero gap sits exactly at n = floor(x), because x/floor(x) >= 1 >
x/(floor(x)+1), so the head must cover n <= floor(x) and no further.

Heads are summed exactly as fractions up to EXACT_HEAD_LIMIT terms.
Past that, exact arithmetic drowns in common denominators (the reduced
denominator of the head grows like lcm(1..N)^2, which has on the order
of 0.87 N digits), so large heads switch to scaled integer sums: each
term contributes floor(term * scale) at a power-of-ten scale sized so
the N dropped sub-unit remainders stay inside the width budget.  The
reported head is then the floor sum, an exact certified lower bound,
and the rounding slack rides along in the tail bracket.

Gap values partition the index set, which is what the rest of the
package decomposes along: gap(n) = d >= 1 happens only at the final n
of each constancy block of floor(x/n), and there are O(sqrt(x)) such
blocks, enumerated by the standard divisor sweep n -> floor(x/v).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .interval import DEFAULT_BUDGET, Enclosure, PrecisionBudget, scale_for
from .rational import RationalScalar
from .tails import g2_tail

EXACT_HEAD_LIMIT = 10_000


def frac_part(r: RationalScalar) -> Fraction:
    """{r} = r - floor(r), exact."""
    f = Fraction(r)
    return f - (f.numerator // f.denominator)


def gap(x: RationalScalar, n: int) -> int:
    """floor(x/n) - floor(x/(n+1)) for x > 0, n >= 1."""
    f = Fraction(x)
    if f <= 0:
        raise ValueError("x must be positive")
    if n < 1:
        raise ValueError("index must be >= 1")
    p, q = f.numerator, f.denominator
    return p // (q * n) - p // (q * (n + 1))


def term(x: RationalScalar, n: int) -> Fraction:
    """({x/(n+1)} - {x/n})^2, straight from the definition."""
    f = Fraction(x)
    if f <= 0:
        raise ValueError("x must be positive")
    if n < 1:
        raise ValueError("index must be >= 1")
    return (frac_part(f / (n + 1)) - frac_part(f / n)) ** 2


def _tree_sum(values: list[Fraction]) -> Fraction:
    """Sum by pairwise merging to keep denominators balanced."""
    if not values:
        return Fraction(0)
    vals = values
    while len(vals) > 1:
        nxt = [vals[i] + vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


def q_head(x: RationalScalar, count: int) -> Fraction:
    """Exact sum of the first `count` terms.

    Costs exact-rational arithmetic on denominators up to
    lcm(1..count)^2; intended for count <= EXACT_HEAD_LIMIT.
    """
    f = Fraction(x)
    if f <= 0:
        raise ValueError("x must be positive")
    if count < 0:
        raise ValueError("count must be >= 0")
    p, q = f.numerator, f.denominator
    terms: list[Fraction] = []
    fprev = p // q
    qn1 = 2 * q
    m = 2 * q
    for _ in range(count):
        fcur = p // qn1
        e = (fprev - fcur) * m - p
        terms.append(Fraction(e * e, m * m))
        fprev = fcur
        m += 2 * qn1
        qn1 += q
    return _tree_sum(terms)


def _head_scaled(x: Fraction, count: int, budget: PrecisionBudget) -> tuple[int, int, int]:
    """(lo_units, hi_units, scale) bracketing the head sum of `count` terms.

    Pure integer loop: term n contributes floor(e^2 scale / m^2).  The
    floor drops under one unit per term, so hi = lo + count is a valid
    ceiling and the bracket width is exactly count/scale.
    """
    p, q = x.numerator, x.denominator
    scale = scale_for(budget.target_width, units=max(count, 1))
    acc = 0
    fprev = p // q
    qn1 = 2 * q
    m = 2 * q
    left = count
    while left:
        fcur = p // qn1
        e = (fprev - fcur) * m - p
        acc += e * e * scale // (m * m)
        fprev = fcur
        m += 2 * qn1
        qn1 += q
        left -= 1
    return acc, acc + count, scale


def tail_enclosure(x: RationalScalar, start: int, budget: PrecisionBudget) -> Enclosure:
    """Enclosure of sum_{n>=start} term(n), valid only past the floors.

    Requires start > x so every term in range is x^2/(n(n+1))^2.
    """
    f = Fraction(x)
    if f <= 0:
        raise ValueError("x must be positive")
    if start < 1 or start <= f:
        raise ValueError("tail must start strictly past x")
    xx = f * f
    inner = g2_tail(start, PrecisionBudget(budget.target_width / xx))
    scaled = inner.scale(xx)
    # the true tail is a sum of squares, so 0 is always a valid floor
    return Enclosure(max(Fraction(0), scaled.lo), scaled.hi)


@dataclass(frozen=True)
class QValue:
    """Certified value of Q(x): exact head plus bracketed tail.

    head is an exact rational lower bound for the first head_count
    terms (exact value when the head was summed as fractions, floor-sum
    otherwise); tail brackets everything past them, including any head
    rounding slack, so value = head + tail endpointwise.
    """

    x: Fraction
    value: Enclosure
    head: Fraction
    tail: Enclosure
    head_count: int

    def __post_init__(self) -> None:
        if self.head_count < 0:
            raise ValueError("head_count must be >= 0")
        if self.tail.lo < 0:
            raise ValueError("tail of squares cannot be negative")
        if (self.value.lo != self.head + self.tail.lo
                or self.value.hi != self.head + self.tail.hi):
            raise ValueError("value must equal head + tail endpointwise")


def q_eval(x: RationalScalar, budget: PrecisionBudget = DEFAULT_BUDGET) -> QValue:
    """Certified enclosure of Q(x) for rational x > 0.

    Head covers n <= floor(x) (empty for x < 1), the minimal range
    containing every nonzero gap; the remainder is the certified
    series tail.  Exact-fraction head up to EXACT_HEAD_LIMIT terms,
    scaled integer head past that.
    """
    f = Fraction(x)
    if f <= 0:
        raise ValueError("x must be positive")
    count = f.numerator // f.denominator
    start = count + 1
    if count <= EXACT_HEAD_LIMIT:
        head = q_head(f, count)
        tail = tail_enclosure(f, start, budget)
        value = Enclosure(head + tail.lo, head + tail.hi)
        return QValue(f, value, head, tail, count)
    half = budget.split(2)
    lo_units, hi_units, scale = _head_scaled(f, count, half)
    head = Fraction(lo_units, scale)
    slack = Fraction(hi_units - lo_units, scale)
    series = tail_enclosure(f, start, half)
    tail = Enclosure(series.lo, series.hi + slack)
    value = Enclosure(head + tail.lo, head + tail.hi)
    return QValue(f, value, head, tail, count)


@dataclass(frozen=True)
class GapClass:
    """Index set {n : gap(n) = d} as inclusive runs plus optional tail.

    For d >= 1 the runs are singleton block ends.  For d = 0 the runs
    are the block interiors and tail_start marks where the class
    continues forever (floor(x)+1, past every nonzero gap).
    """

    d: int
    ranges: tuple[tuple[int, int], ...]
    tail_start: int | None

    def members(self) -> Iterator[int]:
        """Finite members only, in increasing order."""
        for a, b in self.ranges:
            yield from range(a, b + 1)

    @property
    def finite_count(self) -> int:
        return sum(b - a + 1 for a, b in self.ranges)


def _blocks(x: Fraction) -> Iterator[tuple[int, int, int]]:
    """(n_start, n_end, gap at n_end) per constancy block of floor(x/n).

    Covers 1 <= n <= floor(x); the gap at each block end is >= 1 and
    every interior index has gap 0.  O(sqrt(x)) blocks.
    """
    p, q = x.numerator, x.denominator
    top = p // q
    n = 1
    while n <= top:
        v = p // (q * n)
        n_end = p // (q * v)
        yield n, n_end, v - p // (q * (n_end + 1))
        n = n_end + 1


def gap_class(x: RationalScalar, d: int) -> GapClass:
    """The index set where gap equals d, from one block sweep."""
    f = Fraction(x)
    if f <= 0:
        raise ValueError("x must be positive")
    if d < 0:
        raise ValueError("gap values are nonnegative")
    runs: list[tuple[int, int]] = []
    if d == 0:
        for n_start, n_end, _ in _blocks(f):
            if n_start < n_end:
                runs.append((n_start, n_end - 1))
        return GapClass(0, tuple(runs), f.numerator // f.denominator + 1)
    for _, n_end, jump in _blocks(f):
        if jump == d:
            runs.append((n_end, n_end))
    return GapClass(d, tuple(runs), None)


def q_values_by_gap(x: RationalScalar) -> dict[int, Fraction]:
    """{d: Q_d(x)} for every d >= 1 with a nonempty class, exact.

    One block sweep, one exact term per block end; O(sqrt(x)) terms.
    """
    f = Fraction(x)
    if f <= 0:
        raise ValueError("x must be positive")
    p, q = f.numerator, f.denominator
    parts: dict[int, list[Fraction]] = {}
    for _, n_end, jump in _blocks(f):
        m = q * n_end * (n_end + 1)
        e = jump * m - p
        parts.setdefault(jump, []).append(Fraction(e * e, m * m))
    return {d: _tree_sum(vals) for d, vals in sorted(parts.items())}


def q_d_direct(x: RationalScalar, d: int) -> Fraction:
    """Exact Q_d(x) for d >= 1 (the class is finite there)."""
    if d < 1:
        raise ValueError("finite classes have d >= 1; use q0_direct for d = 0")
    f = Fraction(x)
    cls = gap_class(f, d)
    p, q = f.numerator, f.denominator
    terms = []
    for n in cls.members():
        m = q * n * (n + 1)
        e = d * m - p
        terms.append(Fraction(e * e, m * m))
    return _tree_sum(terms)


def q0_direct(x: RationalScalar, budget: PrecisionBudget = DEFAULT_BUDGET) -> Enclosure:
    """Certified enclosure of Q_0(x), the gap-0 slice of the series.

    Computed as Q(x) minus the exact finite classes, so it inherits
    q_eval's certificate; per-index cost, reference use only.
    """
    f = Fraction(x)
    qv = q_eval(f, budget)
    finite = _tree_sum(list(q_values_by_gap(f).values()))
    return Enclosure(qv.value.lo - finite, qv.value.hi - finite)
