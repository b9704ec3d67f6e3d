#!/usr/bin/env python3
"""The error term E(x) = Q(x) - (zeta(3/2)/pi) sqrt(x) on a grid.

Every |E| below is a certified enclosure midpoint; the last column is
the certified upper bound of |E| / x^(3/7), whose boundedness is the
empirical content of the sqrt-law error estimate.  Finishes with the
fitted log-log slope, which should land well under 3/7 = 0.4286.
"""
from fractions import Fraction

from qtv.asymptotics import fit_exponent, geometric_grid, scan
from qtv.interval import PrecisionBudget

grid = geometric_grid(100, 10**6, Fraction("2.15443469"))
result = scan([Fraction(g) for g in grid],
              PrecisionBudget(Fraction(1, 10**8)), workers=2)
assert not result.capped and not result.failures

print("%10s %14s %14s %12s" % ("x", "E(x)", "|E|/x^(3/7)", "seconds"))
for rec in result.records:
    mid = float(rec.error.midpoint)
    print("%10d %14.6f %14.6f %12.3f"
          % (int(rec.x), mid, float(rec.bound_ratio.hi), rec.seconds))
print()

fit = fit_exponent(list(result.records))
print("fitted exponent: %.4f +- %.4f  (3/7 = %.4f)"
      % (fit.slope, fit.stderr, 3 / 7))
print("largest certified ratio: %.4f" % float(fit.max_bound_ratio))
print("points used: %d, skipped (error straddles zero): %d"
      % (fit.n_points, fit.n_skipped))
