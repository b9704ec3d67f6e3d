"""Cut points, power sums, and the closed forms built from them."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qtv.blocks import (RESIDUAL_NAMES, block_summand, cut_point,
                        q0_block_cut, q0_blocks, qd_blocks, residual_report,
                        sum_k3_range, sum_k4_range, sum_k_range)
from qtv.interval import PrecisionBudget
from qtv.oracle import q0_direct, q_d_direct


def brute_cut(x, d):
    k = 0
    while (k + 1) * (k + 1 - d) <= d * x:
        k += 1
    return k


@given(st.fractions(min_value=1, max_value=10**4), st.integers(0, 40))
@settings(max_examples=120, deadline=None)
def test_cut_point_matches_brute_force(x, d):
    if d > x:
        with pytest.raises(ValueError):
            cut_point(x, d)
        return
    assert cut_point(x, d) == brute_cut(x, d)


def test_cut_point_zero_class_is_zero():
    assert cut_point(Fraction(1000), 0) == 0


@given(st.fractions(min_value=Fraction(1, 2), max_value=10**6))
@settings(max_examples=80, deadline=None)
def test_zero_gap_cut_definition(x):
    k = q0_block_cut(x)
    assert k * (k + 1) <= x
    assert (k + 1) * (k + 2) > x


@given(st.integers(0, 500), st.integers(0, 500))
@settings(max_examples=60, deadline=None)
def test_power_sums_match_loops(a, b):
    assert sum_k_range(a, b) == sum(range(a + 1, b + 1))
    assert sum_k3_range(a, b) == sum(k**3 for k in range(a + 1, b + 1))
    assert sum_k4_range(a, b) == sum(k**4 for k in range(a + 1, b + 1))


def test_block_summand_contains_true_value():
    b = PrecisionBudget(Fraction(1, 10**12))
    x = Fraction(997)
    for d in (1, 3, 7):
        k0 = cut_point(x, d)
        for k in (max(1, k0 - d + 1), k0):
            out = block_summand(x, d, k, b)
            # true summand: d^2 floor(x/k) + 2 d x / floor(x/k)
            #               - x^2 * tail, tail strictly positive
            fk = int(x / k)
            upper = Fraction(d * d) * fk + Fraction(2 * d) * x / fk
            assert out.hi <= upper
            assert out.lo >= upper - x * x * Fraction(2, int(x / k) ** 3)


def test_closed_form_brackets_exact_class_totals():
    b = PrecisionBudget(Fraction(1, 10**9))
    for x in (Fraction(997), Fraction(300), Fraction(10**4) + Fraction(1, 3)):
        for d in (1, 2, 5, 11):
            if 2 * (d + 1) > x:
                continue
            rep = qd_blocks(x, d, b)
            assert rep.direct is not None
            assert rep.matches
            assert rep.value.contains(q_d_direct(x, d))
            assert rep.value.width <= Fraction(1, 10**9)


def test_closed_form_middle_shift_breaks_containment():
    b = PrecisionBudget(Fraction(1, 10**9))
    x = Fraction(997)
    hits = 0
    for d in (2, 3, 5):
        exact = q_d_direct(x, d)
        for shift in (-1, 1):
            rep = qd_blocks(x, d, b, compare_direct=False,
                            _middle_shift=shift)
            if not rep.value.contains(exact):
                hits += 1
    assert hits >= 5  # a one-index corruption must be loudly visible


def test_zero_gap_formula_matches_subtraction():
    b = PrecisionBudget(Fraction(1, 10**10))
    rng = random.Random(1729)
    cases = [Fraction(2), Fraction(5, 2), Fraction(10), Fraction(997)]
    cases += [Fraction(rng.randrange(6, 1500), rng.choice([1, 2, 3]))
              for _ in range(12)]
    for x in cases:
        formula = q0_blocks(x, b)
        direct = q0_direct(x, b)
        assert formula.intersects(direct), x
        assert formula.width <= Fraction(1, 10**10)


def test_qd_blocks_validates_arguments():
    with pytest.raises(ValueError):
        qd_blocks(Fraction(10), 0, PrecisionBudget(Fraction(1, 100)))
    with pytest.raises(ValueError):
        qd_blocks(Fraction(10), 5, PrecisionBudget(Fraction(1, 100)))


def test_residual_reports_have_positive_envelopes():
    b = PrecisionBudget(Fraction(1, 10**12))
    x = Fraction(10**4)
    for name in RESIDUAL_NAMES:
        if name == "tail_series":
            rep = residual_report(name, Fraction(10), budget=b)
        elif name == "q0_mean":
            rep = residual_report(name, x, budget=b)
        elif name == "summand_main":
            rep = residual_report(name, x, d=3, k=cut_point(x, 3), budget=b)
        else:
            rep = residual_report(name, x, d=3, budget=b)
        assert rep.bound.lo > 0
        assert rep.ratio_hi >= 0
        assert rep.residual.lo <= (rep.actual - rep.main).midpoint <= rep.residual.hi


def test_residual_report_rejects_unknown_name():
    with pytest.raises(ValueError):
        residual_report("no_such_lemma", Fraction(100), d=1)
