"""Covering radii of periodic lattices through Hankel matrix ranks."""

import random
from fractions import Fraction

import pytest

from fflat import (
    GF,
    ConvexBody,
    InsufficientPrecision,
    Lattice,
    LaurentSeries,
    Poly,
    QExp,
    Rat,
    covrad_bounds,
    covrad_oracle,
    covrad_periodic,
    hankel,
    make_alpha_lattice,
    parse_element,
    rank_condition,
)

F2 = GF(2)
F3 = GF(3)


class TestHankelPlacement:
    def test_simple_tail(self):
        a = parse_element(F2, "x^-1")
        assert hankel(a, 2, 2) == [[1, 0], [0, 0]]

    def test_empty_dimensions(self):
        a = parse_element(F2, "x^-1")
        assert hankel(a, 0, 2) == []
        assert hankel(a, 2, 0) == []

    def test_truncated_series_within_window(self):
        s = LaurentSeries.from_pairs(F2, {-1: 1, -2: 1, -3: 0}, -3, exact=False)
        assert hankel(s, 2, 2) == [[1, 1], [1, 0]]

    def test_truncated_series_past_window(self):
        s = LaurentSeries.from_pairs(F2, {-1: 1, -2: 1, -3: 0}, -3, exact=False)
        with pytest.raises(InsufficientPrecision) as ei:
            hankel(s, 3, 2)
        assert ei.value.needed_floor == -4

    def test_rational_input(self):
        # 1/(x^2+1) over F3 = x^-2 - x^-4 + x^-6 - ...
        a = parse_element(F3, "1/(x^2+1)")
        assert hankel(a, 3, 3) == [[0, 1, 0], [1, 0, 2], [0, 2, 0]]


class TestRankCondition:
    def test_w_pattern(self):
        lam = Lattice.standard(F2, 2)
        W = make_alpha_lattice(lam, ["x^-1", "x^-2"], 1)
        C = ConvexBody.identity(F2, 2)
        assert rank_condition(W, C, 0)
        assert rank_condition(W, C, 1)
        assert not rank_condition(W, C, 2)
        assert covrad_periodic(W) == QExp(-2)

    def test_downward_closed(self):
        rng = random.Random(3)
        lam = Lattice.standard(F2, 2)
        C = ConvexBody.identity(F2, 2)
        for _ in range(10):
            num = [rng.randrange(2) for _ in range(3)]
            if not any(num):
                num[0] = 1
            a = Rat(Poly(F2, tuple(num)), Poly.monomial(F2, 1, 4))
            S = make_alpha_lattice(lam, [a, "x^-1+x^-3"], 2)
            held = [rank_condition(S, C, l) for l in range(-1, 4)]
            # once it fails it stays failed
            for a_, b_ in zip(held, held[1:]):
                assert a_ or not b_


class TestCovradPeriodic:
    def test_alpha_zero_reduces_to_lattice(self):
        lam = Lattice.standard(F2, 2)
        Z = make_alpha_lattice(lam, ["0", "0"], 0, require_irrational=False)
        assert covrad_periodic(Z) == QExp(-1)

    def test_negative_gamma_needs_extended_scan(self):
        # spread lattice: e = [0, 3], so uncovered directions appear
        # already at ell < 0 and the scan must start below zero
        lam = Lattice(F2, [["1", "0"], ["0", "x^3"]])
        S = make_alpha_lattice(
            lam, ["0", "x^-1"], 0, require_irrational=False
        )
        assert S.period_size == 1
        got = covrad_periodic(S)
        assert got == QExp(1)
        assert got == covrad_oracle(S, M=8)

    def test_agrees_with_oracle_randomized(self):
        rng = random.Random(11)
        for field in (F2, F3):
            for d in (2, 3):
                trials = 0
                while trials < 15:
                    rows = []
                    for i in range(d):
                        row = []
                        for j in range(d):
                            if i == j:
                                k = rng.randint(-2, 2)
                                row.append(f"x^{k}" if k >= 0 else f"1/x^{-k}")
                            elif rng.random() < 0.4:
                                c = rng.randrange(1, field.q)
                                row.append(f"{c}*x" if field.q > 2 else "x")
                            else:
                                row.append("0")
                        rows.append(row)
                    try:
                        lat = Lattice(field, rows)
                    except Exception:
                        continue
                    N = rng.choice((0, 1))
                    den = Poly.monomial(field, 1, N + 2)
                    alphas = []
                    for _ in range(d):
                        cs = tuple(rng.randrange(field.q) for _ in range(N + 2))
                        alphas.append(Rat(Poly(field, cs), den))
                    S = make_alpha_lattice(
                        lat, alphas, N, require_irrational=False
                    )
                    assert covrad_periodic(S) == covrad_oracle(S, M=12)
                    trials += 1


class TestCoefficientLocality:
    def test_truncation_below_needed_depth_is_invisible(self):
        lam = Lattice.standard(F2, 2)
        exact = make_alpha_lattice(lam, ["x^-1", "x^-2"], 1)
        a1 = LaurentSeries.from_pairs(F2, {-1: 1}, -3, exact=False)
        a2 = LaurentSeries.from_pairs(F2, {-2: 1}, -3, exact=False)
        trunc = make_alpha_lattice(lam, [a1, a2], 1)
        assert covrad_periodic(trunc) == covrad_periodic(exact)

    def test_truncation_above_needed_depth_is_refused(self):
        lam = Lattice.standard(F2, 2)
        a1 = LaurentSeries.from_pairs(F2, {-1: 1}, -2, exact=False)
        a2 = LaurentSeries.from_pairs(F2, {-2: 1}, -2, exact=False)
        trunc = make_alpha_lattice(lam, [a1, a2], 1)
        with pytest.raises(InsufficientPrecision):
            covrad_periodic(trunc)

    def test_deep_perturbation_is_invisible(self):
        lam = Lattice.standard(F2, 2)
        base = make_alpha_lattice(lam, ["x^-1", "x^-2"], 1)
        # perturb far below the scan depth; same N, same result
        a1 = LaurentSeries.from_pairs(F2, {-1: 1, -9: 1}, -9, exact=True)
        a2 = LaurentSeries.from_pairs(F2, {-2: 1, -8: 1}, -9, exact=True)
        pert = make_alpha_lattice(lam, [a1, a2], 1)
        assert covrad_periodic(pert) == covrad_periodic(base)


class TestCovradBounds:
    def test_standard_lattice_values(self):
        lam = Lattice.standard(F2, 2)
        lo, hi = covrad_bounds(lam, 1)
        assert lo == Fraction(-3) and hi == QExp(-1)
        lo0, hi0 = covrad_bounds(lam, 0)
        assert lo0 == Fraction(-2) and hi0 == QExp(-1)

    def test_f3_dimension_three(self):
        lam = Lattice.standard(F3, 3)
        lo, hi = covrad_bounds(lam, 0)
        assert lo == Fraction(-2) and hi == QExp(-1)

    def test_sandwich_on_instances(self):
        lam = Lattice.standard(F2, 2)
        W = make_alpha_lattice(lam, ["x^-1", "x^-2"], 1)
        lo, hi = covrad_bounds(lam, 1)
        got = covrad_periodic(W)
        assert lo <= Fraction(got.exp) and got.exp <= hi.exp
