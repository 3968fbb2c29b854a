import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from multicurves.exact import SqrtSum, egcd, sqrt_pair_leq


class TestEgcd:
    @given(st.integers(-10**9, 10**9), st.integers(-10**9, 10**9))
    def test_bezout(self, a, b):
        g, s, t = egcd(a, b)
        assert g == math.gcd(a, b)
        assert a * s + b * t == g

    def test_edge_cases(self):
        assert egcd(0, 1) == (1, 0, 1)
        assert egcd(1, 0)[0] == 1
        assert egcd(0, 0)[0] == 0


class TestSqrtSum:
    def test_perfect_squares_are_rational(self):
        v = SqrtSum.sqrt(25)
        assert v.is_rational
        assert v.as_fraction() == 5
        assert v == 5
        assert SqrtSum.sqrt(Fraction(9, 4)) == Fraction(3, 2)

    def test_irrational_detection(self):
        v = SqrtSum.sqrt(2)
        assert not v.is_rational
        with pytest.raises(ValueError):
            v.as_fraction()

    def test_addition_and_scaling(self):
        v = SqrtSum.sqrt(2) + SqrtSum.sqrt(8)  # sqrt 8 folds onto sqrt 2
        assert v == SqrtSum.sqrt(2) * 3
        assert float(v) == pytest.approx(3 * math.sqrt(2))
        assert (v + 1) > 3 * 1.41 * 0  # smoke: comparisons defined
        assert SqrtSum.sqrt(2, Fraction(1, 2)) * 2 == SqrtSum.sqrt(2)

    def test_compare_one_term(self):
        v = SqrtSum.sqrt(2)
        assert v < Fraction(15, 10)
        assert v > Fraction(14, 10)
        assert v <= Fraction(14142135624, 10**10)
        assert not (v <= Fraction(14142135623, 10**10))

    def test_compare_two_terms(self):
        v = SqrtSum.sqrt(2) + SqrtSum.sqrt(3)  # 3.14626...
        assert v < Fraction(31463, 10000)
        assert v > Fraction(31462, 10000)
        exact = SqrtSum.sqrt(4) + SqrtSum.sqrt(9)
        assert exact == 5
        assert exact <= 5
        assert not (exact < 5)

    def test_compare_three_terms_interval_refinement(self):
        v = SqrtSum.sqrt(2) + SqrtSum.sqrt(3) + SqrtSum.sqrt(5)  # 5.38233...
        assert v < Fraction(53824, 10000)
        assert v > Fraction(53823, 10000)

    def test_zero(self):
        assert SqrtSum() == 0
        assert SqrtSum() <= 0
        assert (SqrtSum() + 5) == 5

    @given(
        st.integers(0, 400),
        st.integers(0, 400),
        st.fractions(min_value=0, max_value=50),
    )
    def test_compare_agrees_with_floats_off_boundary(self, a, b, bound):
        v = SqrtSum.sqrt(a) + SqrtSum.sqrt(b)
        approx = math.sqrt(a) + math.sqrt(b)
        if abs(approx - float(bound)) > 1e-6:
            assert (v <= bound) == (approx <= float(bound))

    def test_structural_equality(self):
        assert SqrtSum.sqrt(2) + SqrtSum.sqrt(3) == SqrtSum.sqrt(3) + SqrtSum.sqrt(2)
        assert SqrtSum.sqrt(2) != SqrtSum.sqrt(3)
        assert SqrtSum.sqrt(12) == SqrtSum.sqrt(3) * 2


class TestSqrtPair:
    def test_exact_boundary(self):
        # sqrt(1) + sqrt(4) = 3 exactly
        assert sqrt_pair_leq(Fraction(1), Fraction(4), Fraction(3))
        assert not sqrt_pair_leq(Fraction(1), Fraction(4), Fraction(29999, 10000))

    @given(
        st.integers(0, 1000),
        st.integers(0, 1000),
        st.fractions(min_value=0, max_value=100),
    )
    def test_agrees_with_sqrtsum(self, a, b, bound):
        lhs = sqrt_pair_leq(Fraction(a), Fraction(b), bound)
        rhs = (SqrtSum.sqrt(a) + SqrtSum.sqrt(b)) <= bound
        assert lhs == rhs
