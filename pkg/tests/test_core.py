from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from multicurves.core import PolarPoint, SimplexPoint, SurfaceType, in_cone, polar


class TestSurfaceType:
    def test_torus_with_boundary(self):
        s = SurfaceType(1, 1)
        assert s.complexity == 2
        assert s.pants_count == 1

    def test_genus_two(self):
        assert SurfaceType(2, 0).complexity == 6

    def test_twice_holed_torus(self):
        assert SurfaceType(1, 2).pants_count == 2

    @given(st.integers(0, 20), st.integers(0, 20))
    def test_complexity_is_twice_pants_count(self, g, r):
        if 2 * g + r < 3:
            with pytest.raises(ValueError):
                SurfaceType(g, r)
        else:
            s = SurfaceType(g, r)
            assert s.complexity == 2 * s.pants_count >= 0

    def test_rejects_simple_surfaces(self):
        for g, r in [(0, 0), (0, 2), (1, 0)]:
            with pytest.raises(ValueError):
                SurfaceType(g, r)


class TestSimplexPoint:
    def test_valid(self):
        p = SimplexPoint((Fraction(1, 3), Fraction(2, 3)))
        assert p.dimension == 2
        assert p[1] == Fraction(2, 3)

    def test_rejects_bad_sum(self):
        with pytest.raises(ValueError):
            SimplexPoint((0.5, 0.6))

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            SimplexPoint((1.5, -0.5))

    def test_float_roundoff_tolerated(self):
        x = 0.1 + 0.2  # 0.30000000000000004
        SimplexPoint((x, 1.0 - x))


class TestPolar:
    def test_symmetric_pair(self):
        p = polar((1, 1))
        assert p.direction.coords == (Fraction(1, 2), Fraction(1, 2))
        assert p.radius == 2

    def test_boundary_direction(self):
        p = polar((3, 0))
        assert p.direction.coords == (1, 0)
        assert p.radius == 3

    def test_three_coordinates(self):
        p = polar((1, 2, 3))
        assert p.direction.coords == (Fraction(1, 6), Fraction(2, 6), Fraction(3, 6))
        assert p.radius == 6

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            polar((0, 0))

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            polar((1, -1))

    @given(st.lists(st.fractions(min_value=0, max_value=1000), min_size=1, max_size=5))
    def test_roundtrip_exact(self, coords):
        if sum(coords) == 0:
            return
        p = polar(tuple(coords))
        rebuilt = tuple(p.radius * d for d in p.direction.coords)
        assert rebuilt == tuple(coords)

    @given(
        st.lists(st.fractions(min_value=0, max_value=100), min_size=1, max_size=4),
        st.fractions(min_value=Fraction(1, 100), max_value=100),
    )
    def test_direction_scale_invariant(self, coords, t):
        if sum(coords) == 0:
            return
        scaled = tuple(t * c for c in coords)
        assert polar(scaled).direction == polar(tuple(coords)).direction

    def test_radius_validation(self):
        with pytest.raises(ValueError):
            PolarPoint(SimplexPoint((1,)), -1)


class TestInCone:
    def test_whole_simplex(self):
        everything = lambda u: True
        assert in_cone(everything, (0.3, 0.3))
        assert not in_cone(everything, (0.8, 0.8))

    def test_half_simplex(self):
        upper = lambda u: u[0] > Fraction(1, 2)
        assert in_cone(upper, (Fraction(2, 10), Fraction(1, 10)))
        assert not in_cone(upper, (Fraction(1, 10), Fraction(2, 10)))

    def test_origin_convention(self):
        assert in_cone(lambda u: False, (0, 0))

    def test_boundary_radius(self):
        assert in_cone(lambda u: True, (Fraction(1, 2), Fraction(1, 2)))
