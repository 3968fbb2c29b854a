import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate

from multicurves.core import SurfaceType, TORUS11
from multicurves.measures import (
    ConeMeasure,
    ConeTerm,
    RatioDistribution,
    cone_simplex_density,
    dirichlet_norm,
    eval_box,
    lattice_point_count,
    p_measure_torus_pair,
    pants_density,
    pants_simplex_density,
    pushforward,
    radial_law,
    ratio_distribution,
    thurston_volume_lattice,
    torus_pair_cone_measure,
    uniform_simplex_samples,
)
from multicurves.torus import (
    ALPHA,
    ALPHA_BETA,
    BETA,
    CurveClass,
    FillingMulticurve,
    LengthFunctional,
)

FLAT = LengthFunctional.flat()


class TestPantsDensity:
    def test_twice_holed_torus_center(self):
        # (g, r) = (1, 2): n = 2, factor 3!/sqrt(2), product 1/4
        expected = 6 / math.sqrt(2) / 4
        assert pants_density(SurfaceType(1, 2), (0.5, 0.5)) == pytest.approx(expected, abs=1e-14)

    def test_genus_two_center(self):
        expected = 120 / math.sqrt(3) / 27
        got = pants_density(SurfaceType(2, 0), (1 / 3, 1 / 3, 1 / 3))
        assert got == pytest.approx(expected, abs=1e-13)

    def test_vanishes_on_boundary(self):
        assert pants_density(SurfaceType(1, 2), (1.0, 0.0)) == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            pants_density(SurfaceType(2, 0), (0.5, 0.5))


class TestDirichletNorm:
    def test_values(self):
        assert dirichlet_norm(1) == 1.0
        assert dirichlet_norm(2) == pytest.approx(math.sqrt(2) / 6, abs=1e-16)
        assert dirichlet_norm(3) == pytest.approx(math.sqrt(3) / 120, abs=1e-16)

    def test_quadrature_oracle_n2(self):
        # integral of x(1-x) over [0,1] times the length sqrt(2) of the segment
        val, _ = integrate.quad(lambda x: x * (1 - x), 0, 1)
        assert dirichlet_norm(2) == pytest.approx(val * math.sqrt(2), rel=1e-10)

    def test_quadrature_oracle_n3(self):
        # 2-dim section: area element sqrt(3) over the projected triangle
        val, _ = integrate.dblquad(
            lambda y, x: x * y * (1 - x - y), 0, 1, 0, lambda x: 1 - x
        )
        assert dirichlet_norm(3) == pytest.approx(val * math.sqrt(3), rel=1e-9)

    def test_normalizes_pants_density(self):
        for n in range(1, 7):
            assert math.factorial(2 * n - 1) / math.sqrt(n) * dirichlet_norm(n) \
                == pytest.approx(1.0, abs=1e-12)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            dirichlet_norm(0)


def brute_lattice_count(functional, cutoff):
    count = 0
    bound = 4 * cutoff + 4
    for p in range(0, bound + 1):
        qs = range(1, bound + 1) if p == 0 else range(-bound, bound + 1)
        for q in qs:
            if functional.of_chart(p, q) <= cutoff:
                count += 1
    return count


class TestThurstonVolume:
    def test_exact_small_count(self):
        assert lattice_point_count(ALPHA_BETA, 10) == 110
        assert thurston_volume_lattice(ALPHA_BETA, 10) == pytest.approx(1.10, abs=1e-15)

    @pytest.mark.parametrize("cutoff", [1, 2, 3, 7, 11])
    def test_against_brute_scan(self, cutoff):
        assert lattice_point_count(ALPHA_BETA, cutoff) == brute_lattice_count(ALPHA_BETA, cutoff)
        assert lattice_point_count(FLAT, cutoff) == brute_lattice_count(FLAT, cutoff)

    def test_brute_scan_weighted(self):
        skew = LengthFunctional.of_intersection(
            FillingMulticurve(((CurveClass(1, 1), Fraction(1, 2)), (BETA, 2)))
        )
        for cutoff in (2, 5, 9):
            assert lattice_point_count(skew, cutoff) == brute_lattice_count(skew, cutoff)

    def test_scaling_power(self):
        # doubling the functional scales the unit-ball volume by 2^-2
        doubled = LengthFunctional.of_intersection(
            FillingMulticurve(((ALPHA, 2), (BETA, 2)))
        )
        assert thurston_volume_lattice(doubled, 10) == pytest.approx(0.30, abs=1e-15)
        a = thurston_volume_lattice(ALPHA_BETA, 1600)
        b = thurston_volume_lattice(doubled, 1600)
        assert b == pytest.approx(a / 4, abs=2e-3)

    def test_limits(self):
        assert thurston_volume_lattice(ALPHA_BETA, 4000) == pytest.approx(1.0, abs=1e-3)
        assert thurston_volume_lattice(FLAT, 2000) == pytest.approx(math.pi / 2, abs=2e-3)

    def test_rejects_bad_cutoff(self):
        with pytest.raises(ValueError):
            lattice_point_count(ALPHA_BETA, 0)


class TestConeMeasure:
    def test_torus_pair_boxes(self):
        cm = torus_pair_cone_measure()
        full = eval_box(cm, [(0, 1), (0, 1)])
        assert full.exact and full.exact_value == 2
        half = eval_box(cm, [(0, 1), (0, Fraction(1, 2))])
        assert half.exact and half.exact_value == 1
        empty = eval_box(cm, [(0, 0), (0, 1)])
        assert empty.value == 0.0

    def test_additivity_exact(self):
        cm = torus_pair_cone_measure()
        a = eval_box(cm, [(0, 1), (0, Fraction(1, 2))]).exact_value
        b = eval_box(cm, [(0, 1), (Fraction(1, 2), 1)]).exact_value
        whole = eval_box(cm, [(0, 1), (0, 1)]).exact_value
        assert a + b == whole

    def test_pushforward_identity(self):
        cm = torus_pair_cone_measure()
        same = pushforward(cm, [[1, 0], [0, 1]])
        assert eval_box(same, [(0, 1), (0, 1)]).exact_value == 2

    def test_pushforward_jacobian_scaling(self):
        cm = torus_pair_cone_measure()
        scaled = pushforward(cm, [[2, 0], [0, 2]])
        # mass of the scaled box equals the original; same box shrinks by 2^k
        assert eval_box(scaled, [(0, 2), (0, 2)]).exact_value == 2
        assert eval_box(scaled, [(0, 1), (0, 1)]).exact_value == Fraction(1, 2)

    def test_three_dimensional_exact_path(self):
        # identity map on the octant cone: plain Lebesgue in R^3
        term = ConeTerm(1, np.eye(3, dtype=int).tolist(),
                        [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        cm = ConeMeasure((term,))
        got = eval_box(cm, [(0, 1), (0, Fraction(1, 2)), (0, Fraction(1, 3))])
        assert got.exact and got.exact_value == Fraction(1, 6)
        # a skew map: pullback of [0,10]^3 meets the octant in the prism
        # {2 l1 + l2 <= 10, l2 <= 10, l3 <= 10}, volume 25 * 10
        skew = pushforward(cm, [[2, 1, 0], [0, 1, 0], [0, 0, 1]])
        whole = eval_box(skew, [(0, 10), (0, 10), (0, 10)])
        assert whole.exact
        assert whole.exact_value == 250

    def test_monte_carlo_path_with_rectangular_map(self):
        # quadrant Lebesgue pushed onto the plane z = x + y in R^3
        term = ConeTerm(1, [[1, 0], [0, 1], [1, 1]], [(1, 0), (0, 1)])
        cm = ConeMeasure((term,))
        got = eval_box(cm, [(0, 1), (0, 1), (0, 1)], samples=200_000, seed=3)
        assert not got.exact
        assert got.stderr > 0
        assert abs(got.value - 0.5) <= 3 * got.stderr

    def test_monte_carlo_determinism(self):
        term = ConeTerm(1, [[1, 0], [0, 1], [1, 1]], [(1, 0), (0, 1)])
        cm = ConeMeasure((term,))
        a = eval_box(cm, [(0, 1), (0, 1), (0, 1)], samples=50_000, seed=11)
        b = eval_box(cm, [(0, 1), (0, 1), (0, 1)], samples=50_000, seed=11)
        assert a.value == b.value

    def test_monte_carlo_box_additivity(self):
        term = ConeTerm(1, [[1, 0], [0, 1], [1, 1]], [(1, 0), (0, 1)])
        cm = ConeMeasure((term,))
        left = eval_box(cm, [(0, Fraction(1, 2)), (0, 1), (0, 1)],
                        samples=200_000, seed=9)
        right = eval_box(cm, [(Fraction(1, 2), 1), (0, 1), (0, 1)],
                         samples=200_000, seed=10)
        whole = eval_box(cm, [(0, 1), (0, 1), (0, 1)], samples=200_000, seed=11)
        se = math.sqrt(left.stderr**2 + right.stderr**2 + whole.stderr**2)
        assert abs(left.value + right.value - whole.value) <= 3 * se

    def test_rank_deficient_rejected(self):
        term = ConeTerm(1, [[1, 1], [1, 1]], [(1, 0), (0, 1)])
        cm = ConeMeasure((term,))
        with pytest.raises(ValueError):
            eval_box(cm, [(0, 1), (0, 1)])

    def test_validation(self):
        with pytest.raises(ValueError):
            ConeTerm(0, [[1, 0], [0, 1]], [(1, 0), (0, 1)])
        with pytest.raises(ValueError):
            ConeTerm(1, [[1, 0], [0, 1]], [(1, 0), (2, 0)])
        with pytest.raises(ValueError):
            ConeTerm(1, [[-1, 0], [0, 1]], [(1, 0), (0, 1)])
        with pytest.raises(ValueError):
            eval_box(torus_pair_cone_measure(), [(0, 1)])


class TestTorusPairLaw:
    def test_constant_density(self):
        law = p_measure_torus_pair()
        assert law.density((0.5, 0.5)) == pytest.approx(1 / math.sqrt(2), abs=1e-15)
        assert law.density((0.9, 0.1)) == pytest.approx(1 / math.sqrt(2), abs=1e-15)

    def test_total_mass(self):
        assert p_measure_torus_pair().total_mass() == (1.0, None)

    def test_fraction_marginal(self):
        law = p_measure_torus_pair()
        assert law.marginal_cdf(0.25) == 0.25
        assert law.marginal_cdf(-1) == 0.0
        assert law.marginal_cdf(2) == 1.0

    def test_mass_of_region(self):
        law = p_measure_torus_pair()
        est, err = law.mass(lambda u: u[0] <= 0.25, samples=200_000, seed=5)
        assert err > 0
        assert abs(est - 0.25) <= 4 * err

    def test_agrees_with_cone_engine(self):
        # dual route: the cone-measure representation gives the same density
        derived = cone_simplex_density(torus_pair_cone_measure())
        uniform = p_measure_torus_pair()
        for x in ((0.5, 0.5), (0.2, 0.8), (0.99, 0.01)):
            assert derived.density(x) == pytest.approx(uniform.density(x), abs=1e-15)

    def test_pants_density_kind_total_mass(self):
        law = pants_simplex_density(SurfaceType(1, 2))
        mass, err = law.total_mass()
        assert err is None
        assert mass == pytest.approx(1.0, abs=1e-12)


class TestRadialLaw:
    def test_torus(self):
        law = radial_law(TORUS11)
        assert law.exponent == 2
        assert law.cdf(0.5) == 0.25
        assert law.pdf(0.5) == 1.0

    def test_genus_two(self):
        assert radial_law(SurfaceType(2, 0)).cdf(0.5) == 0.5**6

    def test_cdf_endpoints(self):
        law = radial_law(TORUS11)
        assert law.cdf(1.0) == 1.0
        assert law.cdf(0.0) == 0.0
        assert float(np.trapezoid(law.pdf(np.linspace(0, 1, 100001)),
                                  dx=1e-5)) == pytest.approx(1.0, abs=1e-6)


class TestRatioDistribution:
    def test_dirac_when_equal(self):
        law = ratio_distribution(ALPHA_BETA, ALPHA_BETA, resolution=2000)
        assert law.support == (1.0, 1.0)
        assert law.atoms == ((1.0, 1.0),)
        assert law.cdf(0.999) == 0.0
        assert law.cdf(1.0) == 1.0

    def test_dirac_when_proportional(self):
        doubled = LengthFunctional.of_intersection(
            FillingMulticurve(((ALPHA, 2), (BETA, 2)))
        )
        law = ratio_distribution(doubled, ALPHA_BETA, resolution=2000)
        assert law.support == (2.0, 2.0)
        assert law.atoms == ((2.0, 1.0),)

    def test_flat_over_l1_support(self):
        law = ratio_distribution(FLAT, ALPHA_BETA)
        assert abs(law.support[0] - 1 / math.sqrt(2)) <= 1e-9
        assert abs(law.support[1] - 1.0) <= 1e-9
        assert law.atoms == ()

    def test_flat_over_l1_closed_form_cdf(self):
        # Fraction-uniform polar coordinates give ratio sqrt(u^2 + (1-u)^2)
        # with u uniform on [0, 1]; solving the quadratic, the CDF is
        # F(x) = sqrt(2 x^2 - 1) on [1/sqrt(2), 1].
        law = ratio_distribution(FLAT, ALPHA_BETA)
        for x in (0.72, 0.75, 0.8, 0.9, 0.95, 0.999):
            expected = math.sqrt(2 * x * x - 1)
            assert law.cdf(x) == pytest.approx(expected, abs=2e-4)

    def test_cdf_monotone_zero_to_one(self):
        law = ratio_distribution(FLAT, ALPHA_BETA, resolution=5000)
        grid, cdf = law.table(301)
        assert np.all(np.diff(cdf) >= 0)
        assert cdf[0] <= 1e-12
        assert cdf[-1] == pytest.approx(1.0, abs=1e-12)

    def test_resolution_refinement_stability(self):
        coarse = ratio_distribution(FLAT, ALPHA_BETA, resolution=4000)
        fine = ratio_distribution(FLAT, ALPHA_BETA, resolution=16000)
        probes = np.linspace(0.71, 0.9999, 97)
        assert np.max(np.abs(coarse.cdf(probes) - fine.cdf(probes))) <= 2e-3

    def test_reversed_ratio_support(self):
        law = ratio_distribution(ALPHA_BETA, FLAT)
        assert abs(law.support[0] - 1.0) <= 1e-9
        assert abs(law.support[1] - math.sqrt(2)) <= 1e-9

    def test_intersection_pair_support_at_breakpoints(self):
        # both piecewise linear: extremes at the part directions
        psi = LengthFunctional.of_intersection(
            FillingMulticurve(((ALPHA, 1), (BETA, 2)))
        )
        law = ratio_distribution(psi, ALPHA_BETA)
        # psi(e) = |e_y| + 2|e_x|, phi(e) = |e_y| + |e_x|: ratio is 2 at
        # (1,0), 1 at (0,1), monotone between
        assert abs(law.support[0] - 1.0) <= 1e-9
        assert abs(law.support[1] - 2.0) <= 1e-9

    def test_rejects_tiny_resolution(self):
        with pytest.raises(ValueError):
            ratio_distribution(FLAT, ALPHA_BETA, resolution=4)


class TestSampling:
    def test_deterministic(self):
        a = uniform_simplex_samples(1000, 3, seed=2)
        b = uniform_simplex_samples(1000, 3, seed=2)
        assert np.array_equal(a, b)

    def test_chunk_prefix_stability(self):
        big = uniform_simplex_samples(70_000, 2, seed=4)
        small = uniform_simplex_samples(65_536, 2, seed=4)
        assert np.array_equal(big[:65_536], small)

    def test_on_simplex(self):
        pts = uniform_simplex_samples(500, 4, seed=0)
        assert np.all(pts >= 0)
        assert np.allclose(pts.sum(axis=1), 1.0)
