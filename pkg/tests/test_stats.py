import math
from dataclasses import dataclass

import numpy as np
import pytest
from hypothesis import given, strategies as st

from multicurves import stats
from multicurves.orbits import OrbitQuery, enumerate_orbit
from multicurves.stats import (
    EmpiricalCDF,
    SimplexHistogram,
    ks_statistic,
    ks_two_sample,
    merge,
    record_lengths,
    record_ratios,
)
from multicurves.torus import (
    ALPHA_BETA,
    CurveClass,
    KMulticurve,
    LengthFunctional,
)

FLAT = LengthFunctional.flat()

floats_list = st.lists(
    st.floats(min_value=0, max_value=1, allow_nan=False), min_size=0, max_size=30
)


@dataclass
class StubStream:
    """Minimal in-memory stream for unit-testing the recorders."""

    query: OrbitQuery
    elements: tuple
    has_chunks: bool = False

    def iter_multicurves(self):
        return iter(self.elements)


class TestEmpiricalCDF:
    def test_evaluate(self):
        e = EmpiricalCDF([0.25, 0.75])
        assert e.evaluate(0.1) == 0.0
        assert e.evaluate(0.25) == 0.5
        assert e.evaluate(0.5) == 0.5
        assert e.evaluate(1.0) == 1.0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            EmpiricalCDF().evaluate(0.5)

    @given(floats_list, floats_list)
    def test_merge_commutes(self, a, b):
        if not a and not b:
            return
        ab = merge(EmpiricalCDF(a), EmpiricalCDF(b))
        ba = merge(EmpiricalCDF(b), EmpiricalCDF(a))
        assert np.array_equal(ab.values, ba.values)
        assert ab.count == ba.count

    @given(floats_list, floats_list, floats_list)
    def test_merge_associates(self, a, b, c):
        e1 = merge(merge(EmpiricalCDF(a), EmpiricalCDF(b)), EmpiricalCDF(c))
        e2 = merge(EmpiricalCDF(a), merge(EmpiricalCDF(b), EmpiricalCDF(c)))
        assert np.array_equal(e1.values, e2.values)

    def test_merge_identity(self):
        e = EmpiricalCDF([0.5, 0.1])
        merged = merge(e, EmpiricalCDF())
        assert np.array_equal(merged.values, e.values)

    def test_sketch_compression(self, monkeypatch):
        monkeypatch.setattr(stats, "SKETCH_THRESHOLD", 1000)
        monkeypatch.setattr(stats, "SKETCH_SIZE", 128)
        rng = np.random.default_rng(0)
        e = EmpiricalCDF(rng.random(5000))
        assert not e.is_exact
        assert e.count == 5000
        assert len(e.values) == 128
        for t in (0.1, 0.5, 0.9):
            assert abs(e.evaluate(t) - t) < 0.05
        merged = merge(e, EmpiricalCDF([0.5]))
        assert merged.count == 5001


class TestSimplexHistogram:
    def test_record_and_total(self):
        h = SimplexHistogram(2, 4)
        h.record(np.array([[0.1, 0.9], [0.6, 0.4], [1.0, 0.0]]))
        assert h.total == 3
        assert h.counts[(0, 3)] == 1
        assert h.counts[(2, 1)] == 1
        assert h.counts[(3, 0)] == 1  # x = 1 clipped into the last cell

    def test_merge_monoid(self):
        a = SimplexHistogram(2, 4).record(np.array([[0.1, 0.9]]))
        b = SimplexHistogram(2, 4).record(np.array([[0.6, 0.4]]))
        c = SimplexHistogram(2, 4).record(np.array([[0.6, 0.4]]))
        assert merge(a, b).counts == merge(b, a).counts
        assert merge(merge(a, b), c).counts == merge(a, merge(b, c)).counts
        assert merge(a, SimplexHistogram(2, 4)).counts == a.counts

    def test_merge_rejects_mismatch(self):
        with pytest.raises(ValueError):
            merge(SimplexHistogram(2, 4), SimplexHistogram(2, 8))

    def test_rows_sorted(self):
        h = SimplexHistogram(2, 4).record(np.array([[0.6, 0.4], [0.1, 0.9]]))
        rows = list(h.rows())
        assert rows == sorted(rows)

    def test_marginal(self):
        h = SimplexHistogram(2, 2).record(np.array([[0.1, 0.9], [0.9, 0.1]]))
        m = h.marginal_ecdf(0)
        assert m.count == 2
        assert np.array_equal(m.values, [0.0, 0.5])


class TestKS:
    def test_single_sample(self):
        assert ks_statistic(EmpiricalCDF([0.5]), lambda t: np.clip(t, 0, 1)) == 0.5

    def test_two_samples(self):
        got = ks_statistic(EmpiricalCDF([0.25, 0.75]), lambda t: np.clip(t, 0, 1))
        assert got == 0.25

    def test_model_quantiles_give_near_zero(self):
        n = 10_000
        samples = (np.arange(n) + 0.5) / n
        got = ks_statistic(EmpiricalCDF(samples), lambda t: np.clip(t, 0, 1))
        assert got <= 1 / n

    def test_matches_scipy(self):
        from scipy import stats as sps

        rng = np.random.default_rng(7)
        samples = rng.random(500) ** 2
        ours = ks_statistic(EmpiricalCDF(samples), lambda t: np.clip(t, 0, 1))
        theirs = sps.kstest(samples, "uniform").statistic
        assert ours == pytest.approx(theirs, abs=1e-12)

    def test_two_sample(self):
        a = EmpiricalCDF([0.1, 0.2, 0.3])
        assert ks_two_sample(a, a) == 0.0
        b = EmpiricalCDF([10.0, 11.0])
        assert ks_two_sample(a, b) == 1.0

    def test_two_sample_matches_scipy(self):
        from scipy import stats as sps

        rng = np.random.default_rng(3)
        a = rng.random(400)
        b = rng.random(300) ** 1.5
        ours = ks_two_sample(EmpiricalCDF(a), EmpiricalCDF(b))
        theirs = sps.ks_2samp(a, b, method="asymp").statistic
        assert ours == pytest.approx(theirs, abs=1e-12)


class TestRecordLengths:
    def test_single_element_stub(self):
        query = OrbitQuery(ALPHA_BETA, 2)
        stream = StubStream(query, (KMulticurve.standard_pair(),))
        rec = record_lengths(stream)
        assert rec.fractions.count == 1
        assert np.array_equal(rec.fractions.values, [0.5])
        assert np.array_equal(rec.radii.values, [1.0])  # total 2 over L = 2
        assert rec.directions.total == 1

    def test_small_ball(self):
        stream = enumerate_orbit(OrbitQuery(ALPHA_BETA, 3))
        rec = record_lengths(stream)
        assert rec.fractions.count == 10
        # fractions over the ten elements: 1/2 twice, 1/3 and 2/3 four each
        vals = sorted(rec.fractions.values)
        expected = sorted([0.5, 0.5] + [1 / 3] * 4 + [2 / 3] * 4)
        assert np.allclose(vals, expected)

    def test_count_matches_stream(self):
        stream = enumerate_orbit(OrbitQuery(ALPHA_BETA, 30))
        rec = record_lengths(stream)
        assert rec.fractions.count == enumerate_orbit(OrbitQuery(ALPHA_BETA, 30)).count()

    def test_partitioned_identical(self):
        rec1 = record_lengths(enumerate_orbit(OrbitQuery(ALPHA_BETA, 25)))
        rec3 = record_lengths(enumerate_orbit(OrbitQuery(ALPHA_BETA, 25), partitions=3))
        assert rec1.directions.counts == rec3.directions.counts
        assert np.array_equal(rec1.fractions.values, rec3.fractions.values)
        assert np.array_equal(rec1.radii.values, rec3.radii.values)

    def test_empty_stream_rejected(self):
        with pytest.raises(ValueError):
            record_lengths(enumerate_orbit(OrbitQuery(ALPHA_BETA, 1)))


class TestRecordRatios:
    def test_identical_functionals(self):
        stream = enumerate_orbit(OrbitQuery(ALPHA_BETA, 10))
        (r1, r2), gaps = record_ratios(stream, ALPHA_BETA)
        assert np.all(r1.values == 1.0)
        assert np.all(r2.values == 1.0)
        assert np.all(gaps.values == 0.0)

    def test_standard_pair_flat_ratios(self):
        query = OrbitQuery(ALPHA_BETA, 2)
        stream = StubStream(query, (KMulticurve.standard_pair(),))
        (r1, r2), gaps = record_ratios(stream, FLAT)
        assert np.array_equal(r1.values, [1.0])
        assert np.array_equal(r2.values, [1.0])
        assert np.array_equal(gaps.values, [0.0])

    def test_mixed_pair_gap(self):
        gamma = KMulticurve.of_curves(CurveClass(2, 1), CurveClass(1, 1))
        stream = StubStream(OrbitQuery(ALPHA_BETA, 5), (gamma,))
        (r1, r2), gaps = record_ratios(stream, FLAT)
        assert r1.values[0] == pytest.approx(math.sqrt(5) / 3, abs=1e-15)
        assert r2.values[0] == pytest.approx(math.sqrt(2) / 2, abs=1e-15)
        expected_gap = math.sqrt(5) / 3 - math.sqrt(2) / 2  # 0.0382492...
        assert gaps.values[0] == pytest.approx(expected_gap, abs=1e-15)

    def test_chunked_equals_object_path(self):
        fast = enumerate_orbit(OrbitQuery(ALPHA_BETA, 12))
        (r1f, _), gf = record_ratios(fast, FLAT)
        slow = StubStream(
            OrbitQuery(ALPHA_BETA, 12),
            tuple(enumerate_orbit(OrbitQuery(ALPHA_BETA, 12)).iter_multicurves()),
        )
        (r1s, _), gs = record_ratios(slow, FLAT)
        assert np.allclose(np.sort(r1f.values), np.sort(r1s.values))
        assert np.allclose(np.sort(gf.values), np.sort(gs.values))

    def test_three_component_stream(self):
        gamma = KMulticurve.of_curves(CurveClass(1, 0), CurveClass(0, 1),
                                      CurveClass(1, 1))
        stream = StubStream(OrbitQuery(ALPHA_BETA, 5, gamma), (gamma,))
        marginals, gaps = record_ratios(stream, FLAT)
        assert len(marginals) == 3
        # phi values (1, 1, 2); psi values (1, 1, sqrt 2)
        assert marginals[2].values[0] == pytest.approx(math.sqrt(2) / 2)
        assert gaps.values[0] == pytest.approx(1 - math.sqrt(2) / 2)
        rec = record_lengths(stream)
        assert rec.directions.dimension == 3
        assert rec.fractions.values[0] == pytest.approx(0.25)

    def test_single_component_stream(self):
        gamma = KMulticurve.of_curves(CurveClass(2, 1))
        stream = StubStream(OrbitQuery(ALPHA_BETA, 5, gamma), (gamma,))
        marginals, gaps = record_ratios(stream, FLAT)
        assert len(marginals) == 1
        assert gaps.values[0] == 0.0
        rec = record_lengths(stream)
        assert np.array_equal(rec.fractions.values, [1.0])


class TestMergeDispatch:
    def test_type_mismatch(self):
        with pytest.raises(ValueError):
            merge(EmpiricalCDF([1.0]), SimplexHistogram(2, 4))
