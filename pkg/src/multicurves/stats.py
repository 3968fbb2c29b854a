"""Streaming empirical distributions over orbit enumerations.

Accumulators are mergeable (commutative monoid with the empty accumulator
as identity): each worker can own a private one, merged once at the end.
Kolmogorov-Smirnov distances against the closed-form limit laws are the
package's quantitative proxy for the weak convergence statements it tests;
the tolerances live in the acceptance suite, they are empirical gates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .torus import LengthFunctional

SKETCH_THRESHOLD = 10_000_000
SKETCH_SIZE = 1 << 16


class EmpiricalCDF:
    """Empirical distribution of float samples.

    Exact (all samples kept, sorted) below SKETCH_THRESHOLD observations;
    beyond that, compressed to a deterministic fixed-size quantile sketch
    (equal-weight order statistics), which keeps merging cheap and memory
    bounded at the cost of approximation.
    """

    def __init__(self, samples=None):
        self.count = 0
        self._values = np.empty(0, dtype=np.float64)
        self._compressed = False
        if samples is not None:
            self.add(samples)

    def add(self, samples) -> "EmpiricalCDF":
        arr = np.asarray(samples, dtype=np.float64).ravel()
        if arr.size == 0:
            return self
        self.count += int(arr.size)
        self._values = np.sort(np.concatenate([self._values, arr]))
        self._maybe_compress()
        return self

    def _maybe_compress(self):
        if self._values.size > SKETCH_THRESHOLD:
            qs = (np.arange(SKETCH_SIZE) + 0.5) / SKETCH_SIZE
            idx = np.minimum((qs * self._values.size).astype(np.int64),
                             self._values.size - 1)
            self._values = self._values[idx]
            self._compressed = True

    @property
    def is_exact(self) -> bool:
        return not self._compressed

    @property
    def values(self) -> np.ndarray:
        return self._values

    def evaluate(self, t):
        """F(t): fraction of mass at or below t (right-continuous)."""
        t = np.asarray(t, dtype=np.float64)
        if self._values.size == 0:
            raise ValueError("empty empirical distribution")
        return np.searchsorted(self._values, t, side="right") / self._values.size

    def merge(self, other: "EmpiricalCDF") -> "EmpiricalCDF":
        out = EmpiricalCDF()
        out.count = self.count + other.count
        out._values = np.sort(np.concatenate([self._values, other._values]))
        out._compressed = self._compressed or other._compressed
        out._maybe_compress()
        return out


@dataclass
class SimplexHistogram:
    """Counts over the depth-m integer grid of the standard simplex.

    A point x maps to the cell floor(m * x) (componentwise, clipped); the
    cells partition the simplex.  Sparse storage keyed by the cell tuple.
    """

    dimension: int
    depth: int
    counts: dict = field(default_factory=dict)

    def record(self, points: np.ndarray) -> "SimplexHistogram":
        pts = np.asarray(points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[None, :]
        if pts.shape[1] != self.dimension:
            raise ValueError("dimension mismatch")
        cells = np.minimum((pts * self.depth).astype(np.int64), self.depth - 1)
        cells = np.maximum(cells, 0)
        uniq, cnt = np.unique(cells, axis=0, return_counts=True)
        for cell, c in zip(uniq, cnt):
            key = tuple(int(v) for v in cell)
            self.counts[key] = self.counts.get(key, 0) + int(c)
        return self

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def merge(self, other: "SimplexHistogram") -> "SimplexHistogram":
        if (self.dimension, self.depth) != (other.dimension, other.depth):
            raise ValueError("cannot merge histograms with different binning")
        out = SimplexHistogram(self.dimension, self.depth, dict(self.counts))
        for key, c in other.counts.items():
            out.counts[key] = out.counts.get(key, 0) + c
        return out

    def rows(self):
        """Sorted (cell lower corner ..., count) rows for emission."""
        for key in sorted(self.counts):
            corner = tuple(k / self.depth for k in key)
            yield corner + (self.counts[key],)

    def marginal_ecdf(self, axis: int = 0) -> "EmpiricalCDF":
        """ECDF of one barycentric coordinate, cells at their lower corner."""
        vals = []
        for key, c in sorted(self.counts.items()):
            vals.extend([key[axis] / self.depth] * c)
        return EmpiricalCDF(np.array(vals))


def merge(a, b):
    """Merge two accumulators of the same type and configuration."""
    if type(a) is not type(b):
        raise ValueError("cannot merge accumulators of different types")
    return a.merge(b)


# ---------------------------------------------------------------------------
# recording passes over orbit streams
# ---------------------------------------------------------------------------


def _component_values(stream, functional: LengthFunctional):
    """Yield (n, k) float matrices of per-component lengths, chunk by chunk."""
    if stream.has_chunks:
        for P, Q, X, Y in stream.iter_chunks():
            yield np.stack(
                [functional.chart_array(P, Q), functional.chart_array(X, Y)], axis=1
            )
    else:
        rows = [
            [float(v) for v in functional.component_values(gamma)]
            for gamma in stream.iter_multicurves()
        ]
        yield np.array(rows, dtype=np.float64).reshape(len(rows), -1)


@dataclass
class LengthRecord:
    """Polar statistics of an orbit ball, one observation per element."""

    directions: SimplexHistogram  # binned simplex directions
    radii: EmpiricalCDF  # total length / cutoff
    fractions: EmpiricalCDF  # exact first-coordinate marginal of directions


def record_lengths(stream, functional: LengthFunctional | None = None,
                   bins: int = 50) -> LengthRecord:
    """Record the polar decomposition of each orbit element's length vector.

    The direction marginal is kept both binned (histogram, for emission)
    and exact (fraction ECDF, the statistic compared against the limit
    law); the radius is the total length normalized by the query cutoff.
    """
    functional = functional or stream.query.functional
    cutoff = float(stream.query.cutoff)
    k = stream.query.basepoint.k
    hist = SimplexHistogram(k, bins)
    radii = EmpiricalCDF()
    fractions = EmpiricalCDF()
    for values in _component_values(stream, functional):
        total = values.sum(axis=1)
        direction = values / total[:, None]
        hist.record(direction)
        fractions.add(direction[:, 0])
        radii.add(total / cutoff)
    if radii.count == 0:
        raise ValueError("empty orbit stream")
    return LengthRecord(hist, radii, fractions)


def record_ratios(stream, psi: LengthFunctional, phi: LengthFunctional | None = None):
    """Component ratio statistics: (per-component ECDFs, max-gap ECDF).

    Ratios are psi/phi per component; the gap is max_{i,j} |r_i - r_j|,
    which the diagonal concentration of the ratio law sends to 0.
    """
    phi = phi or stream.query.functional
    k = stream.query.basepoint.k
    marginals = tuple(EmpiricalCDF() for _ in range(k))
    gap_e = EmpiricalCDF()
    for psi_vals, phi_vals in _paired_component_values(stream, psi, phi):
        ratios = psi_vals / phi_vals
        for i in range(k):
            marginals[i].add(ratios[:, i])
        gap_e.add(ratios.max(axis=1) - ratios.min(axis=1))
    if gap_e.count == 0:
        raise ValueError("empty orbit stream")
    return marginals, gap_e


def _paired_component_values(stream, psi: LengthFunctional, phi: LengthFunctional):
    """Yield ((n, k) psi values, (n, k) phi values) over one stream pass."""
    if stream.has_chunks:
        for P, Q, X, Y in stream.iter_chunks():
            yield (
                np.stack([psi.chart_array(P, Q), psi.chart_array(X, Y)], axis=1),
                np.stack([phi.chart_array(P, Q), phi.chart_array(X, Y)], axis=1),
            )
    else:
        ps, hs = [], []
        for gamma in stream.iter_multicurves():
            ps.append([float(v) for v in psi.component_values(gamma)])
            hs.append([float(v) for v in phi.component_values(gamma)])
        yield (
            np.array(ps, dtype=np.float64).reshape(len(ps), -1),
            np.array(hs, dtype=np.float64).reshape(len(hs), -1),
        )


# ---------------------------------------------------------------------------
# Kolmogorov-Smirnov distances
# ---------------------------------------------------------------------------


def ks_statistic(emp: EmpiricalCDF, model_cdf) -> float:
    """sup_t |F_emp(t) - F_model(t)| evaluated at the sample points.

    Both one-sided gaps are taken at every sample value (the empirical CDF
    jumps there), which realizes the supremum for a continuous model CDF.
    """
    values = emp.values
    if values.size == 0:
        raise ValueError("empty empirical distribution")
    n = values.size
    model = np.asarray(model_cdf(values), dtype=np.float64)
    upper = np.arange(1, n + 1) / n
    lower = np.arange(0, n) / n
    return float(np.max(np.maximum(upper - model, model - lower)))


def ks_two_sample(a: EmpiricalCDF, b: EmpiricalCDF) -> float:
    """sup-norm distance between two empirical CDFs."""
    if a.values.size == 0 or b.values.size == 0:
        raise ValueError("empty empirical distribution")
    grid = np.concatenate([a.values, b.values])
    return float(np.max(np.abs(a.evaluate(grid) - b.evaluate(grid))))
