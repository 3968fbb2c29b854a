"""Limit laws of orbit enumeration: closed forms and quadrature.

The normalized length vectors of a mapping class group orbit converge to a
product law on (simplex) x (radius): a simplex law depending only on the
basepoint, times the radial density d * t^(d-1) with d the lamination-space
dimension.  This module realizes the computable cases:

  * the pants-decomposition simplex density ((2n-1)!/sqrt(n)) * prod(x_i)
    with n = 3g - 3 + r, together with the moment identity
    integral over the simplex of prod(x_i) = sqrt(n)/(2n-1)!   that makes
    it a probability density;
  * the uniform law of the torus standard pair (constant 1/sqrt(2));
  * Thurston volumes B(phi) as lattice-point scaling limits on the chart
    of the once-holed torus (the scaling-limit normalization makes the
    chart measure plain Lebesgue mod sign; other conventions differ by
    factors of 2);
  * cone measures: positive combinations of Lebesgue measures pushed
    through linear maps of simplicial cones, with an exact evaluation path
    in dimension <= 3 and a deterministic Monte Carlo fallback;
  * the ratio law: the push-forward of the normalized chart measure on
    {phi <= 1} under the 0-homogeneous function psi/phi, computed by a
    deterministic angular quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _speedups_py as _pk
from ._polyvol import mat_det, mat_inverse, orthant_clipped_pullback_volume
from .core import SimplexPoint, SurfaceType
from .torus import LengthFunctional

# ---------------------------------------------------------------------------
# deterministic sampling (counter-based; reproducible for any parallelism)
# ---------------------------------------------------------------------------

_SAMPLE_CHUNK = 1 << 16


def _philox(seed: int, stream: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed, stream]))


def uniform_simplex_samples(n: int, k: int, seed: int = 0) -> np.ndarray:
    """n points uniform on the standard simplex in R^k, deterministically.

    Samples are produced in fixed-size chunks keyed by (seed, chunk index),
    so any parallel split over chunks reproduces the same stream.
    """
    out = np.empty((n, k), dtype=np.float64)
    for chunk, start in enumerate(range(0, n, _SAMPLE_CHUNK)):
        m = min(_SAMPLE_CHUNK, n - start)
        g = _philox(seed, chunk).standard_exponential((m, k))
        out[start:start + m] = g / g.sum(axis=1, keepdims=True)
    return out


# ---------------------------------------------------------------------------
# pants-decomposition simplex density
# ---------------------------------------------------------------------------


def pants_density(surface: SurfaceType, x) -> float:
    """Simplex density of a labeled pants decomposition at x.

    Value ((6g-7+2r)!/sqrt(3g-3+r)) * prod(x_i) against the Riemannian
    Lebesgue measure of the simplex with 3g-3+r coordinates; vanishes
    exactly on the boundary.
    """
    n = surface.pants_count
    if n < 1:
        raise ValueError("surface has no pants decomposition curve")
    coords = x.coords if isinstance(x, SimplexPoint) else SimplexPoint(tuple(x)).coords
    if len(coords) != n:
        raise ValueError(f"expected a point of the {n}-coordinate simplex, got {len(coords)}")
    prod = 1.0
    for c in coords:
        prod *= float(c)
    return math.factorial(2 * n - 1) / math.sqrt(n) * prod


def dirichlet_norm(n: int) -> float:
    """Integral of prod(x_i) over the n-coordinate simplex: sqrt(n)/(2n-1)!."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return math.sqrt(n) / math.factorial(2 * n - 1)


# ---------------------------------------------------------------------------
# Thurston volume by lattice scaling limit
# ---------------------------------------------------------------------------


def lattice_point_count(functional: LengthFunctional, cutoff: int) -> int:
    """Exact count of nonzero integer chart points mod sign with phi <= cutoff."""
    if cutoff < 1 or cutoff != int(cutoff):
        raise ValueError("cutoff must be a positive integer")
    cutoff = int(cutoff)
    if functional.kind == "intersection":
        parts = functional.sigma.parts
        scale = math.lcm(*[w.denominator for _, w in parts])
        av = [c.p for c, _ in parts]
        bv = [c.q for c, _ in parts]
        wv = [int(w * scale) for _, w in parts]
        ls = cutoff * scale
        # p = 0 ray: phi(0, q) = q * phi(0, 1)
        phi01 = _pk._inter_phi(av, bv, wv, 0, 1)
        total = ls // phi01
        pmax = int(Fraction(ls) / _min_chart_slope(av, bv, wv))
        for p in range(1, pmax + 1):
            iv = _pk._inter_q_interval(av, bv, wv, ls, p)
            if iv is not None:
                total += iv[1] - iv[0] + 1
        return total
    # flat: ||(p, q)|| <= L
    total = cutoff  # the ray p = 0, 1 <= q <= L
    for p in range(1, cutoff + 1):
        n = cutoff * cutoff - p * p
        if n >= 0:
            total += 2 * math.isqrt(n) + 1
    return total


def _min_chart_slope(av, bv, wv) -> Fraction:
    """Exact min over u of phi(1, u); bounds the feasible first coordinate."""
    candidates = [Fraction(bv[j], av[j]) for j in range(len(av)) if av[j] != 0]
    best = None
    for u in candidates:
        val = sum(wv[j] * abs(av[j] * u - bv[j]) for j in range(len(av)))
        if best is None or val < best:
            best = val
    if best is None or best <= 0:
        raise ValueError("functional is not positive on the chart")
    return best


def thurston_volume_lattice(functional: LengthFunctional, cutoff: int) -> float:
    """Scaling-limit estimate of B(phi), the chart measure of {phi <= 1}.

    Counts integer chart points mod sign below the cutoff and divides by
    cutoff^2; converges with O(1/cutoff) boundary discrepancy.
    """
    return lattice_point_count(functional, cutoff) / float(cutoff) ** 2


# ---------------------------------------------------------------------------
# cone measures
# ---------------------------------------------------------------------------


def _as_matrix(m) -> tuple:
    return tuple(tuple(Fraction(x) for x in row) for row in m)


def _rank(rows) -> int:
    a = [list(r) for r in rows]
    rank = 0
    cols = len(a[0]) if a else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(a)) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        pv = a[rank][col]
        a[rank] = [x / pv for x in a[rank]]
        for r in range(len(a)):
            if r != rank and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class ConeTerm:
    """One summand: coefficient * (matrix)_* (Lebesgue on the ray cone)."""

    coefficient: Fraction
    matrix: tuple  # k x m, rows of Fractions
    rays: tuple  # generating rays of the domain cone, vectors in R^m

    def __post_init__(self):
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))
        object.__setattr__(self, "matrix", _as_matrix(self.matrix))
        object.__setattr__(self, "rays", _as_matrix(self.rays))
        if self.coefficient <= 0:
            raise ValueError("cone term coefficients must be positive")
        m = len(self.rays[0])
        if any(len(r) != m for r in self.rays):
            raise ValueError("rays of unequal dimension")
        if any(len(row) != m for row in self.matrix):
            raise ValueError(f"matrix expects {m}-dimensional input")
        if _rank(self.rays) != len(self.rays):
            raise ValueError("cone rays must be linearly independent")
        for ray in self.rays:
            image = [sum(row[j] * ray[j] for j in range(m)) for row in self.matrix]
            if any(y < 0 for y in image):
                raise ValueError("map must send the cone into the nonnegative orthant")

    @property
    def output_dim(self) -> int:
        return len(self.matrix)

    @property
    def cone_dim(self) -> int:
        return len(self.rays)

    def composed(self) -> list:
        """The k x cone_dim matrix acting on ray coordinates."""
        m = len(self.rays[0])
        return [
            [sum(row[t] * ray[t] for t in range(m)) for ray in self.rays]
            for row in self.matrix
        ]


@dataclass(frozen=True)
class ConeMeasure:
    """Positive combination of Lebesgue measures of cones pushed linearly."""

    terms: tuple

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a cone measure needs at least one term")
        k = self.terms[0].output_dim
        if any(t.output_dim != k for t in self.terms):
            raise ValueError("terms map into different dimensions")

    @property
    def dimension(self) -> int:
        return self.terms[0].output_dim


def torus_pair_cone_measure() -> ConeMeasure:
    """Chart push-forward measure of the standard pair on the once-holed torus.

    Two quadrant cones folding the chart mod sign onto the nonnegative
    quadrant; evaluates to twice Lebesgue there (the fold is 2-to-1 away
    from the axes).
    """
    return ConeMeasure(
        (
            ConeTerm(1, ((0, 1), (1, 0)), ((1, 0), (0, 1))),
            ConeTerm(1, ((0, -1), (1, 0)), ((1, 0), (0, -1))),
        )
    )


def pushforward(cm: ConeMeasure, matrix) -> ConeMeasure:
    """Push a cone measure through a linear map (composition termwise)."""
    matrix = _as_matrix(matrix)
    k = cm.dimension
    if any(len(row) != k for row in matrix):
        raise ValueError(f"map expects {k}-dimensional input")
    new_terms = []
    for t in cm.terms:
        composed = tuple(
            tuple(
                sum(matrix[i][s] * t.matrix[s][j] for s in range(k))
                for j in range(len(t.matrix[0]))
            )
            for i in range(len(matrix))
        )
        new_terms.append(ConeTerm(t.coefficient, composed, t.rays))
    return ConeMeasure(tuple(new_terms))


@dataclass(frozen=True)
class BoxMass:
    """Mass of a box under a cone measure, with provenance."""

    value: float
    stderr: float | None  # None on the exact path
    exact_value: Fraction | None = None

    @property
    def exact(self) -> bool:
        return self.stderr is None

    def __float__(self):
        return self.value


def eval_box(cm: ConeMeasure, box, samples: int = 200_000, seed: int = 0) -> BoxMass:
    """Measure of an axis-aligned box under a cone measure.

    Exact when every term has a square invertible composed map in dimension
    <= 3 (pull the box back, clip against the orthant); otherwise an
    unbiased Monte Carlo estimate with reported standard error.  A term
    whose composed map has deficient rank pushes Lebesgue to a singular
    measure and is rejected.
    """
    box = [(Fraction(lo), Fraction(hi)) for lo, hi in box]
    if len(box) != cm.dimension:
        raise ValueError(f"box dimension {len(box)} != measure dimension {cm.dimension}")
    if any(hi < lo for lo, hi in box):
        raise ValueError("box with negative extent")
    if any(lo < 0 for lo, _ in box):
        raise ValueError("cone measures live on the nonnegative orthant")
    exact_total = Fraction(0)
    mc_terms = []
    for term in cm.terms:
        a = term.composed()
        if _rank(a) < term.cone_dim:
            raise ValueError(
                "rank-deficient cone term: push-forward is singular, refusing to evaluate"
            )
        if term.cone_dim == cm.dimension == len(term.rays[0]) and cm.dimension <= 3:
            det_r = mat_det(term.rays)
            vol = orthant_clipped_pullback_volume(mat_inverse(a), box)
            exact_total += term.coefficient * abs(det_r) * vol
        else:
            mc_terms.append((term, a))
    if not mc_terms:
        return BoxMass(float(exact_total), None, exact_total)
    est, var = float(exact_total), 0.0
    for stream, (term, a) in enumerate(mc_terms, start=1):
        value, sigma2 = _mc_term_mass(term, a, box, samples, seed, stream)
        est += value
        var += sigma2
    return BoxMass(est, math.sqrt(var), None)


def _mc_term_mass(term: ConeTerm, a, box, samples, seed, stream):
    """Rejection-sample the pullback region {lam >= 0 : A lam in box}."""
    a_np = np.array([[float(x) for x in row] for row in a], dtype=np.float64)
    smin = np.linalg.svd(a_np, compute_uv=False)[-1]
    corner = np.array([max(abs(float(lo)), abs(float(hi))) for lo, hi in box])
    lam_bound = float(np.linalg.norm(corner)) / smin
    d = term.cone_dim
    lo = np.array([float(l) for l, _ in box])
    hi = np.array([float(h) for _, h in box])
    accepted = 0
    done = 0
    chunk_index = 0
    while done < samples:
        m = min(_SAMPLE_CHUNK, samples - done)
        lam = _philox(seed, (stream << 20) + chunk_index).random((m, d)) * lam_bound
        y = lam @ a_np.T
        ok = np.all((y >= lo) & (y <= hi), axis=1)
        accepted += int(ok.sum())
        done += m
        chunk_index += 1
    p = accepted / samples
    gram = np.array([[float(x) for x in row] for row in term.rays], dtype=np.float64)
    ray_factor = math.sqrt(abs(np.linalg.det(gram @ gram.T)))
    cube = lam_bound ** d * float(term.coefficient) * ray_factor
    value = cube * p
    sigma2 = cube * cube * p * (1 - p) / samples
    return value, sigma2


# ---------------------------------------------------------------------------
# simplex densities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DensityOnSimplex:
    """Probability density on the standard simplex, by evaluator kind."""

    dimension: int
    kind: str  # "pants" | "uniform" | "cone"
    surface: SurfaceType | None = None
    cone: ConeMeasure | None = None

    def density(self, x) -> float:
        point = x if isinstance(x, SimplexPoint) else SimplexPoint(tuple(x))
        if point.dimension != self.dimension:
            raise ValueError("dimension mismatch")
        if self.kind == "pants":
            return pants_density(self.surface, point)
        if self.kind == "uniform":
            # constant density against the Riemannian simplex measure
            return 1.0 / math.sqrt(self.dimension)
        return self._cone_density(point)

    def _cone_density(self, point: SimplexPoint) -> float:
        k = self.dimension
        total = Fraction(0)
        for term in self.cone.terms:
            a = term.composed()
            if len(a) != len(a[0]):
                raise ValueError("cone density needs square invertible terms")
            inv = mat_inverse(a)
            lam = [
                sum(inv[i][j] * Fraction(point[j]) for j in range(k))
                for i in range(k)
            ]
            if all(l >= 0 for l in lam):
                total += term.coefficient * abs(mat_det(term.rays)) / abs(mat_det(a))
        mass = self._cone_total_mass()
        return float(total) / (k * math.sqrt(k)) / float(mass)

    def _cone_total_mass(self) -> Fraction:
        """Exact mass of the cone over the whole simplex.

        The image cones sit in the nonnegative orthant, so the l1 norm is
        linear on each of them and the region {lam >= 0, ||A lam||_1 <= 1}
        is a coordinate simplex of volume 1/(k! prod(colsum)).
        """
        total = Fraction(0)
        for term in self.cone.terms:
            a = term.composed()
            k = len(a)
            if k != len(a[0]):
                raise ValueError("cone density needs square invertible terms")
            colsums = [sum(a[i][j] for i in range(k)) for j in range(k)]
            if any(c <= 0 for c in colsums):
                raise ValueError("degenerate cone term: zero column sum")
            vol = Fraction(1)
            for c in colsums:
                vol /= c
            vol /= math.factorial(k)
            total += term.coefficient * abs(mat_det(term.rays)) * vol
        return total

    def total_mass(self, samples: int = 200_000, seed: int = 0):
        """(mass, stderr or None): exact where a formula exists, else MC."""
        if self.kind == "pants":
            n = self.dimension
            return (math.factorial(2 * n - 1) / math.sqrt(n) * dirichlet_norm(n), None)
        if self.kind == "uniform" and self.dimension == 2:
            # density 1/sqrt(2) times segment length sqrt(2)
            return (1.0, None)
        return self._mc_mass(samples, seed)

    def _mc_mass(self, samples: int, seed: int):
        k = self.dimension
        pts = uniform_simplex_samples(samples, k, seed)
        vals = np.array([self.density(tuple(p)) for p in pts])
        vol = math.sqrt(k) / math.factorial(k - 1)
        est = float(vals.mean()) * vol
        err = float(vals.std(ddof=1)) * vol / math.sqrt(samples)
        return est, err

    def mass(self, region, samples: int = 200_000, seed: int = 0):
        """(MC mass of {x in U}, stderr) for a simplex-point predicate U."""
        k = self.dimension
        pts = uniform_simplex_samples(samples, k, seed)
        vals = np.array(
            [self.density(tuple(p)) if region(SimplexPoint(tuple(p))) else 0.0 for p in pts]
        )
        vol = math.sqrt(k) / math.factorial(k - 1)
        est = float(vals.mean()) * vol
        err = float(vals.std(ddof=1)) * vol / math.sqrt(samples)
        return est, err

    def marginal_cdf(self, t: float) -> float:
        """CDF of the first coordinate; closed form for the uniform pair law."""
        if self.kind == "uniform" and self.dimension == 2:
            return min(max(t, 0.0), 1.0)
        raise NotImplementedError("closed-form marginal only for the uniform pair law")


def pants_simplex_density(surface: SurfaceType) -> DensityOnSimplex:
    return DensityOnSimplex(surface.pants_count, "pants", surface=surface)


def cone_simplex_density(cm: ConeMeasure) -> DensityOnSimplex:
    return DensityOnSimplex(cm.dimension, "cone", cone=cm)


def p_measure_torus_pair() -> DensityOnSimplex:
    """Simplex law of the standard pair: uniform, density 1/sqrt(2).

    Equivalently: the length fraction of the first component is uniform on
    [0, 1] in the large-cutoff limit.
    """
    return DensityOnSimplex(2, "uniform")


# ---------------------------------------------------------------------------
# radial law
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RadialLaw:
    """Normalized total length law on [0, 1]: density d t^(d-1), CDF t^d."""

    exponent: int

    def pdf(self, t):
        t = np.asarray(t, dtype=np.float64)
        d = self.exponent
        return np.where((t >= 0) & (t <= 1), d * np.power(t, d - 1), 0.0)

    def cdf(self, t):
        t = np.clip(np.asarray(t, dtype=np.float64), 0.0, 1.0)
        return np.power(t, self.exponent)


def radial_law(surface: SurfaceType) -> RadialLaw:
    if surface.complexity < 1:
        raise ValueError("degenerate surface")
    return RadialLaw(surface.complexity)


# ---------------------------------------------------------------------------
# ratio law
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RatioDistribution:
    """Law of psi/phi under the normalized chart measure on {phi <= 1}.

    Stored as a weighted quadrature sample: sorted values with cumulative
    weights (a right-continuous CDF), the support interval computed from
    the closed-form piecewise structure, and detected atoms.
    """

    values: np.ndarray
    cumweights: np.ndarray
    support: tuple
    atoms: tuple
    resolution: int

    def cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        idx = np.searchsorted(self.values, x, side="right")
        cw = np.concatenate(([0.0], self.cumweights))
        return cw[idx]

    def table(self, n: int = 512):
        """(grid, cdf) over the support for CSV emission / plotting."""
        a, b = self.support
        if b <= a:
            grid = np.array([a - 1e-9, a, a + 1e-9])
        else:
            grid = np.linspace(a, b, n)
        return grid, self.cdf(grid)


def _direction_angles(functional: LengthFunctional) -> list:
    """Angles in [0, pi) where an intersection functional is non-smooth."""
    if functional.kind != "intersection":
        return []
    out = []
    for c, _ in functional.sigma.parts:
        theta = math.atan2(c.q, c.p) % math.pi
        out.append(theta)
    return out


def _piece_peak_angles(functional: LengthFunctional, t1: float, t2: float) -> list:
    """Interior extrema of a one-piece sinusoid K sin(theta + c) on (t1, t2)."""
    if functional.kind != "intersection":
        return []
    tm = (t1 + t2) / 2
    a_coef = 0.0
    b_coef = 0.0
    for c, w in functional.sigma.parts:
        s = math.copysign(1.0, c.p * math.sin(tm) - c.q * math.cos(tm))
        a_coef += float(w) * s * c.p
        b_coef += float(w) * s * (-c.q)
    # functional on the piece is a_coef*sin + b_coef*cos = R sin(theta + c0)
    c0 = math.atan2(b_coef, a_coef)
    out = []
    for peak in (math.pi / 2 - c0, math.pi / 2 - c0 + math.pi, math.pi / 2 - c0 - math.pi):
        if t1 < peak < t2:
            out.append(peak)
    return out


def _ratio_support(psi: LengthFunctional, phi: LengthFunctional) -> tuple:
    angles = sorted(set(_direction_angles(psi) + _direction_angles(phi) + [0.0]))
    angles.append(angles[0] + math.pi)
    candidates = list(angles)
    for t1, t2 in zip(angles, angles[1:]):
        if t2 - t1 < 1e-15:
            continue
        candidates += _piece_peak_angles(psi, t1, t2)
        candidates += _piece_peak_angles(phi, t1, t2)
    ex = np.cos(candidates)
    ey = np.sin(candidates)
    vals = psi.chart_array(ex, ey) / phi.chart_array(ex, ey)
    return float(vals.min()), float(vals.max())


def ratio_distribution(psi: LengthFunctional, phi: LengthFunctional,
                       resolution: int = 100_000) -> RatioDistribution:
    """Quadrature realization of the ratio law of psi over phi.

    The ratio is 0-homogeneous, so the law is the distribution of
    psi(e)/phi(e) over chart directions e weighted by phi(e)^-2 (the mass
    of {phi <= 1} in each direction).  A midpoint grid over [0, pi) makes
    the result deterministic and reproducible bit for bit.

    Atoms are runs of consecutive grid directions with identical ratio
    (at least 3 in a row, so that isolated symmetric coincidences of the
    grid are not mistaken for genuine flat pieces).
    """
    if resolution < 8:
        raise ValueError("resolution too small")
    theta = (np.arange(resolution) + 0.5) * (math.pi / resolution)
    ex = np.cos(theta)
    ey = np.sin(theta)
    phi_v = phi.chart_array(ex, ey)
    psi_v = psi.chart_array(ex, ey)
    ratios = psi_v / phi_v
    weights = 1.0 / (phi_v * phi_v)
    weights /= weights.sum()

    atoms = []
    run_start = 0
    for i in range(1, resolution + 1):
        if i < resolution and ratios[i] == ratios[run_start]:
            continue
        if i - run_start >= 3:
            atoms.append((float(ratios[run_start]), float(weights[run_start:i].sum())))
        run_start = i

    order = np.argsort(ratios, kind="stable")
    values = ratios[order]
    cum = np.cumsum(weights[order])
    cum[-1] = 1.0
    support = _ratio_support(psi, phi)
    return RatioDistribution(values, cum, support, tuple(atoms), resolution)
