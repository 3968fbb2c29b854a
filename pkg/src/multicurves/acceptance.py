"""Acceptance gates: exact small-instance oracles plus convergence checks.

Each gate pins a verifiable statement about the package: exact orbit-ball
counts cross-checked between three independent enumeration routes, KS
distances between empirical distributions and the limit laws at fixed
cutoffs and tolerances, exact normalization identities, the exact cone
engine, and bit-level reproducibility across partitioned runs.

``run_all`` returns one result per gate; the CLI ``verify`` subcommand and
``tests/test_acceptance.py`` both consume it.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cli import length_dist_report, ratio_dist_report
from .core import TORUS11
from .kernel import BACKEND
from .measures import (
    dirichlet_norm,
    eval_box,
    pants_simplex_density,
    radial_law,
    ratio_distribution,
    thurston_volume_lattice,
    lattice_point_count,
    torus_pair_cone_measure,
    uniform_simplex_samples,
)
from .orbits import OrbitQuery, enumerate_orbit, orbit_bfs
from .stats import ks_statistic, ks_two_sample, record_lengths, record_ratios
from .torus import ALPHA_BETA, CurveClass, KMulticurve, LengthFunctional

GRID = (250, 500, 1000, 2000)
FLAT = LengthFunctional.flat()


@dataclass
class GateResult:
    index: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} criterion {self.index} [{self.seconds:6.2f}s] {self.name}: {self.detail}"


def lattice_scan_oracle(functional, cutoff) -> set:
    """Exhaustive scan: primitive pairs mod sign with |det| = 1 below cutoff.

    Independent of the production enumeration path: runs over a coordinate
    box with exact per-pair checks.  Small cutoffs only.
    """
    cutoff = Fraction(cutoff)
    bound = int(cutoff) + 1
    prim = [CurveClass(0, 1)]
    for p in range(1, bound + 1):
        for q in range(-bound, bound + 1):
            if math.gcd(p, abs(q)) == 1:
                prim.append(CurveClass(p, q))
    prim = [c for c in prim if functional.of_class(c) <= cutoff]
    out = set()
    for v in prim:
        for w in prim:
            if abs(v.p * w.q - v.q * w.p) == 1:
                if functional.of_class(v) + functional.of_class(w) <= cutoff:
                    out.add(KMulticurve.of_curves(v, w))
    return out


class Workspace:
    """Shared enumeration statistics reused across gates."""

    def __init__(self):
        self._length = {}
        self._ratio = {}
        self._flat_length = None
        self.length_seconds = None

    def length_stats(self, cutoff):
        if cutoff not in self._length:
            stream = enumerate_orbit(OrbitQuery(ALPHA_BETA, cutoff))
            self._length[cutoff] = record_lengths(stream)
        return self._length[cutoff]

    def ratio_stats(self, cutoff):
        if cutoff not in self._ratio:
            stream = enumerate_orbit(OrbitQuery(ALPHA_BETA, cutoff))
            self._ratio[cutoff] = record_ratios(stream, FLAT)
        return self._ratio[cutoff]

    def flat_length_stats(self):
        if self._flat_length is None:
            stream = enumerate_orbit(OrbitQuery(FLAT, 2000))
            self._flat_length = record_lengths(stream)
        return self._flat_length

    def warm_lengths(self):
        start = time.perf_counter()
        for L in GRID:
            self.length_stats(L)
        self.length_seconds = time.perf_counter() - start


def _gate(index, name):
    def wrap(fn):
        fn.index = index
        fn.gate_name = name
        return fn
    return wrap


@_gate(1, "exact small counts and oracle agreement")
def criterion_1(ws: Workspace) -> tuple:
    start = time.perf_counter()
    small = {}
    for L in (2, 3):
        small[L] = enumerate_orbit(OrbitQuery(ALPHA_BETA, L)).to_set()
        oracle = lattice_scan_oracle(ALPHA_BETA, L)
        if small[L] != oracle:
            return False, f"lattice-scan oracle disagrees at L={L}"
    if len(small[2]) != 2 or len(small[3]) != 10:
        return False, f"counts ({len(small[2])}, {len(small[3])}) != (2, 10)"
    for L in list(range(1, 31)) + [Fraction(7, 2), Fraction(25, 2)]:
        fast = enumerate_orbit(OrbitQuery(ALPHA_BETA, L)).to_set()
        bfs = orbit_bfs(KMulticurve.standard_pair(), ALPHA_BETA, L)
        if fast != bfs:
            return False, f"enumerate != orbit_bfs at L={L}"
    elapsed = time.perf_counter() - start
    if elapsed >= 5.0:
        return False, f"runtime {elapsed:.2f}s >= 5s"
    return True, f"|M(2)|=2 |M(3)|=10, bfs agreement L<=30, {elapsed:.2f}s"


@_gate(2, "simplex law: fraction ECDF vs uniform")
def criterion_2(ws: Workspace) -> tuple:
    if ws.length_seconds is None:
        ws.warm_lengths()
    ks = [ks_statistic(ws.length_stats(L).fractions,
                       lambda t: np.clip(t, 0.0, 1.0)) for L in GRID]
    nonincreasing = all(a >= b for a, b in zip(ks, ks[1:]))
    ok = nonincreasing and ks[-1] <= 0.02 and ws.length_seconds < 60.0
    detail = ("KS " + " -> ".join(f"{v:.5f}" for v in ks)
              + f", enumeration {ws.length_seconds:.1f}s")
    if not nonincreasing:
        detail += " (not nonincreasing)"
    if ks[-1] > 0.02:
        detail += " (final > 0.02)"
    if ws.length_seconds >= 60.0:
        detail += " (over 60s)"
    return ok, detail


@_gate(3, "radial law: radius ECDF vs t^2")
def criterion_3(ws: Workspace) -> tuple:
    law = radial_law(TORUS11)
    ks = ks_statistic(ws.length_stats(2000).radii, law.cdf)
    return ks <= 0.02, f"KS {ks:.5f} (tolerance 0.02)"


@_gate(4, "independence of the length functional")
def criterion_4(ws: Workspace) -> tuple:
    ks = ks_two_sample(ws.length_stats(2000).fractions,
                       ws.flat_length_stats().fractions)
    return ks <= 0.03, f"two-sample KS {ks:.5f} (tolerance 0.03)"


@_gate(5, "ratio law: diagonal gap and marginal")
def criterion_5(ws: Workspace) -> tuple:
    gaps = [float(ws.ratio_stats(L)[1].values.mean()) for L in GRID]
    decreasing = all(a > b for a, b in zip(gaps, gaps[1:]))
    law = ratio_distribution(FLAT, ALPHA_BETA)
    (r1, _), _ = ws.ratio_stats(2000)
    ks = ks_statistic(r1, law.cdf)
    lo, hi = law.support
    support_ok = abs(lo - 1 / math.sqrt(2)) <= 1e-9 and abs(hi - 1.0) <= 1e-9
    ok = decreasing and gaps[-1] <= 0.05 and ks <= 0.03 and support_ok
    detail = (f"mean gap {' -> '.join(f'{g:.5f}' for g in gaps)}, "
              f"KS {ks:.5f}, support [{lo:.10f}, {hi:.10f}]")
    if not decreasing:
        detail += " (gaps not strictly decreasing)"
    if not support_ok:
        detail += " (support off)"
    return ok, detail


@_gate(6, "Thurston volume scaling limit")
def criterion_6(ws: Workspace) -> tuple:
    exact = lattice_point_count(ALPHA_BETA, 10)
    est10 = thurston_volume_lattice(ALPHA_BETA, 10)
    est2000 = thurston_volume_lattice(ALPHA_BETA, 2000)
    ok = exact == 110 and abs(est10 - 1.10) < 1e-12 and abs(est2000 - 1.0) <= 0.01
    return ok, f"count(10)={exact}, estimate(10)={est10}, estimate(2000)={est2000:.6f}"


@_gate(7, "pants density normalization")
def criterion_7(ws: Workspace) -> tuple:
    for n in range(1, 7):
        identity = math.factorial(2 * n - 1) / math.sqrt(n) * dirichlet_norm(n)
        if abs(identity - 1.0) > 1e-12:
            return False, f"closed-form normalization off at n={n}: {identity!r}"
    # Monte Carlo integral of the density over the simplex, 1e6 samples
    from .core import SurfaceType

    surfaces = {2: SurfaceType(1, 2), 3: SurfaceType(2, 0), 4: SurfaceType(2, 1)}
    details = []
    for n, surface in surfaces.items():
        density = pants_simplex_density(surface)
        pts = uniform_simplex_samples(1_000_000, n, seed=7)
        scale = math.factorial(2 * n - 1) / math.sqrt(n)
        vals = scale * np.prod(pts, axis=1)
        # spot-check the vectorized integrand against the scalar evaluator
        for row, v in zip(pts[:64], vals[:64]):
            if abs(density.density(tuple(row)) - v) > 1e-12 * max(v, 1.0):
                return False, f"vectorized integrand mismatch at n={n}"
        vol = math.sqrt(n) / math.factorial(n - 1)
        est = float(vals.mean()) * vol
        se = float(vals.std(ddof=1)) * vol / math.sqrt(len(vals))
        details.append(f"n={n}: {est:.5f}+-{se:.5f}")
        if abs(est - 1.0) > 3 * se:
            return False, f"MC integral off at n={n}: {est} +- {se}"
    return True, "; ".join(details)


@_gate(8, "cone engine exact path")
def criterion_8(ws: Workspace) -> tuple:
    cm = torus_pair_cone_measure()
    full = eval_box(cm, [(0, 1), (0, 1)])
    half = eval_box(cm, [(0, 1), (0, Fraction(1, 2))])
    ok = (full.exact and full.exact_value == 2
          and half.exact and half.exact_value == 1)
    return ok, f"[0,1]^2 -> {full.value} (exact={full.exact}), [0,1]x[0,1/2] -> {half.value}"


@_gate(9, "determinism and partition independence")
def criterion_9(ws: Workspace) -> tuple:
    def outputs(partitions: int) -> dict:
        files = {}
        for L in GRID:
            rep = length_dist_report("i:a+b", Fraction(L), partitions=partitions)
            files.update({f"len-{L}-{k}": v for k, v in rep.items()})
            rep = ratio_dist_report("flat", "i:a+b", Fraction(L),
                                    partitions=partitions)
            files.update({f"ratio-{L}-{k}": v for k, v in rep.items()})
        rep = length_dist_report("flat", Fraction(2000), partitions=partitions)
        files.update({f"len-flat-{k}": v for k, v in rep.items()})
        return files

    reference = outputs(1)
    for partitions in (4, 8):
        candidate = outputs(partitions)
        if candidate != reference:
            bad = [k for k in reference if candidate.get(k) != reference[k]]
            return False, f"outputs differ at partitions={partitions}: {bad[:3]}"
    return True, f"{len(reference)} files byte-identical across partitions 1, 4, 8"


GATES = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
         criterion_6, criterion_7, criterion_8, criterion_9)


def run_gate(gate, ws: Workspace) -> GateResult:
    start = time.perf_counter()
    passed, detail = gate(ws)
    return GateResult(gate.index, gate.gate_name, passed, detail,
                      time.perf_counter() - start)


def run_all() -> list:
    ws = Workspace()
    results = [run_gate(gate, ws) for gate in GATES]
    return results


if __name__ == "__main__":
    import sys

    results = run_all()
    for r in results:
        print(r.line())
    print(f"kernel backend: {BACKEND}")
    sys.exit(0 if all(r.passed for r in results) else 1)
