"""Orbits of multicurves on the once-holed torus and their limit laws.

The package enumerates mapping class group orbits of weighted curve tuples
below a length cutoff, evaluates the limiting distributions of their length
vectors (simplex law, radial law, ratio law, Thurston volumes) in closed
form or by quadrature, and measures how fast the empirical distributions
converge to them.
"""

from .core import PolarPoint, SimplexPoint, SurfaceType, TORUS11, in_cone, polar
from .exact import SqrtSum
from .kernel import BACKEND as KERNEL_BACKEND
from .measures import (
    ConeMeasure,
    DensityOnSimplex,
    RatioDistribution,
    dirichlet_norm,
    eval_box,
    p_measure_torus_pair,
    pants_density,
    pushforward,
    radial_law,
    ratio_distribution,
    thurston_volume_lattice,
    torus_pair_cone_measure,
)
from .orbits import (
    OrbitQuery,
    OrbitStream,
    count_growth,
    enumerate_orbit,
    orbit_bfs,
)
from .stats import (
    EmpiricalCDF,
    SimplexHistogram,
    ks_statistic,
    ks_two_sample,
    merge,
    record_lengths,
    record_ratios,
)
from .torus import (
    ALPHA,
    ALPHA_BETA,
    BETA,
    CurveClass,
    FillingMulticurve,
    KMulticurve,
    LengthFunctional,
    MCGElement,
    apply,
    eval_functional,
    intersection,
    intersection_vector,
    parse_functional,
)

__version__ = "0.1.0"
