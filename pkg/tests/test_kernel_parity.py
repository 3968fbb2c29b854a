"""Cross-checks between the compiled and pure enumeration kernels.

The pure backend is the semantic reference (arbitrary-precision integers);
the compiled backend must reproduce it bit for bit on every query it is
allowed to take.
"""

from fractions import Fraction

import numpy as np
import pytest

from multicurves import kernel
from multicurves.orbits import _plan_kernel
from multicurves.torus import (
    ALPHA_BETA,
    BETA,
    CurveClass,
    FillingMulticurve,
    LengthFunctional,
)

pytestmark = pytest.mark.skipif(
    kernel.compiled is None, reason="compiled kernel not built"
)

FUNCTIONALS = [
    ("l1", ALPHA_BETA, Fraction(60)),
    ("flat", LengthFunctional.flat(), Fraction(45)),
    ("flat-rational", LengthFunctional.flat(), Fraction(61, 2)),
    (
        "weighted",
        LengthFunctional.of_intersection(
            FillingMulticurve(((CurveClass(1, 1), Fraction(3, 2)), (BETA, 1)))
        ),
        Fraction(40),
    ),
    (
        "three-part",
        LengthFunctional.of_intersection(
            FillingMulticurve(
                ((CurveClass(1, 0), 1), (CurveClass(0, 1), 2), (CurveClass(1, -1), 1))
            )
        ),
        Fraction(50),
    ),
]


def run_backend(backend, functional, cutoff):
    kind, args, pmax, _ = _plan_kernel(functional, cutoff)
    n = backend.count_pairs(kind, args, 0, pmax + 1)
    P = np.empty(n, dtype=np.int64)
    Q = np.empty_like(P)
    X = np.empty_like(P)
    Y = np.empty_like(P)
    filled = backend.fill_pairs(kind, args, 0, pmax + 1, P, Q, X, Y)
    assert filled == n
    return np.stack([P, Q, X, Y], axis=1)


@pytest.mark.parametrize("name,functional,cutoff", FUNCTIONALS,
                         ids=[f[0] for f in FUNCTIONALS])
def test_fill_identical(name, functional, cutoff):
    pure_rows = run_backend(kernel.pure, functional, cutoff)
    compiled_rows = run_backend(kernel.compiled, functional, cutoff)
    assert np.array_equal(pure_rows, compiled_rows)


@pytest.mark.parametrize("name,functional,cutoff", FUNCTIONALS,
                         ids=[f[0] for f in FUNCTIONALS])
def test_counts_identical_per_subrange(name, functional, cutoff):
    kind, args, pmax, _ = _plan_kernel(functional, cutoff)
    bounds = np.linspace(0, pmax + 1, 9).astype(int)
    for lo, hi in zip(bounds, bounds[1:]):
        a = kernel.pure.count_pairs(kind, args, int(lo), int(hi))
        b = kernel.compiled.count_pairs(kind, args, int(lo), int(hi))
        assert a == b


def test_buffer_overflow_detected():
    kind, args, pmax, _ = _plan_kernel(ALPHA_BETA, Fraction(20))
    small = np.empty(3, dtype=np.int64)
    with pytest.raises(ValueError):
        kernel.compiled.fill_pairs(kind, args, 0, pmax + 1,
                                   small, small.copy(), small.copy(), small.copy())


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        kernel.compiled.count_pairs("nope", (1, 1), 0, 1)
    with pytest.raises(ValueError):
        kernel.pure.count_pairs("nope", (1, 1), 0, 1)
