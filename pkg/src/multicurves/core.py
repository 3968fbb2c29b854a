"""Surface descriptors, simplex geometry and the polar decomposition.

Length vectors of k-component multicurves are split into a direction on the
standard simplex and an l1 radius:

    polar(x) = (x / ||x||_1, ||x||_1)

All simplex normalizations in this package use the l1 norm exclusively.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

SIMPLEX_SUM_TOL = 1e-12


@dataclass(frozen=True)
class SurfaceType:
    """Topological type (genus, boundary components) of a compact surface."""

    genus: int
    boundary_count: int

    def __post_init__(self):
        g, r = self.genus, self.boundary_count
        if g < 0 or r < 0:
            raise ValueError("genus and boundary count must be nonnegative")
        if 2 * g + r < 3:
            raise ValueError(f"surface ({g},{r}) too simple: need 2g + r >= 3")

    @property
    def complexity(self) -> int:
        """Dimension 6g - 6 + 2r of the space of measured laminations."""
        return 6 * self.genus - 6 + 2 * self.boundary_count

    @property
    def pants_count(self) -> int:
        """Number 3g - 3 + r of curves in a pants decomposition."""
        return 3 * self.genus - 3 + self.boundary_count


TORUS11 = SurfaceType(1, 1)


@dataclass(frozen=True)
class SimplexPoint:
    """Point of the standard simplex: nonnegative coords summing to 1."""

    coords: tuple

    def __post_init__(self):
        if not self.coords:
            raise ValueError("empty coordinate vector")
        if any(c < 0 for c in self.coords):
            raise ValueError(f"negative coordinate in {self.coords}")
        total = sum(self.coords)
        if abs(total - 1) > SIMPLEX_SUM_TOL:
            raise ValueError(f"coordinates sum to {total}, not 1")

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]


@dataclass(frozen=True)
class PolarPoint:
    """l1 polar coordinates: a simplex direction and a nonnegative radius."""

    direction: SimplexPoint
    radius: object  # nonnegative number (int, Fraction or float)

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")


def polar(v: Sequence) -> PolarPoint:
    """Polar decomposition of a nonzero vector with nonnegative entries.

    Exact when entries are ints or Fractions.  Raises ValueError at 0,
    where the direction is undefined.
    """
    if any(c < 0 for c in v):
        raise ValueError("polar is defined on the nonnegative orthant")
    radius = sum(v)
    if radius == 0:
        raise ValueError("polar coordinates are undefined at the zero vector")
    if all(isinstance(c, (int, Fraction)) for c in v):
        direction = tuple(Fraction(c, 1) / radius for c in v)
    else:
        direction = tuple(c / radius for c in v)
    return PolarPoint(SimplexPoint(direction), radius)


def in_cone(region: Callable[[SimplexPoint], bool], x: Sequence) -> bool:
    """Membership of x in cone(U) = {t*u : t in [0,1], u in U}.

    ``region`` is the indicator of U as a subset of the simplex.  The origin
    belongs to the cone over every nonempty U by convention.
    """
    if any(c < 0 for c in x):
        raise ValueError("cone membership is defined on the nonnegative orthant")
    radius = sum(x)
    if radius > 1:
        return False
    if radius == 0:
        return True
    return bool(region(polar(x).direction))
