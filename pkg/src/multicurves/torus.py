"""Exact model of curves and multicurves on the once-holed torus.

Essential simple closed curves are primitive integer vectors modulo sign;
the geometric intersection number of (p,q) and (p',q') is |p q' - q p'|.
The mapping class group acts through integer matrices of determinant one,
modulo sign, and diagonally on tuples of curves.  The chart for measured
laminations is the plane modulo sign, with curve (p,q) sitting at (p,q).

Everything here is exact: weights are rationals, flat lengths are square
roots of rationals (:class:`multicurves.exact.SqrtSum`).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .exact import SqrtSum


@dataclass(frozen=True)
class CurveClass:
    """Primitive vector (p, q) modulo sign; canonical rep has p > 0, or (0, 1)."""

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if p == 0 and q == 0:
            raise ValueError("(0, 0) is not a curve")
        if math.gcd(abs(p), abs(q)) != 1:
            raise ValueError(f"({p}, {q}) is not primitive")
        if p < 0 or (p == 0 and q < 0):
            object.__setattr__(self, "p", -p)
            object.__setattr__(self, "q", -q)

    def __str__(self):
        return f"({self.p},{self.q})"


ALPHA = CurveClass(1, 0)
BETA = CurveClass(0, 1)


def intersection(u: CurveClass, v: CurveClass) -> int:
    """Geometric intersection number |p_u q_v - q_u p_v|."""
    return abs(u.p * v.q - u.q * v.p)


@dataclass(frozen=True)
class MCGElement:
    """Mapping class acting on curves: integer matrix [[a, b], [c, d]], det 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("matrix must have determinant 1")

    @classmethod
    def identity(cls) -> "MCGElement":
        return cls(1, 0, 0, 1)

    def inverse(self) -> "MCGElement":
        return MCGElement(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: "MCGElement") -> "MCGElement":
        return MCGElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def act_on(self, curve: CurveClass) -> CurveClass:
        return CurveClass(
            self.a * curve.p + self.b * curve.q,
            self.c * curve.p + self.d * curve.q,
        )


TWIST = MCGElement(1, 1, 0, 1)
ROTATE = MCGElement(0, 1, -1, 0)


def _as_weight(w) -> Fraction:
    w = Fraction(w)
    if w <= 0:
        raise ValueError("weights must be positive")
    return w


@dataclass(frozen=True)
class KMulticurve:
    """Ordered tuple of weighted curves; the orbit objects we enumerate."""

    components: tuple  # of (CurveClass, Fraction) pairs

    def __post_init__(self):
        comps = tuple((c, _as_weight(w)) for c, w in self.components)
        if not comps:
            raise ValueError("a multicurve needs at least one component")
        object.__setattr__(self, "components", comps)

    @classmethod
    def standard_pair(cls) -> "KMulticurve":
        return cls(((ALPHA, 1), (BETA, 1)))

    @classmethod
    def of_curves(cls, *curves: CurveClass) -> "KMulticurve":
        return cls(tuple((c, 1) for c in curves))

    @property
    def k(self) -> int:
        return len(self.components)

    def curves(self) -> tuple:
        return tuple(c for c, _ in self.components)

    def weights(self) -> tuple:
        return tuple(w for _, w in self.components)

    def serialize(self) -> str:
        """Text form ``w1*(p1,q1);w2*(p2,q2);...`` with rational weights."""
        return ";".join(f"{w}*({c.p},{c.q})" for c, w in self.components)

    @classmethod
    def parse(cls, text: str) -> "KMulticurve":
        comps = []
        for part in text.strip().split(";"):
            m = re.fullmatch(
                r"\s*(?:([0-9]+(?:/[0-9]+)?)\*)?\(\s*(-?[0-9]+)\s*,\s*(-?[0-9]+)\s*\)\s*",
                part,
            )
            if not m:
                raise ValueError(f"cannot parse multicurve component {part!r}")
            w = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            comps.append((CurveClass(int(m.group(2)), int(m.group(3))), w))
        return cls(tuple(comps))


def apply(A: MCGElement, gamma: KMulticurve) -> KMulticurve:
    """Diagonal action on a multicurve; weights are untouched."""
    return KMulticurve(tuple((A.act_on(c), w) for c, w in gamma.components))


@dataclass(frozen=True)
class FillingMulticurve:
    """Weighted multicurve with at least two non-parallel components.

    On the torus, sum_j w_j |det(v_j, .)| vanishes exactly on the common
    direction of the v_j, so spanning two projective directions is the
    filling criterion; it is enforced here, at construction.
    """

    parts: tuple  # of (CurveClass, Fraction) pairs

    def __post_init__(self):
        parts = tuple((c, _as_weight(w)) for c, w in self.parts)
        object.__setattr__(self, "parts", parts)
        if len({c for c, _ in parts}) < 2:
            raise ValueError("not filling: all components are parallel")

    def serialize(self) -> str:
        return ";".join(f"{w}*({c.p},{c.q})" for c, w in self.parts)


ChartValue = Union[Fraction, SqrtSum]


@dataclass(frozen=True)
class LengthFunctional:
    """Positive 1-homogeneous length on curves and on the chart plane.

    kind "intersection": weighted intersection with a filling multicurve,
    lambda -> sum_j w_j |det(v_j, lambda)|; exact rational values.
    kind "flat": Euclidean norm sqrt(p^2 + q^2); exact SqrtSum values.
    """

    kind: str
    sigma: FillingMulticurve | None = None

    def __post_init__(self):
        if self.kind == "intersection":
            if self.sigma is None:
                raise ValueError("intersection functional needs a multicurve")
        elif self.kind == "flat":
            if self.sigma is not None:
                raise ValueError("flat functional takes no multicurve")
        else:
            raise ValueError(f"unknown functional kind {self.kind!r}")

    @classmethod
    def of_intersection(cls, sigma: FillingMulticurve) -> "LengthFunctional":
        return cls("intersection", sigma)

    @classmethod
    def flat(cls) -> "LengthFunctional":
        return cls("flat")

    def of_chart(self, x, y) -> ChartValue:
        """Value at the chart point (x, y), taken modulo sign."""
        if self.kind == "intersection":
            x, y = Fraction(x), Fraction(y)
            return sum(
                (w * abs(Fraction(c.p) * y - Fraction(c.q) * x) for c, w in self.sigma.parts),
                Fraction(0),
            )
        return SqrtSum.sqrt(Fraction(x) ** 2 + Fraction(y) ** 2)

    def of_class(self, curve: CurveClass) -> ChartValue:
        return self.of_chart(curve.p, curve.q)

    def component_values(self, gamma: KMulticurve) -> tuple:
        """Per-component lengths weight_i * value(curve_i)."""
        return tuple(w * self.of_class(c) for c, w in gamma.components)

    def total(self, gamma: KMulticurve) -> ChartValue:
        vals = self.component_values(gamma)
        out = vals[0]
        for v in vals[1:]:
            out = out + v
        return out

    def chart_array(self, p: np.ndarray, q: np.ndarray) -> np.ndarray:
        """Vectorized float evaluation on integer chart arrays."""
        if self.kind == "intersection":
            out = np.zeros(len(p), dtype=np.float64)
            for c, w in self.sigma.parts:
                out += float(w) * np.abs(
                    float(c.p) * q.astype(np.float64) - float(c.q) * p.astype(np.float64)
                )
            return out
        return np.hypot(p.astype(np.float64), q.astype(np.float64))

    def serialize(self) -> str:
        if self.kind == "flat":
            return "flat"
        return "i:" + "+".join(f"{w}*({c.p},{c.q})" for c, w in self.sigma.parts)


ALPHA_BETA = LengthFunctional.of_intersection(
    FillingMulticurve(((ALPHA, 1), (BETA, 1)))
)


def eval_functional(phi: LengthFunctional, x) -> ChartValue:
    """Evaluate a functional on a CurveClass or a chart pair (x, y)."""
    if isinstance(x, CurveClass):
        return phi.of_class(x)
    x1, x2 = x
    return phi.of_chart(x1, x2)


def intersection_vector(sigma: FillingMulticurve, gamma: KMulticurve) -> tuple:
    """Vector (weight_i * sum_j w_j i(v_j, curve_i))_i of exact rationals."""
    out = []
    for c, weight in gamma.components:
        out.append(weight * sum(w * intersection(v, c) for v, w in sigma.parts))
    return tuple(out)


def parse_functional(spec: str) -> LengthFunctional:
    """Parse the CLI mini-language for functionals.

    ``flat`` is the Euclidean norm; ``i:<w>*(p,q)+<w>*(p,q)+...`` is weighted
    intersection, with ``a`` and ``b`` accepted as shorthand for the curves
    (1,0) and (0,1) and weights defaulting to 1, e.g. ``i:a+b`` or
    ``i:2*(1,0)+1/3*(1,1)``.
    """
    spec = spec.strip()
    if spec == "flat":
        return LengthFunctional.flat()
    if not spec.startswith("i:"):
        raise ValueError(f"unknown functional spec {spec!r}")
    parts = []
    for token in spec[2:].split("+"):
        token = token.strip()
        m = re.fullmatch(
            r"(?:([0-9]+(?:/[0-9]+)?)\*)?(a|b|\(\s*(-?[0-9]+)\s*,\s*(-?[0-9]+)\s*\))",
            token,
        )
        if not m:
            raise ValueError(f"cannot parse functional term {token!r}")
        w = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        if m.group(2) == "a":
            curve = ALPHA
        elif m.group(2) == "b":
            curve = BETA
        else:
            curve = CurveClass(int(m.group(3)), int(m.group(4)))
        parts.append((curve, w))
    return LengthFunctional.of_intersection(FillingMulticurve(tuple(parts)))
