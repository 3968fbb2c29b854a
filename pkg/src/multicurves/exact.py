"""Exact arithmetic helpers shared across the package.

Orbit enumeration and cutoff tests must never misclassify a boundary case,
so lengths are kept exact: rational values as :class:`fractions.Fraction`,
Euclidean lengths as sums of square roots of rationals (:class:`SqrtSum`).

The only nontrivial operation is comparing ``sum_j c_j*sqrt(m_j)`` against a
rational bound.  With one or two irrational terms this is decided by clearing
square roots (squaring twice); with more terms we refine interval bounds,
which terminates because square roots of rationals with pairwise non-square
ratios are linearly independent over the rationals, so a nonzero difference
is bounded away from zero.
"""

from __future__ import annotations

import math
from fractions import Fraction


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, s, t) with a*s + b*t = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def _fraction_sqrt(m: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if _is_square(m.numerator) and _is_square(m.denominator):
        return Fraction(math.isqrt(m.numerator), math.isqrt(m.denominator))
    return None


def _sqrt_bounds(m: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Rational lower/upper bounds of sqrt(m) with gap < 2**-bits-ish."""
    # sqrt(a/b) = sqrt(a*b)/b; scale by 4**bits before the integer sqrt.
    n = m.numerator * m.denominator
    s = math.isqrt(n << (2 * bits))
    scale = m.denominator << bits
    return Fraction(s, scale), Fraction(s + 1, scale)


class SqrtSum:
    """Exact nonnegative real of the form sum_j c_j * sqrt(m_j).

    Coefficients c_j are positive rationals, radicands m_j nonnegative
    rationals.  Rational summands are carried as the radicand-1 term.
    Supports addition, scaling by positive rationals, exact comparison
    against rationals, and float conversion.
    """

    __slots__ = ("_terms",)

    def __init__(self, value: Fraction | int = 0):
        self._terms: dict[Fraction, Fraction] = {}
        if value:
            v = Fraction(value)
            if v < 0:
                raise ValueError("SqrtSum models nonnegative values")
            self._terms[Fraction(1)] = v

    @classmethod
    def sqrt(cls, radicand, coefficient=1) -> "SqrtSum":
        """The value coefficient * sqrt(radicand)."""
        m = Fraction(radicand)
        c = Fraction(coefficient)
        if m < 0 or c < 0:
            raise ValueError("negative input to SqrtSum.sqrt")
        out = cls()
        if c == 0 or m == 0:
            return out
        r = _fraction_sqrt(m)
        if r is not None:
            out._terms[Fraction(1)] = c * r
        else:
            out._terms[m] = c
        return out

    def _add_term(self, m: Fraction, c: Fraction) -> None:
        if c == 0:
            return
        # Fold into an existing class when m/m0 is a perfect rational square.
        for m0 in self._terms:
            s = _fraction_sqrt(m * m0)
            if s is not None:
                # sqrt(m) = s / m0 * sqrt(m0)
                self._terms[m0] += c * s / m0
                if self._terms[m0] == 0:
                    del self._terms[m0]
                return
        self._terms[m] = c

    def __add__(self, other):
        out = SqrtSum()
        out._terms = dict(self._terms)
        if isinstance(other, SqrtSum):
            for m, c in other._terms.items():
                out._add_term(m, c)
            return out
        if isinstance(other, (int, Fraction)):
            if other:
                out._add_term(Fraction(1), Fraction(other))
            return out
        return NotImplemented

    __radd__ = __add__

    def __mul__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        t = Fraction(other)
        if t < 0:
            raise ValueError("SqrtSum supports nonnegative scaling only")
        out = SqrtSum()
        if t:
            out._terms = {m: c * t for m, c in self._terms.items()}
        return out

    __rmul__ = __mul__

    def __float__(self) -> float:
        return sum(float(c) * math.sqrt(float(m)) for m, c in self._terms.items())

    @property
    def is_rational(self) -> bool:
        return all(m == 1 for m in self._terms)

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("value is irrational")
        return self._terms.get(Fraction(1), Fraction(0))

    def compare(self, q) -> int:
        """Sign of (self - q) for rational q: -1, 0 or +1. Exact."""
        q = Fraction(q)
        rat = self._terms.get(Fraction(1), Fraction(0))
        irr = [(c, m) for m, c in self._terms.items() if m != 1]
        diff = rat - q
        if not irr:
            return (diff > 0) - (diff < 0)
        if diff >= 0:
            return 1
        target = -diff  # positive rational; compare sum of sqrt terms with it
        if len(irr) == 1:
            c, m = irr[0]
            lhs, rhs = c * c * m, target * target
            return (lhs > rhs) - (lhs < rhs)
        if len(irr) == 2:
            (c1, m1), (c2, m2) = irr
            a, b = c1 * c1 * m1, c2 * c2 * m2
            u = target * target - a - b
            if u < 0:
                return 1
            lhs, rhs = 4 * a * b, u * u
            return (lhs > rhs) - (lhs < rhs)
        # Three or more independent radicals: never exactly rational, so
        # interval refinement terminates.
        bits = 64
        while True:
            lo = hi = Fraction(0)
            for c, m in irr:
                l, h = _sqrt_bounds(m, bits)
                lo += c * l
                hi += c * h
            if lo > target:
                return 1
            if hi < target:
                return -1
            bits *= 2

    def __le__(self, other):
        return self.compare(other) <= 0

    def __lt__(self, other):
        return self.compare(other) < 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __eq__(self, other):
        if isinstance(other, SqrtSum):
            merged = SqrtSum()
            merged._terms = dict(self._terms)
            probe = dict(other._terms)
            for m, c in probe.items():
                merged._add_term(m, -c)  # transient negative is fine here
            return not merged._terms
        if isinstance(other, (int, Fraction)):
            return self.compare(other) == 0
        return NotImplemented

    def __hash__(self):
        # Canonical terms make structural hashing sound.
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return "SqrtSum(0)"
        parts = []
        for m, c in sorted(self._terms.items()):
            parts.append(str(c) if m == 1 else f"{c}*sqrt({m})")
        return f"SqrtSum({' + '.join(parts)})"


def sqrt_pair_leq(a: Fraction, b: Fraction, bound: Fraction) -> bool:
    """Exact test of sqrt(a) + sqrt(b) <= bound for nonnegative rationals."""
    if bound < 0:
        return False
    u = bound * bound - a - b
    if u < 0:
        return False
    return 4 * a * b <= u * u
