"""Pure-Python enumeration kernel.

Same API and same algorithm as the compiled kernel in ``_speedups.pyx``,
implemented with plain Python integers (hence immune to overflow), roughly
30-60x slower.  Useful as a fallback and for cross-checking the compiled
version.

The job: stream the orbit of the standard curve pair under cutoff L, i.e.
all ordered pairs (v, w) of primitive vectors mod sign with |det(v, w)| = 1
and phi(v) + phi(w) <= L.  For each primitive v the solutions w of
det(v, w) = 1 mod sign form one affine line w0 + t*v, t integer, and phi is
convex along it, so the feasible t-set is an integer interval found by
ternary + binary search with exact integer predicates.

Scaling conventions (set up by the caller):
  * "inter" kind: phi(x, y) = sum_j w[j] * |a[j]*y - b[j]*x| with integer
    weights w[j] >= 1; cutoff ls is the integer-scaled bound.
  * "flat" kind: phi(x, y) = sqrt(x^2 + y^2); cutoff L = lnum/lden.
    sqrt(A) + sqrt(G) <= L is decided by clearing the square roots.
"""

from __future__ import annotations

import math

BACKEND = "pure"


def _egcd(a: int, b: int) -> tuple[int, int, int]:
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


def _argmin_convex(f, lo: int, hi: int) -> int:
    """A minimizer of a convex integer-argument function on [lo, hi]."""
    while hi - lo > 2:
        m1 = lo + (hi - lo) // 3
        m2 = hi - (hi - lo) // 3
        f1, f2 = f(m1), f(m2)
        if f1 < f2:
            hi = m2 - 1
        elif f1 > f2:
            lo = m1 + 1
        else:
            lo, hi = m1, m2
    best, fbest = lo, f(lo)
    for t in range(lo + 1, hi + 1):
        ft = f(t)
        if ft < fbest:
            best, fbest = t, ft
    return best


def _interval_below(f, bound: int, lo: int, hi: int):
    """Integer interval {t in [lo, hi] : f(t) <= bound} of a convex f."""
    t0 = _argmin_convex(f, lo, hi)
    if f(t0) > bound:
        return None
    a, b = t0, hi
    while a < b:
        mid = (a + b + 1) // 2
        if f(mid) <= bound:
            a = mid
        else:
            b = mid - 1
    t_hi = a
    a, b = lo, t0
    while a < b:
        mid = (a + b) // 2
        if f(mid) <= bound:
            b = mid
        else:
            a = mid + 1
    return a, t_hi


# ---------------------------------------------------------------------------
# intersection-kind functional (integer-scaled)
# ---------------------------------------------------------------------------


def _inter_phi(av, bv, wv, x: int, y: int) -> int:
    total = 0
    for j in range(len(av)):
        total += wv[j] * abs(av[j] * y - bv[j] * x)
    return total


def _inter_q_interval(av, bv, wv, ls: int, p: int):
    gamma = sum(wv[j] * abs(av[j]) for j in range(len(av)))
    delta = sum(wv[j] * abs(bv[j]) for j in range(len(av))) * p
    bq = (ls + delta) // gamma + 1
    return _interval_below(lambda q: _inter_phi(av, bv, wv, p, q), ls, -bq, bq)


def _inter_t_interval(av, bv, wv, rest: int, p, q, x0, y0):
    """Feasible t for phi(w0 + t v) <= rest, exact."""
    J = len(av)
    alphas = [av[j] * y0 - bv[j] * x0 for j in range(J)]
    betas = [av[j] * q - bv[j] * p for j in range(J)]
    gamma = sum(wv[j] * abs(betas[j]) for j in range(J))
    if gamma == 0:
        raise ValueError("functional vanishes along the curve: not filling")
    delta = sum(wv[j] * abs(alphas[j]) for j in range(J))
    bt = (rest + delta) // gamma + 1

    def g(t):
        total = 0
        for j in range(J):
            total += wv[j] * abs(alphas[j] + betas[j] * t)
        return total

    return _interval_below(g, rest, -bt, bt)


def _iter_inter(av, bv, wv, ls: int, p_lo: int, p_hi: int):
    """Yield (p, q, t_lo, t_hi, x0, y0) per primitive v in the p-range."""
    av = [int(x) for x in av]
    bv = [int(x) for x in bv]
    wv = [int(x) for x in wv]
    ls = int(ls)
    for p in range(p_lo, p_hi):
        if p == 0:
            phi_v = _inter_phi(av, bv, wv, 0, 1)
            if phi_v <= ls:
                iv = _inter_t_interval(av, bv, wv, ls - phi_v, 0, 1, -1, 0)
                if iv is not None:
                    yield 0, 1, iv[0], iv[1], -1, 0
            continue
        qiv = _inter_q_interval(av, bv, wv, ls, p)
        if qiv is None:
            continue
        for q in range(qiv[0], qiv[1] + 1):
            if math.gcd(p, abs(q)) != 1:
                continue
            phi_v = _inter_phi(av, bv, wv, p, q)
            rest = ls - phi_v
            _, s, t = _egcd(p, q)
            x0, y0 = -t, s
            iv = _inter_t_interval(av, bv, wv, rest, p, q, x0, y0)
            if iv is not None:
                yield p, q, iv[0], iv[1], x0, y0


# ---------------------------------------------------------------------------
# flat-kind functional (Euclidean norm, cutoff lnum/lden)
# ---------------------------------------------------------------------------


def _flat_t_interval(lnum: int, lden: int, p, q, x0, y0):
    A = p * p + q * q
    aa = lnum * lnum
    bb = lden * lden

    def feasible(t):
        gx = x0 + t * p
        gy = y0 + t * q
        G = gx * gx + gy * gy
        S = aa - bb * (A + G)
        if S < 0:
            return False
        return 4 * (bb * A) * (bb * G) <= S * S

    # Integer minimizers of G(t) are floor/ceil of -(v . w0) / |v|^2.
    num = -(x0 * p + y0 * q)
    t_floor = num // A
    t0 = t_floor
    gx, gy = x0 + t_floor * p, y0 + t_floor * q
    g_floor = gx * gx + gy * gy
    gx, gy = x0 + (t_floor + 1) * p, y0 + (t_floor + 1) * q
    if gx * gx + gy * gy < g_floor:
        t0 = t_floor + 1
    if not feasible(t0):
        return None
    bound = lnum // lden + math.isqrt(x0 * x0 + y0 * y0) + 2
    a, b = t0, bound
    while a < b:
        mid = (a + b + 1) // 2
        if feasible(mid):
            a = mid
        else:
            b = mid - 1
    t_hi = a
    a, b = -bound, t0
    while a < b:
        mid = (a + b) // 2
        if feasible(mid):
            b = mid
        else:
            a = mid + 1
    return a, t_hi


def _iter_flat(lnum: int, lden: int, p_lo: int, p_hi: int):
    lnum, lden = int(lnum), int(lden)
    aa = lnum * lnum
    bb = lden * lden
    for p in range(p_lo, p_hi):
        if p == 0:
            if bb <= aa:  # phi((0,1)) = 1 <= L
                iv = _flat_t_interval(lnum, lden, 0, 1, -1, 0)
                if iv is not None:
                    yield 0, 1, iv[0], iv[1], -1, 0
            continue
        n = aa - bb * p * p
        if n < 0:
            continue
        qmax = math.isqrt(n) // lden
        for q in range(-qmax, qmax + 1):
            if math.gcd(p, abs(q)) != 1:
                continue
            _, s, t = _egcd(p, q)
            x0, y0 = -t, s
            iv = _flat_t_interval(lnum, lden, p, q, x0, y0)
            if iv is not None:
                yield p, q, iv[0], iv[1], x0, y0


# ---------------------------------------------------------------------------
# public API (matches the compiled kernel)
# ---------------------------------------------------------------------------


def _dispatch(kind, args, p_lo, p_hi):
    if kind == "inter":
        av, bv, wv, ls = args
        return _iter_inter(av, bv, wv, ls, p_lo, p_hi)
    if kind == "flat":
        lnum, lden = args
        return _iter_flat(lnum, lden, p_lo, p_hi)
    raise ValueError(f"unknown kernel kind {kind!r}")


def count_pairs(kind: str, args, p_lo: int, p_hi: int) -> int:
    """Number of orbit pairs (v, w) with v in the given p-range."""
    total = 0
    for _, _, t_lo, t_hi, _, _ in _dispatch(kind, args, p_lo, p_hi):
        total += t_hi - t_lo + 1
    return total


def fill_pairs(kind: str, args, p_lo: int, p_hi: int, P, Q, X, Y) -> int:
    """Write rows (p, q, x, y) into the buffers; returns the row count.

    Row order: p ascending, then q ascending, then t ascending; w = (x, y)
    is sign-canonicalized.  The buffers must be large enough (use
    count_pairs first).
    """
    n = 0
    for p, q, t_lo, t_hi, x0, y0 in _dispatch(kind, args, p_lo, p_hi):
        for t in range(t_lo, t_hi + 1):
            x = x0 + t * p
            y = y0 + t * q
            if x < 0 or (x == 0 and y < 0):
                x, y = -x, -y
            P[n] = p
            Q[n] = q
            X[n] = x
            Y[n] = y
            n += 1
    return n
