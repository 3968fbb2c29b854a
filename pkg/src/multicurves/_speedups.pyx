# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel.

Mirror of ``multicurves._speedups_py`` in C arithmetic (signed 64-bit).
Callers guarantee that every intermediate value fits; queries that might
overflow are routed to the pure backend instead (see orbits._plan_kernel).
"""

from libc.stdint cimport int64_t

BACKEND = "compiled"

DEF MAXJ = 16


cdef int64_t _abs64(int64_t x) noexcept nogil:
    return -x if x < 0 else x


cdef int64_t _gcd64(int64_t a, int64_t b) noexcept nogil:
    cdef int64_t t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef void _egcd64(int64_t a, int64_t b, int64_t* s_out, int64_t* t_out) noexcept nogil:
    cdef int64_t old_r = a, r = b
    cdef int64_t old_s = 1, s = 0
    cdef int64_t old_t = 0, t = 1
    cdef int64_t q, tmp
    while r != 0:
        q = old_r // r
        tmp = old_r - q * r
        old_r = r
        r = tmp
        tmp = old_s - q * s
        old_s = s
        s = tmp
        tmp = old_t - q * t
        old_t = t
        t = tmp
    if old_r < 0:
        old_s = -old_s
        old_t = -old_t
    s_out[0] = old_s
    t_out[0] = old_t


cdef int64_t _isqrt64(int64_t n) noexcept nogil:
    cdef int64_t x, y
    if n < 2:
        return n if n > 0 else 0
    x = n
    y = (x + 1) // 2
    while y < x:
        x = y
        y = (x + n // x) // 2
    return x


# ---------------------------------------------------------------------------
# integer-scaled intersection functional
# ---------------------------------------------------------------------------


cdef int64_t _phi_inter(int J, int64_t* av, int64_t* bv, int64_t* wv,
                        int64_t x, int64_t y) noexcept nogil:
    cdef int64_t total = 0
    cdef int j
    for j in range(J):
        total += wv[j] * _abs64(av[j] * y - bv[j] * x)
    return total


cdef int64_t _g_inter(int J, int64_t* alphas, int64_t* betas, int64_t* wv,
                      int64_t t) noexcept nogil:
    cdef int64_t total = 0
    cdef int j
    for j in range(J):
        total += wv[j] * _abs64(alphas[j] + betas[j] * t)
    return total


cdef bint _interval_inter(int J, int64_t* alphas, int64_t* betas, int64_t* wv,
                          int64_t rest, int64_t* out_lo, int64_t* out_hi) noexcept nogil:
    """Feasible t-interval of sum w|alpha + beta t| <= rest; 0 if empty."""
    cdef int64_t gamma = 0, delta = 0
    cdef int j
    for j in range(J):
        gamma += wv[j] * _abs64(betas[j])
        delta += wv[j] * _abs64(alphas[j])
    if gamma == 0:
        # functional vanishes along v: excluded by the filling check upstream
        return 0
    cdef int64_t bt = (rest + delta) // gamma + 1
    cdef int64_t lo = -bt, hi = bt, m1, m2, f1, f2, t0, a, b, mid
    while hi - lo > 2:
        m1 = lo + (hi - lo) // 3
        m2 = hi - (hi - lo) // 3
        f1 = _g_inter(J, alphas, betas, wv, m1)
        f2 = _g_inter(J, alphas, betas, wv, m2)
        if f1 < f2:
            hi = m2 - 1
        elif f1 > f2:
            lo = m1 + 1
        else:
            lo = m1
            hi = m2
    t0 = lo
    f1 = _g_inter(J, alphas, betas, wv, lo)
    for mid in range(lo + 1, hi + 1):
        f2 = _g_inter(J, alphas, betas, wv, mid)
        if f2 < f1:
            f1 = f2
            t0 = mid
    if f1 > rest:
        return 0
    # midpoints via nonnegative offsets: C division truncates toward zero
    a = t0
    b = bt
    while a < b:
        mid = a + (b - a + 1) // 2
        if _g_inter(J, alphas, betas, wv, mid) <= rest:
            a = mid
        else:
            b = mid - 1
    out_hi[0] = a
    a = -bt
    b = t0
    while a < b:
        mid = a + (b - a) // 2
        if _g_inter(J, alphas, betas, wv, mid) <= rest:
            b = mid
        else:
            a = mid + 1
    out_lo[0] = a
    return 1


cdef bint _q_interval_inter(int J, int64_t* av, int64_t* bv, int64_t* wv,
                            int64_t ls, int64_t p,
                            int64_t* q_lo, int64_t* q_hi) noexcept nogil:
    # phi(p, q) as a function of q is sum w|a q - b p|: alpha = -b p, beta = a
    cdef int64_t alphas[MAXJ]
    cdef int64_t betas[MAXJ]
    cdef int j
    for j in range(J):
        alphas[j] = -bv[j] * p
        betas[j] = av[j]
    return _interval_inter(J, alphas, betas, wv, ls, q_lo, q_hi)


# ---------------------------------------------------------------------------
# flat (Euclidean) functional, cutoff lnum/lden
# ---------------------------------------------------------------------------


cdef bint _feasible_flat(int64_t aa, int64_t bb, int64_t A,
                         int64_t p, int64_t q, int64_t x0, int64_t y0,
                         int64_t t) noexcept nogil:
    cdef int64_t gx = x0 + t * p
    cdef int64_t gy = y0 + t * q
    cdef int64_t G = gx * gx + gy * gy
    cdef int64_t S = aa - bb * (A + G)
    if S < 0:
        return 0
    return 4 * (bb * A) * (bb * G) <= S * S


cdef bint _interval_flat(int64_t lnum, int64_t lden,
                         int64_t p, int64_t q, int64_t x0, int64_t y0,
                         int64_t* out_lo, int64_t* out_hi) noexcept nogil:
    cdef int64_t A = p * p + q * q
    cdef int64_t aa = lnum * lnum
    cdef int64_t bb = lden * lden
    cdef int64_t num = -(x0 * p + y0 * q)
    cdef int64_t t_floor, t0, g0, g1, gx, gy, bound, a, b, mid
    # C division truncates toward zero; emulate floor (A > 0)
    t_floor = num / A
    if t_floor * A > num:
        t_floor -= 1
    gx = x0 + t_floor * p
    gy = y0 + t_floor * q
    g0 = gx * gx + gy * gy
    gx = x0 + (t_floor + 1) * p
    gy = y0 + (t_floor + 1) * q
    g1 = gx * gx + gy * gy
    t0 = t_floor if g0 <= g1 else t_floor + 1
    if not _feasible_flat(aa, bb, A, p, q, x0, y0, t0):
        return 0
    bound = lnum // lden + _isqrt64(x0 * x0 + y0 * y0) + 2
    a = t0
    b = bound
    while a < b:
        mid = a + (b - a + 1) // 2
        if _feasible_flat(aa, bb, A, p, q, x0, y0, mid):
            a = mid
        else:
            b = mid - 1
    out_hi[0] = a
    a = -bound
    b = t0
    while a < b:
        mid = a + (b - a) // 2
        if _feasible_flat(aa, bb, A, p, q, x0, y0, mid):
            b = mid
        else:
            a = mid + 1
    out_lo[0] = a
    return 1


# ---------------------------------------------------------------------------
# public API (matches the pure backend)
# ---------------------------------------------------------------------------


def count_pairs(str kind, tuple args, long long p_lo, long long p_hi):
    if kind == "inter":
        return _count_inter(args, p_lo, p_hi)
    if kind == "flat":
        return _count_flat(args, p_lo, p_hi)
    raise ValueError(f"unknown kernel kind {kind!r}")


def fill_pairs(str kind, tuple args, long long p_lo, long long p_hi,
               long long[::1] P, long long[::1] Q,
               long long[::1] X, long long[::1] Y):
    if kind == "inter":
        return _fill_inter(args, p_lo, p_hi, P, Q, X, Y)
    if kind == "flat":
        return _fill_flat(args, p_lo, p_hi, P, Q, X, Y)
    raise ValueError(f"unknown kernel kind {kind!r}")


cdef _unpack_inter(tuple args, int64_t* av, int64_t* bv, int64_t* wv, int* J,
                   int64_t* ls):
    a_arr, b_arr, w_arr, ls_py = args
    cdef int j, n
    n = len(a_arr)
    if n > MAXJ:
        raise ValueError(f"compiled kernel supports at most {MAXJ} parts")
    for j in range(n):
        av[j] = a_arr[j]
        bv[j] = b_arr[j]
        wv[j] = w_arr[j]
    J[0] = n
    ls[0] = ls_py


cdef object _count_inter(tuple args, int64_t p_lo, int64_t p_hi):
    cdef int64_t av[MAXJ]
    cdef int64_t bv[MAXJ]
    cdef int64_t wv[MAXJ]
    cdef int J = 0
    cdef int64_t ls = 0
    _unpack_inter(args, av, bv, wv, &J, &ls)
    cdef int64_t total = 0, p, q, q_lo, q_hi, t_lo, t_hi, phi_v, s, t, x0, y0
    cdef int64_t alphas[MAXJ]
    cdef int64_t betas[MAXJ]
    cdef int j
    with nogil:
        for p in range(p_lo, p_hi):
            if p == 0:
                phi_v = _phi_inter(J, av, bv, wv, 0, 1)
                if phi_v <= ls:
                    for j in range(J):
                        alphas[j] = av[j] * 0 - bv[j] * (-1)
                        betas[j] = av[j] * 1 - bv[j] * 0
                    if _interval_inter(J, alphas, betas, wv, ls - phi_v,
                                       &t_lo, &t_hi):
                        total += t_hi - t_lo + 1
                continue
            if not _q_interval_inter(J, av, bv, wv, ls, p, &q_lo, &q_hi):
                continue
            for q in range(q_lo, q_hi + 1):
                if _gcd64(p, q) != 1:
                    continue
                phi_v = _phi_inter(J, av, bv, wv, p, q)
                _egcd64(p, q, &s, &t)
                x0 = -t
                y0 = s
                for j in range(J):
                    alphas[j] = av[j] * y0 - bv[j] * x0
                    betas[j] = av[j] * q - bv[j] * p
                if _interval_inter(J, alphas, betas, wv, ls - phi_v,
                                   &t_lo, &t_hi):
                    total += t_hi - t_lo + 1
    return total


cdef object _fill_inter(tuple args, int64_t p_lo, int64_t p_hi,
                        long long[::1] P, long long[::1] Q,
                        long long[::1] X, long long[::1] Y):
    cdef int64_t av[MAXJ]
    cdef int64_t bv[MAXJ]
    cdef int64_t wv[MAXJ]
    cdef int J = 0
    cdef int64_t ls = 0
    _unpack_inter(args, av, bv, wv, &J, &ls)
    cdef int64_t n = 0, cap = P.shape[0]
    cdef int64_t p, q, q_lo, q_hi, t_lo, t_hi, phi_v, s, t, x0, y0, x, y, tt
    cdef int64_t alphas[MAXJ]
    cdef int64_t betas[MAXJ]
    cdef int j
    cdef bint overflow = 0
    with nogil:
        for p in range(p_lo, p_hi):
            if overflow:
                break
            if p == 0:
                phi_v = _phi_inter(J, av, bv, wv, 0, 1)
                if phi_v > ls:
                    continue
                for j in range(J):
                    alphas[j] = av[j] * 0 - bv[j] * (-1)
                    betas[j] = av[j]
                if not _interval_inter(J, alphas, betas, wv, ls - phi_v,
                                       &t_lo, &t_hi):
                    continue
                for tt in range(t_lo, t_hi + 1):
                    if n >= cap:
                        overflow = 1
                        break
                    x = -1
                    y = tt
                    if x < 0 or (x == 0 and y < 0):
                        x = -x
                        y = -y
                    P[n] = 0
                    Q[n] = 1
                    X[n] = x
                    Y[n] = y
                    n += 1
                continue
            if not _q_interval_inter(J, av, bv, wv, ls, p, &q_lo, &q_hi):
                continue
            for q in range(q_lo, q_hi + 1):
                if _gcd64(p, q) != 1:
                    continue
                phi_v = _phi_inter(J, av, bv, wv, p, q)
                _egcd64(p, q, &s, &t)
                x0 = -t
                y0 = s
                for j in range(J):
                    alphas[j] = av[j] * y0 - bv[j] * x0
                    betas[j] = av[j] * q - bv[j] * p
                if not _interval_inter(J, alphas, betas, wv, ls - phi_v,
                                       &t_lo, &t_hi):
                    continue
                for tt in range(t_lo, t_hi + 1):
                    if n >= cap:
                        overflow = 1
                        break
                    x = x0 + tt * p
                    y = y0 + tt * q
                    if x < 0 or (x == 0 and y < 0):
                        x = -x
                        y = -y
                    P[n] = p
                    Q[n] = q
                    X[n] = x
                    Y[n] = y
                    n += 1
                if overflow:
                    break
    if overflow:
        raise ValueError("output buffers too small for the requested range")
    return n


cdef object _count_flat(tuple args, int64_t p_lo, int64_t p_hi):
    cdef int64_t lnum = args[0]
    cdef int64_t lden = args[1]
    cdef int64_t aa = lnum * lnum
    cdef int64_t bb = lden * lden
    cdef int64_t total = 0, p, q, qmax, nres, s, t, x0, y0, t_lo, t_hi
    with nogil:
        for p in range(p_lo, p_hi):
            if p == 0:
                if bb <= aa:
                    if _interval_flat(lnum, lden, 0, 1, -1, 0, &t_lo, &t_hi):
                        total += t_hi - t_lo + 1
                continue
            nres = aa - bb * p * p
            if nres < 0:
                continue
            qmax = _isqrt64(nres) // lden
            for q in range(-qmax, qmax + 1):
                if _gcd64(p, q) != 1:
                    continue
                _egcd64(p, q, &s, &t)
                x0 = -t
                y0 = s
                if _interval_flat(lnum, lden, p, q, x0, y0, &t_lo, &t_hi):
                    total += t_hi - t_lo + 1
    return total


cdef object _fill_flat(tuple args, int64_t p_lo, int64_t p_hi,
                       long long[::1] P, long long[::1] Q,
                       long long[::1] X, long long[::1] Y):
    cdef int64_t lnum = args[0]
    cdef int64_t lden = args[1]
    cdef int64_t aa = lnum * lnum
    cdef int64_t bb = lden * lden
    cdef int64_t n = 0, cap = P.shape[0]
    cdef int64_t p, q, qmax, nres, s, t, x0, y0, t_lo, t_hi, x, y, tt
    cdef bint overflow = 0
    with nogil:
        for p in range(p_lo, p_hi):
            if overflow:
                break
            if p == 0:
                if bb > aa:
                    continue
                if not _interval_flat(lnum, lden, 0, 1, -1, 0, &t_lo, &t_hi):
                    continue
                for tt in range(t_lo, t_hi + 1):
                    if n >= cap:
                        overflow = 1
                        break
                    x = -1
                    y = tt
                    if x < 0 or (x == 0 and y < 0):
                        x = -x
                        y = -y
                    P[n] = 0
                    Q[n] = 1
                    X[n] = x
                    Y[n] = y
                    n += 1
                continue
            nres = aa - bb * p * p
            if nres < 0:
                continue
            qmax = _isqrt64(nres) // lden
            for q in range(-qmax, qmax + 1):
                if _gcd64(p, q) != 1:
                    continue
                _egcd64(p, q, &s, &t)
                x0 = -t
                y0 = s
                if not _interval_flat(lnum, lden, p, q, x0, y0, &t_lo, &t_hi):
                    continue
                for tt in range(t_lo, t_hi + 1):
                    if n >= cap:
                        overflow = 1
                        break
                    x = x0 + tt * p
                    y = y0 + tt * q
                    if x < 0 or (x == 0 and y < 0):
                        x = -x
                        y = -y
                    P[n] = p
                    Q[n] = q
                    X[n] = x
                    Y[n] = y
                    n += 1
                if overflow:
                    break
    if overflow:
        raise ValueError("output buffers too small for the requested range")
    return n
