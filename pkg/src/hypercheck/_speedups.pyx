# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of the pure-Python series kernel.

Same algorithm as ``_kernel_py.series_window_mod``, with terms carried in
64-bit words and products widened to 128 bits.  The dispatcher in
``_kernel`` only routes calls here when the modulus and parameters fit
the word size, so the arithmetic below never overflows.
"""

from .errors import NegativeValuation, PoleInLowerParameter

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

ctypedef long long i64
ctypedef unsigned long long u64

DEF MAXPARAMS = 8


cdef inline u64 mulmod(u64 a, u64 b, u64 m):
    return <u64>((<u128>a * b) % m)


cdef inline u64 normmod(i64 a, u64 m):
    cdef i64 r = a % <i64>m
    if r < 0:
        r += <i64>m
    return <u64>r


cdef u64 invmod(u64 a, u64 m) except? 0:
    """Inverse of a unit mod m by extended Euclid."""
    cdef i64 t = 0, newt = 1, r = <i64>m, newr = <i64>a, q, tmp
    while newr != 0:
        q = r / newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if r != 1:
        raise ZeroDivisionError("element is not invertible")
    if t < 0:
        t += <i64>m
    return <u64>t


def series_window_mod(upper, lower, zn, zd, k_start, k_stop, p, e):
    cdef i64 cp = p
    cdef int ce = e, i
    cdef u64 m = 1
    for i in range(ce):
        m *= <u64>cp
    cdef int n_up = len(upper)
    cdef int n_lo = len(lower)
    if n_up > MAXPARAMS or n_lo > MAXPARAMS:
        raise ValueError("too many parameters for the compiled kernel")
    cdef i64 ua[MAXPARAMS]
    cdef i64 ud[MAXPARAMS]
    cdef u64 udi[MAXPARAMS]
    cdef i64 la[MAXPARAMS]
    cdef i64 ld[MAXPARAMS]
    cdef u64 ldu[MAXPARAMS]
    for i in range(n_up):
        ua[i] = upper[i][0]
        ud[i] = upper[i][1]
        udi[i] = invmod(normmod(ud[i], m), m)
    for i in range(n_lo):
        la[i] = lower[i][0]
        ld[i] = lower[i][1]
        ldu[i] = normmod(ld[i], m)
    cdef u64 zu = mulmod(normmod(zn, m), invmod(normmod(zd, m), m), m)
    cdef i64 start = k_start, stop = k_stop, k, f, v = 0, nv
    cdef u64 acc = 0, u = 1 % m, nu, pv
    cdef bint dead
    for k in range(stop):
        if k >= start and v < ce:
            pv = 1
            for i in range(<int>v):
                pv *= <u64>cp
            acc = (acc + mulmod(u, pv, m)) % m
        if k + 1 >= stop:
            break
        nv = v
        nu = mulmod(u, zu, m)
        dead = False
        for i in range(n_up):
            f = ua[i] + k * ud[i]
            if f == 0:
                dead = True
                break
            while f % cp == 0:
                f = f / cp
                nv += 1
            nu = mulmod(mulmod(nu, normmod(f, m), m), udi[i], m)
        if dead:
            break
        f = k + 1
        while f % cp == 0:
            f = f / cp
            nv -= 1
        nu = mulmod(nu, invmod(normmod(f, m), m), m)
        for i in range(n_lo):
            f = la[i] + k * ld[i]
            if f == 0:
                raise PoleInLowerParameter(
                    f"lower parameter {la[i]}/{ld[i]} hits a pole at k={k}"
                )
            while f % cp == 0:
                f = f / cp
                nv -= 1
            nu = mulmod(mulmod(nu, invmod(normmod(f, m), m), m), ldu[i], m)
        if nv < 0:
            raise NegativeValuation(f"term {k + 1} has negative p-adic valuation")
        v = nv
        u = nu
    return acc
