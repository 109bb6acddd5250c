"""Pure-Python series kernel.

`series_window_mod` is the single hot loop of the whole checker: it walks
the term recurrence of a truncated hypergeometric sum and accumulates a
window of terms mod p^e.  The compiled twin in ``_speedups.pyx`` follows
this code line for line; any change here must be mirrored there.

Parameters are passed pre-validated as integer pairs so the kernel does
no rational arithmetic:

* ``upper`` / ``lower``: sequences of ``(num, den)`` with den > 0 and
  den coprime to p (the parameter a contributes a factor a + k).
* ``zn, zd``: numerator/denominator of the p-coprime argument z.
* The window is ``k_start <= k < k_stop``; term 0 is 1.

Each term is carried as (valuation, unit): p-powers are stripped from
every factor before the unit is reduced, so p-divisible factors cost no
precision.  A zero upper factor kills all later terms (the sum is then
exactly a polynomial); a zero lower factor is a pole and raises.
"""

from __future__ import annotations

from .errors import NegativeValuation, PoleInLowerParameter


def series_window_mod(
    upper: tuple[tuple[int, int], ...],
    lower: tuple[tuple[int, int], ...],
    zn: int,
    zd: int,
    k_start: int,
    k_stop: int,
    p: int,
    e: int,
) -> int:
    m = p**e
    zu = zn % m * pow(zd % m, -1, m) % m
    upper_inv = [pow(d % m, -1, m) for _, d in upper]
    acc = 0
    v = 0  # valuation of term k
    u = 1 % m  # unit of term k
    for k in range(k_stop):
        if k >= k_start and v < e:
            acc = (acc + u * p**v) % m
        if k + 1 >= k_stop:
            break
        # step to term k+1
        nv = v
        nu = u * zu % m
        dead = False
        for (an, ad), inv_d in zip(upper, upper_inv):
            f = an + k * ad
            if f == 0:
                dead = True
                break
            while f % p == 0:
                f //= p
                nv += 1
            nu = nu * (f % m) % m * inv_d % m
        if dead:
            break  # every later term is exactly zero
        f = k + 1
        while f % p == 0:
            f //= p
            nv -= 1
        nu = nu * pow(f % m, -1, m) % m
        for bn, bd in lower:
            f = bn + k * bd
            if f == 0:
                raise PoleInLowerParameter(
                    f"lower parameter {bn}/{bd} hits a pole at k={k}"
                )
            while f % p == 0:
                f //= p
                nv -= 1
            nu = nu * pow(f % m, -1, m) % m * (bd % m) % m
        if nv < 0:
            raise NegativeValuation(f"term {k + 1} has negative p-adic valuation")
        v, u = nv, nu
    return acc
