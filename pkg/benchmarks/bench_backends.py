"""Benchmark the compiled series kernel against the pure-Python fallback.

Runs the same modular series evaluations through both backends and prints
a table of wall times plus the speedup.  Usage:

    python3 benchmarks/bench_backends.py [--p-max 499] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time
from fractions import Fraction

from hypercheck import _kernel_py
from hypercheck.padic import PrimePower
from hypercheck.series import two_f_one, _int_pairs
from hypercheck.suites import primes_in

try:
    from hypercheck import _speedups
except ImportError:
    _speedups = None


def sweep(kernel, primes, e) -> float:
    t0 = time.perf_counter()
    for p in primes:
        ctx = PrimePower(p, e)
        for x in (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(1, 6)):
            spec = two_f_one(x, p)
            upper, lower = _int_pairs(spec, p)
            kernel(
                upper, lower, spec.z.numerator, spec.z.denominator,
                0, spec.terms, p, e,
            )
    return time.perf_counter() - t0


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--p-max", type=int, default=499)
    ap.add_argument("--e", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    primes = primes_in(5, args.p_max)
    total_terms = sum(primes) * 4
    print(
        f"length-p series mod p^{args.e}, primes 5..{args.p_max} "
        f"({len(primes)} primes, {total_terms} terms per pass)"
    )
    rows = [("pure", _kernel_py.series_window_mod)]
    if _speedups is not None:
        rows.append(("ext", _speedups.series_window_mod))
    else:
        print("compiled backend not built; benchmarking pure only")
    times = {}
    for name, kernel in rows:
        best = min(sweep(kernel, primes, args.e) for _ in range(args.repeat))
        times[name] = best
        rate = total_terms / best / 1e6
        print(f"  {name:5} {best * 1e3:9.2f} ms   {rate:7.2f} M terms/s")
    if "ext" in times:
        print(f"  speedup: {times['pure'] / times['ext']:.1f}x")


if __name__ == "__main__":
    main()
