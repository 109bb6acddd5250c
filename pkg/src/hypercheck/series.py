"""Truncated hypergeometric sums: exact and modular engines, plus the four
quadratic-character families and their central-binomial reformulation.

A `SeriesSpec` is the sum over 0 <= k < terms of

    prod (a_i)_k / (prod (b_j)_k * k!) * z^k

so ``two_f_one(x, n)`` (upper x, 1-x; lower 1; z = 1) gives the truncated
2F1 values the congruence suites are about.  The modular engine walks the
term recurrence with valuation-tracked units (see ``_kernel``); the exact
engine accumulates one big fraction and is the independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import _kernel
from .errors import NonUnitDenominator, PoleInLowerParameter
from .padic import PadicInput, PrimePower, Residue, ScaledUnit, as_fraction


@dataclass(frozen=True)
class SeriesSpec:
    """Upper/lower parameters, argument, and number of terms (k! implicit)."""

    upper: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]
    z: Fraction
    terms: int

    def __post_init__(self):
        if self.terms < 0:
            raise ValueError("terms must be >= 0")


def series_spec(upper, lower, z, terms: int) -> SeriesSpec:
    """Build a SeriesSpec from any mix of ints and Fractions."""
    return SeriesSpec(
        tuple(as_fraction(a) for a in upper),
        tuple(as_fraction(b) for b in lower),
        as_fraction(z),
        terms,
    )


def two_f_one(x: PadicInput, terms: int) -> SeriesSpec:
    """The truncated 2F1(x, 1-x; 1; 1) sum with ``terms`` terms."""
    q = as_fraction(x)
    return series_spec((q, 1 - q), (1,), 1, terms)


def pochhammer_exact(a: PadicInput, k: int) -> Fraction:
    """Rising factorial a (a+1) ... (a+k-1)."""
    q = as_fraction(a)
    out = Fraction(1)
    for i in range(k):
        out *= q + i
    return out


# --- exact engine ----------------------------------------------------------


def window_sum_exact(spec: SeriesSpec, k_start: int, k_stop: int) -> Fraction:
    """Sum of terms k_start <= k < k_stop as one exact rational.

    The running term and the accumulator share a common denominator that
    only ever gets multiplied, so no per-step normalization happens; the
    single Fraction reduction is at the end.
    """
    if k_stop <= k_start:
        return Fraction(0)
    acc = 0  # acc / den
    term = 1  # term / den
    den = 1
    for k in range(k_stop):
        if k >= k_start:
            acc += term
        if k + 1 >= k_stop:
            break
        num_step = 1
        for a in spec.upper:
            num_step *= a.numerator + k * a.denominator
        if num_step == 0:
            break  # later terms are all exactly zero
        num_step *= spec.z.numerator
        den_step = (k + 1) * spec.z.denominator
        for a in spec.upper:
            den_step *= a.denominator
        for b in spec.lower:
            f = b.numerator + k * b.denominator
            if f == 0:
                raise PoleInLowerParameter(f"lower parameter {b} hits a pole at k={k}")
            den_step *= f
            num_step *= b.denominator
        term *= num_step
        acc *= den_step
        den *= den_step
    return Fraction(acc, den)


def truncated_series_exact(spec: SeriesSpec) -> Fraction:
    return window_sum_exact(spec, 0, spec.terms)


# --- modular engine --------------------------------------------------------


def _int_pairs(spec: SeriesSpec, p: int):
    for a in (*spec.upper, *spec.lower, spec.z):
        if a.denominator % p == 0:
            raise NonUnitDenominator(f"series parameter {a} has denominator divisible by {p}")
    if spec.z.numerator % p == 0:
        raise NonUnitDenominator(f"series argument {spec.z} is not a unit mod {p}")
    upper = tuple((a.numerator, a.denominator) for a in spec.upper)
    lower = tuple((b.numerator, b.denominator) for b in spec.lower)
    return upper, lower


def window_sum_mod(spec: SeriesSpec, k_start: int, k_stop: int, ctx: PrimePower) -> Residue:
    """Sum of terms k_start <= k < k_stop reduced mod p^e."""
    upper, lower = _int_pairs(spec, ctx.p)
    value = _kernel.series_window_mod(
        upper, lower, spec.z.numerator, spec.z.denominator, k_start, k_stop, ctx.p, ctx.e
    )
    return Residue(value, ctx)


def truncated_series_mod(spec: SeriesSpec, ctx: PrimePower) -> Residue:
    return window_sum_mod(spec, 0, spec.terms, ctx)


# --- factorials and binomials as scaled units ------------------------------

_FACT: dict[PrimePower, list[ScaledUnit]] = {}


def factorial_scaled(n: int, ctx: PrimePower) -> ScaledUnit:
    """n! as a scaled unit (p-power split off, unit reduced mod p^e)."""
    cache = _FACT.setdefault(ctx, [ScaledUnit.one(ctx)])
    while len(cache) <= n:
        k = len(cache)
        cache.append(cache[-1] * ScaledUnit.from_integer(k, ctx))
    return cache[n]


def binomial_scaled(n: int, k: int, ctx: PrimePower) -> ScaledUnit:
    """C(n, k) as a scaled unit, for 0 <= k <= n."""
    if not 0 <= k <= n:
        return ScaledUnit.zero(ctx)
    return factorial_scaled(n, ctx) / (factorial_scaled(k, ctx) * factorial_scaled(n - k, ctx))


# --- the four quadratic-character families ---------------------------------


@dataclass(frozen=True)
class QuarticFamily:
    """One of the four x with c(c-1) the discriminant of a quadratic field.

    ``binomials`` lists (c, d) pairs meaning a factor C(c*n, d*n); the term
    of the 2F1 sum at index n equals their product divided by base^n, and
    ``character_arg`` is the integer whose quadratic character gives the
    closed-form right-hand side.
    """

    x: Fraction
    binomials: tuple[tuple[int, int], ...]
    base: int
    character_arg: int

    def term_exact(self, n: int) -> Fraction:
        num = 1
        for c, d in self.binomials:
            num *= comb(c * n, d * n)
        return Fraction(num, self.base**n)

    def term_scaled(self, n: int, ctx: PrimePower) -> ScaledUnit:
        out = ScaledUnit.one(ctx)
        for c, d in self.binomials:
            out = out * binomial_scaled(c * n, d * n, ctx)
        # bases are 2^a 3^b, units for every admissible p >= 5
        inv_pow = Residue(self.base, ctx).inverse() ** n
        return out * ScaledUnit(0, inv_pow, ctx)


QUARTICS: tuple[QuarticFamily, ...] = (
    QuarticFamily(Fraction(1, 2), ((2, 1), (2, 1)), 16, -1),
    QuarticFamily(Fraction(1, 3), ((2, 1), (3, 1)), 27, -3),
    QuarticFamily(Fraction(1, 4), ((2, 1), (4, 2)), 64, -2),
    QuarticFamily(Fraction(1, 6), ((3, 1), (6, 3)), 432, -1),
)

QUARTIC_BY_X: dict[Fraction, QuarticFamily] = {f.x: f for f in QUARTICS}


def partial_sum_block(family: QuarticFamily, r: int, ctx: PrimePower) -> Residue:
    """Block sum of the family's 2F1 terms over r*p <= k < (r+1)*p."""
    spec = two_f_one(family.x, (r + 1) * ctx.p)
    return window_sum_mod(spec, r * ctx.p, (r + 1) * ctx.p, ctx)
