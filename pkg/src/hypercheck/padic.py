"""Arithmetic substrate: residues mod p^e and valuation-tracked scaled units.

Everything downstream works either with `Residue` (canonical value in
[0, p^e)) or with `ScaledUnit` (u * p^v with u a unit mod p^e), which keeps
p-divisible quantities exact until the final reduction.  Rationals enter
only through `residue_from_rational` / `ScaledUnit.from_rational`, which
reject denominators divisible by p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NegativeValuation, NonUnit, NonUnitDenominator

#: Hard cap on the exponent e of a modulus p^e.  Desk-scale sweeps need
#: e = 2 or 3; the mod-p^3 conjectures need 3 + v_p(n^2 S(n)) which reaches
#: 5 on the default domain, and one spare exponent supports headroom
#: experiments.
MAX_EXPONENT = 6

# Deterministic Miller-Rabin witness set, valid far past 2^64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

PadicInput = int | Fraction


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def split_p_power(n: int, p: int) -> tuple[int, int]:
    """Write n != 0 as unit * p^v; returns (v, unit)."""
    if n == 0:
        raise ValueError("0 has no finite valuation")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def p_valuation(n: int, p: int) -> int:
    """v_p(n) for n != 0."""
    return split_p_power(n, p)[0]


def as_fraction(x: PadicInput) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


def require_p_integral(x: PadicInput, p: int) -> Fraction:
    """Return x as a Fraction, rejecting denominators divisible by p."""
    q = as_fraction(x)
    if q.denominator % p == 0:
        raise NonUnitDenominator(f"{q} has denominator divisible by {p}")
    return q


@dataclass(frozen=True)
class PrimePower:
    """Modulus context p^e with p a prime >= 5 and 1 <= e <= MAX_EXPONENT."""

    p: int
    e: int
    modulus: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.p < 5 or not is_prime(self.p):
            raise ValueError(f"need a prime p >= 5, got {self.p}")
        if not 1 <= self.e <= MAX_EXPONENT:
            raise ValueError(f"need 1 <= e <= {MAX_EXPONENT}, got e={self.e}")
        object.__setattr__(self, "modulus", self.p**self.e)

    def shrink(self, e: int) -> "PrimePower":
        """Same prime, smaller exponent."""
        if e > self.e:
            raise ValueError(f"cannot grow {self} to e={e}")
        return PrimePower(self.p, e)


@dataclass(frozen=True)
class Residue:
    """Canonical residue in [0, p^e) with ring operations."""

    value: int
    ctx: PrimePower

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.ctx.modulus)

    def _lift(self, other) -> int:
        if isinstance(other, Residue):
            if other.ctx != self.ctx:
                raise ValueError(f"context mismatch: {self.ctx} vs {other.ctx}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._lift(other)
        if v is NotImplemented:
            return v
        return Residue(self.value + v, self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._lift(other)
        if v is NotImplemented:
            return v
        return Residue(self.value - v, self.ctx)

    def __rsub__(self, other):
        v = self._lift(other)
        if v is NotImplemented:
            return v
        return Residue(v - self.value, self.ctx)

    def __mul__(self, other):
        v = self._lift(other)
        if v is NotImplemented:
            return v
        return Residue(self.value * v, self.ctx)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.ctx)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Residue(pow(self.value, k, self.ctx.modulus), self.ctx)

    def inverse(self) -> "Residue":
        """Multiplicative inverse; the residue must be a unit."""
        if self.value % self.ctx.p == 0:
            raise NonUnit(f"{self.value} is not a unit mod {self.ctx.p}^{self.ctx.e}")
        return Residue(pow(self.value, -1, self.ctx.modulus), self.ctx)

    def reduce(self, e: int) -> "Residue":
        """Project to the weaker modulus p^e."""
        return Residue(self.value, self.ctx.shrink(e))


def residue_from_rational(q: PadicInput, ctx: PrimePower) -> Residue:
    """Reduce a p-integral rational mod p^e."""
    q = as_fraction(q)
    if q.denominator % ctx.p == 0:
        raise NonUnitDenominator(
            f"{q} has denominator divisible by {ctx.p}, cannot reduce mod {ctx.p}^{ctx.e}"
        )
    m = ctx.modulus
    return Residue(q.numerator % m * pow(q.denominator % m, -1, m), ctx)


@dataclass(frozen=True)
class ScaledUnit:
    """u * p^v with u a unit mod p^e; valuation None encodes exact zero.

    Keeping the p-power split out of the unit means products, quotients and
    factorial-style accumulations never lose low digits to a p-divisible
    factor; reduction to a Residue happens once, at the end.
    """

    valuation: int | None
    unit: Residue | None
    ctx: PrimePower

    def __post_init__(self):
        if self.valuation is None:
            if self.unit is not None:
                raise ValueError("exact zero carries no unit")
            return
        if self.valuation < 0:
            raise NegativeValuation(f"valuation {self.valuation} < 0")
        if self.unit is None or self.unit.ctx != self.ctx:
            raise ValueError("unit context mismatch")
        if self.unit.value % self.ctx.p == 0:
            raise NonUnit(f"unit part {self.unit.value} divisible by {self.ctx.p}")

    @property
    def is_zero(self) -> bool:
        return self.valuation is None

    @classmethod
    def zero(cls, ctx: PrimePower) -> "ScaledUnit":
        return cls(None, None, ctx)

    @classmethod
    def one(cls, ctx: PrimePower) -> "ScaledUnit":
        return cls(0, Residue(1, ctx), ctx)

    @classmethod
    def from_integer(cls, n: int, ctx: PrimePower) -> "ScaledUnit":
        if n == 0:
            return cls.zero(ctx)
        v, u = split_p_power(n, ctx.p)
        return cls(v, Residue(u, ctx), ctx)

    @classmethod
    def from_rational(cls, q: PadicInput, ctx: PrimePower) -> "ScaledUnit":
        q = as_fraction(q)
        if q == 0:
            return cls.zero(ctx)
        vn, un = split_p_power(q.numerator, ctx.p)
        vd, ud = split_p_power(q.denominator, ctx.p)
        if vn - vd < 0:
            raise NegativeValuation(f"{q} has valuation {vn - vd} < 0")
        u = Residue(un, ctx) * Residue(ud, ctx).inverse()
        return cls(vn - vd, u, ctx)

    def __mul__(self, other: "ScaledUnit") -> "ScaledUnit":
        if self.ctx != other.ctx:
            raise ValueError("context mismatch")
        if self.is_zero or other.is_zero:
            return ScaledUnit.zero(self.ctx)
        return ScaledUnit(self.valuation + other.valuation, self.unit * other.unit, self.ctx)

    def __truediv__(self, other: "ScaledUnit") -> "ScaledUnit":
        if self.ctx != other.ctx:
            raise ValueError("context mismatch")
        if other.is_zero:
            raise ZeroDivisionError("division by exact zero")
        if self.is_zero:
            return ScaledUnit.zero(self.ctx)
        v = self.valuation - other.valuation
        if v < 0:
            raise NegativeValuation(f"quotient valuation {v} < 0")
        return ScaledUnit(v, self.unit * other.unit.inverse(), self.ctx)

    def to_residue(self) -> Residue:
        if self.is_zero or self.valuation >= self.ctx.e:
            return Residue(0, self.ctx)
        return Residue(self.unit.value * self.ctx.p**self.valuation, self.ctx)


def scaled_mul(a: ScaledUnit, b: ScaledUnit) -> ScaledUnit:
    return a * b


def scaled_div(a: ScaledUnit, b: ScaledUnit) -> ScaledUnit:
    return a / b


def scaled_add_into_residue(acc: Residue, t: ScaledUnit) -> Residue:
    """acc + t reduced mod p^e (sums of scaled units live in Residue space)."""
    return acc + t.to_residue()
