"""Exact combinatorial identities over big rationals.

These are the non-congruence facts the congruence suites lean on:
alternating binomial/harmonic sums, the partial-fraction harmonic
decompositions of the four quadratic-character families, the convolution
form of the harmonic-weighted term, the first-order Taylor coefficients
of the binomial-ratio function, and the negated-upper-index binomial
symmetry.  Everything is evaluated with `fractions.Fraction`; a failing
case carries both sides as reduced fractions.

One sum is checked in two forms on purpose: the alternating sum against
shifted harmonic numbers is implemented both exactly as commonly printed
(inner index starting at 1) and with the k=0 term included.  The printed
form is off by exactly the k=0 summand for every n >= 1; the checker
reports both rather than silently repairing either.  See
`shifted_harmonic_sum` / `shifted_harmonic_sum_printed`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import PoleInParameter
from .padic import as_fraction
from .special import harmonic_exact


@dataclass(frozen=True)
class IdentityCase:
    """One exact comparison; passed is derived, never stored."""

    id: str
    params: dict
    lhs: Fraction
    rhs: Fraction

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def _signed(n: int, k: int) -> int:
    """(-1)^k C(n,k) C(n+k,k)."""
    s = comb(n, k) * comb(n + k, k)
    return -s if k % 2 else s


def alternating_binomial_sum(n: int) -> IdentityCase:
    """Sum over 0 <= k <= n of (-1)^k C(n,k)C(n+k,k) equals (-1)^n."""
    lhs = Fraction(sum(_signed(n, k) for k in range(n + 1)))
    return IdentityCase("identity-alt", {"n": n}, lhs, Fraction((-1) ** n))


def harmonic_weighted_sum(n: int) -> IdentityCase:
    """Sum over 1 <= k <= n of (-1)^k C(n,k)C(n+k,k) H_k equals 2(-1)^n H_n."""
    lhs = sum((_signed(n, k) * harmonic_exact(k) for k in range(1, n + 1)), Fraction(0))
    rhs = 2 * Fraction(-1) ** n * harmonic_exact(n)
    return IdentityCase("identity-harmonic", {"n": n}, lhs, rhs)


def tail_harmonic_sum(n: int) -> IdentityCase:
    """Sum of (-1)^k C(n,k)C(n+k,k) * (1/(n+1) + ... + 1/(n+k)) equals (-1)^n H_n.

    The inner sum is accumulated term by term, independently of the
    harmonic-difference route used in `harmonic_difference_chain`.
    """
    lhs = Fraction(0)
    inner = Fraction(0)
    for k in range(1, n + 1):
        inner += Fraction(1, n + k)
        lhs += _signed(n, k) * inner
    rhs = Fraction(-1) ** n * harmonic_exact(n)
    return IdentityCase("identity-tail", {"n": n}, lhs, rhs)


def shifted_harmonic_sum_printed(n: int) -> IdentityCase:
    """Sum over 1 <= k <= n of (-1)^k C(n,k)C(n+k,k) H_{n+k} vs 2(-1)^n H_n.

    As commonly printed the sum starts at k=1; the k=0 summand would be
    H_n.  In that form the equality fails for every n >= 1 (the two sides
    differ by exactly H_n); the full variant below includes k=0 and holds.
    """
    lhs = sum(
        (_signed(n, k) * harmonic_exact(n + k) for k in range(1, n + 1)), Fraction(0)
    )
    rhs = 2 * Fraction(-1) ** n * harmonic_exact(n)
    return IdentityCase("identity-shifted-printed", {"n": n}, lhs, rhs)


def shifted_harmonic_sum(n: int) -> IdentityCase:
    """Sum over 0 <= k <= n of (-1)^k C(n,k)C(n+k,k) H_{n+k} equals 2(-1)^n H_n."""
    lhs = sum(
        (_signed(n, k) * harmonic_exact(n + k) for k in range(n + 1)), Fraction(0)
    )
    rhs = 2 * Fraction(-1) ** n * harmonic_exact(n)
    return IdentityCase("identity-shifted", {"n": n}, lhs, rhs)


def harmonic_difference_chain(n: int) -> IdentityCase:
    """Sum of (-1)^k C(n,k)C(n+k,k)(H_{n+k} - H_n) equals (-1)^n H_n.

    The step that links the alternating-sum and shifted-harmonic
    identities to the tail form, checked as an identity of its own.
    """
    hn = harmonic_exact(n)
    lhs = sum(
        (_signed(n, k) * (harmonic_exact(n + k) - hn) for k in range(n + 1)),
        Fraction(0),
    )
    rhs = Fraction(-1) ** n * hn
    return IdentityCase("identity-chain", {"n": n}, lhs, rhs)


# --- partial-fraction decompositions ---------------------------------------

# x -> coefficients of H_{c*k} in the closed form of
# sum_{j<k} (1/(j+x) + 1/(j+1-x))
_PARTFRAC_RHS: dict[Fraction, tuple[tuple[int, int], ...]] = {
    Fraction(1, 2): ((4, 2), (-2, 1)),
    Fraction(1, 3): ((3, 3), (-1, 1)),
    Fraction(1, 4): ((4, 4), (-2, 2)),
    Fraction(1, 6): ((6, 6), (-3, 3), (-2, 2), (1, 1)),
}


def partial_fraction_sum(k: int, x: Fraction) -> IdentityCase:
    """sum_{j<k}(1/(j+x) + 1/(j+1-x)) vs its harmonic-number closed form."""
    if x not in _PARTFRAC_RHS:
        raise ValueError(f"no closed form on record for x={x}")
    lhs = sum(
        (Fraction(1, 1) / (j + x) + Fraction(1, 1) / (j + 1 - x) for j in range(k)),
        Fraction(0),
    )
    rhs = sum(
        (c * harmonic_exact(d * k) for c, d in _PARTFRAC_RHS[x]), Fraction(0)
    )
    return IdentityCase("identity-partfrac", {"k": k, "x": str(x)}, lhs, rhs)


def partial_fraction_sums(k: int) -> list[IdentityCase]:
    """All four family decompositions at index k."""
    return [partial_fraction_sum(k, x) for x in _PARTFRAC_RHS]


# --- convolution form of the harmonic-weighted term ------------------------

_TERMS: dict[Fraction, list[Fraction]] = {}


def _series_terms(x: Fraction, upto: int) -> list[Fraction]:
    """Prefix cache of t_i = (x)_i (1-x)_i / (i!)^2."""
    terms = _TERMS.setdefault(x, [Fraction(1)])
    while len(terms) <= upto:
        i = len(terms) - 1
        terms.append(terms[-1] * (x + i) * (1 - x + i) / (i + 1) ** 2)
    return terms


def term_convolution_identity(x: Fraction, k: int) -> IdentityCase:
    """t_k * sum_i (1/(x+i) + 1/(1-x+i)) vs sum_i t_i/(k-i), both over i < k."""
    for i in range(k):
        if x + i == 0 or 1 - x + i == 0:
            raise PoleInParameter(f"x={x} puts a pole at i={i}")
    terms = _series_terms(x, k)
    weight = sum(
        (Fraction(1, 1) / (x + i) + Fraction(1, 1) / (1 - x + i) for i in range(k)),
        Fraction(0),
    )
    lhs = terms[k] * weight
    rhs = sum((terms[i] / (k - i) for i in range(k)), Fraction(0))
    return IdentityCase("identity-convolution", {"k": k, "x": str(x)}, lhs, rhs)


# --- Taylor coefficients of the binomial-ratio function --------------------

# per-r cache of the latest jet (k, P0, P1, Q0, Q1) for
# f(t) = prod_{i<=2k}(2rt+i) / prod_{i<=k}(rt+i)^2, carried to first order.
_JETS: dict[int, tuple[int, int, int, int, int]] = {}


def _taylor_jet(k: int, r: int) -> tuple[int, int, int, int]:
    state = _JETS.get(r)
    if state is None or state[0] > k:
        state = (0, 1, 0, 1, 0)
    j, p0, p1, q0, q1 = state
    while j < k:
        j += 1
        for i in (2 * j - 1, 2 * j):
            p0, p1 = p0 * i, p1 * i + 2 * r * p0
        for _ in range(2):
            q0, q1 = q0 * j, q1 * j + r * q0
    _JETS[r] = (j, p0, p1, q0, q1)
    return p0, p1, q0, q1


def taylor_coefficient_check(k: int, r: int) -> list[IdentityCase]:
    """f(0) = C(2k,k) and f'(0) = r C(2k,k)(2H_{2k} - 2H_k), exactly.

    Returns one case per coefficient order (0 and 1); the derivative is
    read off a first-order jet product, not from the closed form.
    """
    p0, p1, q0, q1 = _taylor_jet(k, r)
    f0 = Fraction(p0, q0)
    f1 = Fraction(p1 * q0 - p0 * q1, q0 * q0)
    c = comb(2 * k, k)
    rhs0 = Fraction(c)
    rhs1 = r * c * (2 * harmonic_exact(2 * k) - 2 * harmonic_exact(k))
    return [
        IdentityCase("identity-taylor", {"k": k, "r": r, "order": 0}, f0, rhs0),
        IdentityCase("identity-taylor", {"k": k, "r": r, "order": 1}, f1, rhs1),
    ]


# --- negated-upper-index binomial symmetry ---------------------------------


def generalized_binomial(x: Fraction | int, k: int) -> Fraction:
    """C(x, k) = x(x-1)...(x-k+1)/k! for arbitrary rational x."""
    q = as_fraction(x)
    num = Fraction(1)
    for i in range(k):
        num *= q - i
    return num / factorial(k)


# per-b cache of the latest (k, C(-b,k), C(-b+k,k), C(b-1,k), C(b-1+k,k))
_NEG: dict[int, tuple[int, Fraction, Fraction, Fraction, Fraction]] = {}


def _negation_values(b: int, k: int):
    state = _NEG.get(b)
    if state is None or state[0] > k:
        state = (0, Fraction(1), Fraction(1), Fraction(1), Fraction(1))
    j, nb, nbk, pb, pbk = state
    while j < k:
        j += 1
        nb = nb * (-b - j + 1) / j  # C(-b, j)
        nbk = nbk * (-b + j) / j  # C(-b+j, j)
        pb = pb * (b - j) / j  # C(b-1, j)
        pbk = pbk * (b - 1 + j) / j  # C(b-1+j, j)
    _NEG[b] = (j, nb, nbk, pb, pbk)
    return nb, nbk, pb, pbk


def negation_symmetry(b: int, k: int) -> IdentityCase:
    """C(-b,k) C(-b+k,k) = C(b-1,k) C(b-1+k,k) for integer b >= 1."""
    nb, nbk, pb, pbk = _negation_values(b, k)
    return IdentityCase(
        "identity-negation", {"b": b, "k": k}, nb * nbk, pb * pbk
    )
