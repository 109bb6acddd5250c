"""Exact-arithmetic checker for truncated hypergeometric congruences.

Evaluates truncated 2F1 sums over residues mod p^e with two independent
engines (windowed modular recurrence and exact big-rational arithmetic)
and sweeps a registry of congruence suites over primes and parameters,
reporting every instance bit-exactly.
"""

from ._kernel import backend_name

__version__ = "0.1.0"

__all__ = ["__version__", "backend_name"]
