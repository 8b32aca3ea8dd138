"""Exact rational scalar backend.

The hot path is bignum rational arithmetic, so the accelerated backend is
``gmpy2.mpq``; ``fractions.Fraction`` is the pure-Python fallback.  Set
``QCOMMUTE_PURE_PYTHON=1`` to force the fallback (the benchmark under
``benchmarks/`` compares both).  Values from the two backends must not be
mixed inside one computation; always go through :func:`Q`.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

from .errors import NotASquare

_FORCE_PURE = os.environ.get("QCOMMUTE_PURE_PYTHON", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _FORCE_PURE:
        raise ImportError
    import gmpy2 as _gmpy2

    _mpq = _gmpy2.mpq
    BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - depends on environment
    _mpq = None
    BACKEND = "fraction"


if _mpq is not None:
    Scalar = type(_mpq(0))

    def Q(x, den=None):
        if den is not None:
            return _mpq(int(x), int(den))
        if isinstance(x, str):
            return _mpq(x.strip())
        if isinstance(x, float):
            raise TypeError("floats are not accepted as exact scalars")
        if isinstance(x, Scalar):
            return x
        if isinstance(x, Fraction):
            # a Fraction may hold mpz parts, which mpq() refuses
            return _mpq(int(x.numerator), int(x.denominator))
        return _mpq(x)

else:
    Scalar = Fraction

    def Q(x, den=None):
        if den is not None:
            return Fraction(int(x), int(den))
        if isinstance(x, str):
            return Fraction(x.strip())
        if isinstance(x, float):
            raise TypeError("floats are not accepted as exact scalars")
        if isinstance(x, Fraction):
            return x
        if hasattr(x, "numerator") and hasattr(x, "denominator"):
            return Fraction(int(x.numerator), int(x.denominator))
        return Fraction(x)


ZERO = Q(0)
ONE = Q(1)


def to_str(x) -> str:
    """Fraction string ``"p/q"`` (always with an explicit denominator)."""
    x = Q(x)
    return f"{int(x.numerator)}/{int(x.denominator)}"


def from_str(s: str):
    return Q(s)


def rational_sqrt(x):
    """Exact square root of a rational square; raises NotASquare otherwise.

    The non-negative root is returned.
    """
    x = Q(x)
    if x < 0:
        raise NotASquare(f"{to_str(x)} is negative")
    p, d = int(x.numerator), int(x.denominator)
    rp, rd = math.isqrt(p), math.isqrt(d)
    if rp * rp != p or rd * rd != d:
        raise NotASquare(f"{to_str(x)} is not the square of a rational")
    return Q(rp, rd)
