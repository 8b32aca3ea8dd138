"""Basic hypergeometric series over exact rationals.

Non-terminating series are returned as truncated coefficient lists in z;
terminating ones are summed exactly.  Terms are generated by the term
ratio, so each coefficient costs O(r) multiplications.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ._scalar import ONE, ZERO, Q, rational_sqrt, to_str
from .errors import NonGenericPoint, NotASquare, NotTerminating


@dataclass(frozen=True)
class PhiSpec:
    upper: tuple
    lower: tuple
    q: object
    z_order: int

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(Q(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(Q(b) for b in self.lower))
        object.__setattr__(self, "q", Q(self.q))


def _terms(upper: Sequence, lower: Sequence, q, count: int, z=ONE) -> list:
    """The first ``count`` terms (a;q)_n / ((b;q)_n (q;q)_n) z^n.

    Once a term vanishes every later term vanishes too, which is how
    terminating series with a lower ``q^{-N}`` (N >= termination index) are
    read.
    """
    out = []
    term = ONE
    qn = ONE
    for n in range(count):
        out.append(term)
        if term == 0:
            out.extend([ZERO] * (count - n - 1))
            break
        num = ONE
        for a in upper:
            num *= ONE - a * qn
        if num == 0:
            out.extend([ZERO] * (count - n - 1))
            break
        den = ONE - qn * q
        for b in lower:
            den *= ONE - b * qn
        if den == 0:
            raise NonGenericPoint(f"vanishing lower factor at term {n + 1}")
        term = term * num / den * z
        qn = qn * q
    return out


def phi_series(spec: PhiSpec) -> list:
    """Coefficients of z^0..z^{z_order} of the r+1 phi r series."""
    return _terms(spec.upper, spec.lower, spec.q, spec.z_order + 1)


def qbinomial_series(a, q, order: int) -> list:
    """Coefficients of (a z;q)_inf / (z;q)_inf = sum (a;q)_n/(q;q)_n z^n."""
    return _terms((Q(a),), (), Q(q), order + 1)


def termination_index(upper: Sequence, q, bound: int) -> int | None:
    """Smallest m <= bound with some upper parameter equal to q^{-m}."""
    q = Q(q)
    qinv = ONE / q
    target = ONE
    ups = [Q(a) for a in upper]
    for m in range(bound + 1):
        if any(a == target for a in ups):
            return m
        target = target * qinv
    return None


def phi_eval_terminating(upper: Sequence, lower: Sequence, q, z, bound: int = 64):
    """Exact value of a terminating series (some upper parameter is q^{-m})."""
    q = Q(q)
    m = termination_index(upper, q, bound)
    if m is None:
        raise NotTerminating(f"no upper parameter of the form q^-m with m <= {bound}")
    total = ZERO
    for term in _terms([Q(a) for a in upper], [Q(b) for b in lower], q, m + 1, Q(z)):
        total += term
    return total


def very_well_poised_params(a1, rest: Sequence, q, a1_root=None) -> tuple[list, list]:
    """Parameter lists of W(a1; rest; q, z) after the very-well-poised completion."""
    a1, q = Q(a1), Q(q)
    if a1_root is None:
        a1_root = rational_sqrt(a1) if a1 >= 0 else None
        if a1_root is None:
            raise NotASquare(f"{to_str(a1)} has no rational square root")
    else:
        a1_root = Q(a1_root)
        if a1_root * a1_root != a1:
            raise NotASquare(f"{to_str(a1_root)} is not a square root of {to_str(a1)}")
    rest = [Q(a) for a in rest]
    upper = [a1, q * a1_root, -q * a1_root] + rest
    lower = [a1_root, -a1_root] + [q * a1 / a for a in rest]
    return upper, lower


def w87_eval(a1, rest: Sequence, q, z, terminating_bound: int = 64, a1_root=None):
    """Terminating very-well-poised series 8W7(a1; a4, ..., a8; q, z).

    ``rest`` may have any length; with five entries this is the 8W7 of the
    usual notation.
    """
    upper, lower = very_well_poised_params(a1, rest, q, a1_root)
    return phi_eval_terminating(upper, lower, q, z, terminating_bound)
