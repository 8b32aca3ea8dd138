"""Term table for the first n=4 eigenfunction on the window 0 <= i_1, i_2, i_3 <= 2.

Every term is  x^e * coeff * phi(k12, k23, k34, k13, k24, k14).  Coefficients are
transcribed factor by factor; one term of the (2,2,2) group carries two
factors whose base is printed as p^(1/2), which is resolved by ``reading``:

* ``"q"``     replace p^(1/2) by q, matching every sibling term;
* ``"omit"``  drop both factors.
"""

from __future__ import annotations

from .._scalar import ONE
from ..qkernel import qpoch

READINGS = ("q", "omit")
PHI_ORDER = ((1, 2), (2, 3), (3, 4), (1, 3), (2, 4), (1, 4))
AMBIGUOUS = ("y222", 7)


def _ks(args) -> dict:
    return dict(zip(PHI_ORDER, args))


def n4_terms(pt, reading: str = "q") -> list:
    """[(label, exponent, coefficient, ks)] for every displayed term."""
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}")
    if pt.n != 4:
        raise ValueError("the window table is for n=4")
    q, t = pt.q, pt.t
    s1, s2, s3, s4 = pt.s

    def P(a, k):
        return qpoch(a, q, k)

    def S(i, j):
        return pt.s[i - 1] / pt.s[j - 1]

    def den(q_pow, **pairs):
        """(q)_1^q_pow times (q s_ij)_{k} over all six pairs (default k=1)."""
        out = P(q, 1) ** q_pow
        for i, j in PHI_ORDER:
            out *= P(q * S(i, j), pairs.get(f"p{i}{j}", 1))
        return out

    qt = q / t
    num4_1 = P(qt, 1) ** 2 * P(t, 1) ** 2
    num4_2 = P(qt, 2) ** 2 * P(t, 2) ** 2
    num_c = P(qt, 1) ** 3 * P(t, 1) ** 3
    num_b = P(qt, 2) * P(qt, 1) ** 2 * P(t, 2) * P(t, 1) ** 2
    num_d = P(qt, 2) ** 2 * P(qt, 1) * P(t, 2) ** 2 * P(t, 1)
    q3 = q ** 3 * s1 * s2 / (s3 * s4)
    all1 = (1, 1, 1, 1, 1, 1)
    all2 = (2, 2, 2, 2, 2, 2)

    terms = []

    def add(label, e, coeff, ks):
        terms.append((label, e, coeff, _ks(ks)))

    add("y000", (0, 0, 0), ONE, (0, 0, 0, 0, 0, 0))

    add("y110", (1, 1, 0), q * S(1, 3) * num4_1 / (P(q, 1) * P(q * S(1, 2), 1) * P(q * S(2, 3), 1) * P(q * S(1, 3), 1)),
        (1, 1, 0, 1, 0, 0))
    add("y011", (0, 1, 1), q * S(2, 4) * num4_1 / (P(q, 1) * P(q * S(2, 3), 1) * P(q * S(3, 4), 1) * P(q * S(2, 4), 1)),
        (0, 1, 1, 0, 1, 0))

    e = (1, 1, 1)
    z = q * S(1, 4)
    add("y111", e, z * num4_1 / (P(q, 1) * P(q * S(1, 2), 1) * P(q * S(2, 4), 1) * P(q * S(1, 4), 1)), (1, 0, 0, 0, 1, 1))
    add("y111", e, z * num4_1 / (P(q, 1) * P(q * S(1, 3), 1) * P(q * S(3, 4), 1) * P(q * S(1, 4), 1)), (0, 0, 1, 1, 0, 1))
    add("y111", e, -z * num_c * P(q * q * s1 * s2 / (s3 * s4), 1) / den(1), all1)

    z2 = q * q * S(1, 3) ** 2
    add("y220", (2, 2, 0), z2 * num4_2 / (P(q, 2) * P(q * S(1, 2), 2) * P(q * S(2, 3), 2) * P(q * S(1, 3), 2)),
        (2, 2, 0, 2, 0, 0))
    z2 = q * q * S(2, 4) ** 2
    add("y022", (0, 2, 2), z2 * num4_2 / (P(q, 2) * P(q * S(2, 3), 2) * P(q * S(3, 4), 2) * P(q * S(2, 4), 2)),
        (0, 2, 2, 0, 2, 0))

    e = (1, 2, 1)
    z = q * s1 * s2 / (s3 * s4)
    add("y121", e, -z * num_c * P(q * q * s1 * s3 / (s2 * s4), 1) / den(1), all1)
    add("y121", e, z * num_b * P(q * q * S(1, 4), 1) / den(2, p23=2), (1, 2, 1, 1, 1, 1))

    e = (2, 2, 1)
    z = q * s1 * s1 / (s3 * s4)
    add("y221", e, -z * num_c * P(q * q * s2 * s3 / (s1 * s4), 1) / den(1), all1)
    add("y221", e, z * num_b * P(q * q * S(3, 4), 1) / den(2, p12=2), (2, 1, 1, 1, 1, 1))
    add("y221", e, z * num_b * P(q * q * S(2, 4), 1) / den(2, p13=2), (1, 1, 1, 2, 1, 1))
    add("y221", e, -z * num_d * P(q3, 1) / den(2, p12=2, p23=2, p13=2), (2, 2, 1, 2, 1, 1))

    e = (1, 2, 2)
    z = q * s1 * s2 / (s4 * s4)
    add("y122", e, -z * num_c * P(q * q * s1 * s4 / (s2 * s3), 1) / den(1), all1)
    add("y122", e, z * num_b * P(q * q * S(1, 2), 1) / den(2, p34=2), (1, 1, 2, 1, 1, 1))
    add("y122", e, z * num_b * P(q * q * S(1, 3), 1) / den(2, p24=2), (1, 1, 1, 1, 2, 1))
    add("y122", e, -z * num_d * P(q3, 1) / den(2, p23=2, p34=2, p24=2), (1, 2, 2, 1, 2, 1))

    e = (2, 2, 2)
    z2 = q * q * S(1, 4) ** 2
    z = q * S(1, 4) ** 2
    add("y222", e, z2 * num4_2 / (P(q, 2) * P(q * S(1, 2), 2) * P(q * S(2, 4), 2) * P(q * S(1, 4), 2)), (2, 0, 0, 0, 2, 2))
    add("y222", e, z2 * num4_2 / (P(q, 2) * P(q * S(1, 3), 2) * P(q * S(3, 4), 2) * P(q * S(1, 4), 2)), (0, 0, 2, 2, 0, 2))
    den_all2 = P(q, 2)
    for i, j in PHI_ORDER:
        den_all2 *= P(q * S(i, j), 2)
    add("y222", e, z * P(qt, 2) ** 3 * P(t, 2) ** 3 * P(q3, 2) / den_all2, all2)
    add("y222", e, -z * num_c * P(q * q * s2 * s4 / (s1 * s3), 1) / den(1), all1)
    add("y222", e, z * num_b * P(q * q * S(2, 3), 1) / den(2, p14=2), (1, 1, 1, 1, 1, 2))
    add("y222", e, z * num_b * P(q * q * S(2, 1), 1) / den(2, p34=2), (1, 1, 2, 1, 1, 1))
    # the ambiguous term: (q)_1 (X)_1 (q s12)_2 (X s23)_1 (q s34)_1 (q s13)_1 (q s24)_1 (q s14)_1
    tail = P(q * S(1, 2), 2) * P(q * S(3, 4), 1) * P(q * S(1, 3), 1) * P(q * S(2, 4), 1) * P(q * S(1, 4), 1)
    if reading == "q":
        d7 = P(q, 1) * P(q, 1) * P(q * S(2, 3), 1) * tail
    else:
        d7 = P(q, 1) * tail
    add("y222", e, z * num_b * P(q * q * S(4, 3), 1) / d7, (2, 1, 1, 1, 1, 1))
    add("y222", e, -z * num_d * P(q3, 1) / den(2, p34=2, p13=2, p14=2), (1, 1, 2, 2, 1, 2))
    add("y222", e, -z * num_d * P(q3, 1) / den(2, p12=2, p24=2, p14=2), (2, 1, 1, 1, 2, 2))
    add("y222", e, -z * P(q, 2) * num_d / den(4, p12=2, p34=2), (2, 1, 2, 1, 1, 1))
    return terms
