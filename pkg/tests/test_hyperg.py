import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import poch, qbinom_coeffs
from qcommute._scalar import Q
from qcommute.errors import NotASquare, NotTerminating
from qcommute.hyperg import (
    PhiSpec,
    phi_eval_terminating,
    phi_series,
    qbinomial_series,
    termination_index,
    w87_eval,
)

frac = st.fractions(min_value=-4, max_value=4, max_denominator=12).filter(lambda x: x not in (0, 1, -1))


def test_qbinomial_matches_oracle():
    a, q = Q(3, 7), Q(2, 5)
    assert qbinomial_series(a, q, 6) == [Q(x) for x in qbinom_coeffs(a, q, 6)]


def test_phi_series_first_terms():
    a, b, c, q = Q(2), Q(3), Q(5), Q(1, 2)
    coeffs = phi_series(PhiSpec((a, b), (c,), q, 2))
    assert coeffs[0] == 1
    assert coeffs[1] == (1 - a) * (1 - b) / ((1 - c) * (1 - q))


def test_phi_series_stops_after_zero_term():
    q = Q(1, 3)
    coeffs = phi_series(PhiSpec((q ** -2, Q(5)), (Q(7),), q, 6))
    assert all(x == 0 for x in coeffs[3:]) and coeffs[2] != 0


def test_termination_index():
    q = Q(1, 3)
    assert termination_index([Q(2), q ** -4], q, 10) == 4
    assert termination_index([Q(2), Q(5)], q, 10) is None
    with pytest.raises(NotTerminating):
        phi_eval_terminating([Q(2), Q(5)], [Q(7)], q, q)


@settings(max_examples=40, deadline=None)
@given(b=frac, c=frac, q=frac, n=st.integers(0, 6))
def test_q_chu_vandermonde(b, c, q, n):
    """2phi1(q^-n, b; c; q, q) = (c/b;q)_n / (c;q)_n b^n."""
    b, c, q = Q(b), Q(c), Q(q)
    if abs(q) >= 1 or any(poch(c, q, k) == 0 for k in range(n + 1)):
        return
    lhs = phi_eval_terminating([q ** -n, b], [c], q, q, bound=n)
    rhs = Q(poch(c / b, q, n) / poch(c, q, n)) * b ** n
    assert lhs == rhs


@pytest.mark.parametrize("n", [0, 1, 2, 4])
def test_w87_jackson_sum(n):
    """Terminating 8W7 at argument q with the balancing condition a^2 q^{n+1} = bcde."""
    q = Q(1, 3)
    root = Q(5, 7)
    a = root * root
    b, c, d = Q(2, 3), Q(-3, 11), Q(7, 4)
    e = a * a * q ** (n + 1) / (b * c * d)
    lhs = w87_eval(a, [b, c, d, e, q ** -n], q, q, a1_root=root)
    num = [a * q, a * q / (b * c), a * q / (b * d), a * q / (c * d)]
    den = [a * q / b, a * q / c, a * q / d, a * q / (b * c * d)]
    rhs = Q(1)
    for x in num:
        rhs *= Q(poch(x, q, n))
    for x in den:
        rhs /= Q(poch(x, q, n))
    assert lhs == rhs


def test_w87_needs_root():
    with pytest.raises(NotASquare):
        w87_eval(Q(2), [Q(1, 3) ** -1], Q(1, 3), Q(1, 3))
