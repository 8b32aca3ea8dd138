import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import poch
from qcommute._scalar import Q, from_str, rational_sqrt, to_str
from qcommute.errors import NonGenericPoint, NotASquare
from qcommute.qkernel import (
    ParamPoint,
    genericity_failures,
    mu,
    qpoch,
    qpoch_multi,
    qpoch_ratio,
    sample_generic_point,
)

small = st.fractions(min_value=-3, max_value=3, max_denominator=9)
nonunit_q = small.filter(lambda x: x not in (0, 1, -1))


def test_qpoch_known_values():
    assert qpoch(Q(3), Q(2), -1) == Q(-2)  # 1/(1 - 3/2)
    assert qpoch_multi([Q(1, 2), Q(1, 3)], Q(1, 2), 1) == Q(1, 3)
    assert qpoch(Q(5), Q(7), 0) == 1
    assert qpoch(Q(1, 2), Q(1, 3), 2) == Q(1, 2) * (1 - Q(1, 6))


def test_qpoch_negative_index_vanishing_factor():
    # (q;q)_{-1} = 1/(1 - q q^{-1}) is undefined
    with pytest.raises(NonGenericPoint):
        qpoch(Q(1, 2), Q(1, 2), -1)


@settings(max_examples=60, deadline=None)
@given(a=small, q=nonunit_q, m=st.integers(-4, 4), k=st.integers(-4, 4))
def test_qpoch_splits(a, q, m, k):
    """(a;q)_{m+k} = (a;q)_m (a q^m;q)_k for all integers where defined."""
    try:
        lhs = qpoch(Q(a), Q(q), m + k)
        rhs = qpoch(Q(a), Q(q), m) * qpoch(Q(a) * Q(q) ** m, Q(q), k)
    except NonGenericPoint:
        return
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(a=small, q=nonunit_q, k=st.integers(-5, 5))
def test_qpoch_matches_oracle(a, q, k):
    try:
        ref = poch(a, q, k)
    except ZeroDivisionError:
        with pytest.raises(NonGenericPoint):
            qpoch(Q(a), Q(q), k)
        return
    assert Fraction(to_str(qpoch(Q(a), Q(q), k))) == ref


def test_qpoch_ratio():
    q = Q(1, 3)
    assert qpoch_ratio([Q(2)], [Q(5)], q, 3) == qpoch(Q(2), q, 3) / qpoch(Q(5), q, 3)


def test_scalar_strings():
    assert to_str(Q(3)) == "3/1"
    assert from_str("-4/6") == Q(-2, 3)
    assert rational_sqrt(Q(9, 49)) == Q(3, 7)
    with pytest.raises(NotASquare):
        rational_sqrt(Q(2))
    with pytest.raises(TypeError):
        Q(0.5)


def test_mu_definition():
    pt = ParamPoint(u=Q(1, 3), v=Q(2, 5), s=(Q(4), Q(9)), alpha=Q(7, 2))
    a = Q(7, 8)
    for k in (-2, 0, 3):
        expect = qpoch(a, pt.q, k) / qpoch(a * pt.q / pt.t, pt.q, k) * (pt.u / pt.v) ** k
        assert mu(a, k, pt) == expect


def test_point_roundtrip_and_validation():
    pt = sample_generic_point(3, 4, 7)
    again = ParamPoint.from_json(pt.to_json())
    assert again == pt
    assert json.loads(pt.to_json())["s_roots"]
    with pytest.raises(ValueError, match="malformed"):
        ParamPoint.from_json('{"u": "1/2"}')
    with pytest.raises(ValueError, match="malformed"):
        ParamPoint.from_json("[1, 2]")
    with pytest.raises(ValueError):
        ParamPoint(u=1, v=2, s=(4,), alpha=1, s_roots=(3,))


def test_shift_keeps_roots_consistent():
    pt = sample_generic_point(3, 4, 2)
    sh = pt.shift_s([1, -1, 0])
    assert sh.s[0] == pt.s[0] * pt.q and sh.s[1] == pt.s[1] / pt.q
    assert all(r * r == x for r, x in zip(sh.s_roots, sh.s))


def test_sampling_is_deterministic_and_generic():
    a = sample_generic_point(3, 5, 11)
    b = sample_generic_point(3, 5, 11)
    assert a == b
    assert sample_generic_point(3, 5, 12) != a
    assert genericity_failures(a, 5) == []
    assert abs(a.q) < 1


def test_genericity_detects_vanishing_factor():
    # alpha = t/q makes (alpha/s q/t;q)_K vanish when s = 1
    pt = ParamPoint(u=Q(1, 2), v=Q(1, 3), s=(Q(1), Q(1)), alpha=Q(4, 9))
    assert any("alpha/s_1" in f for f in genericity_failures(pt, 3))
