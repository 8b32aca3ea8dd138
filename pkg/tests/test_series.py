from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import h_coeffs as oracle_h
from qcommute._scalar import Q
from qcommute.errors import ShapeMismatch
from qcommute.qkernel import ParamPoint
from qcommute.series import (
    ConeSeries,
    Truncation,
    cone_from_univariate,
    enumerate_basis,
    g_coeff,
    g_coeffs,
    h_coeffs,
    pair_exponent,
    product_h,
)


@pytest.mark.parametrize("n,D", [(2, 6), (3, 4), (4, 3), (5, 2)])
def test_total_degree_basis_count(n, D):
    assert len(enumerate_basis(n, Truncation.total(D))) == comb(D + n - 1, n - 1)


def test_basis_order_and_box():
    basis = enumerate_basis(3, Truncation.total(2))
    assert basis[0] == (0, 0)
    assert [sum(e) for e in basis] == sorted(sum(e) for e in basis)
    assert len(enumerate_basis(4, Truncation.box((2, 2, 2)))) == 27
    with pytest.raises(ShapeMismatch):
        Truncation.box((1, 1)).check_n(4)


def test_residual():
    T = Truncation.total(5)
    assert T.residual((2, 1)) == Truncation.total(2)
    assert T.residual((4, 2)) is None
    B = Truncation.box((2, 3))
    assert B.residual((1, 3)) == Truncation.box((1, 0))


def test_pair_exponent():
    assert pair_exponent(1, 3, 3) == (1, 1)
    assert pair_exponent(2, 4, 4) == (0, 1, 1)
    assert pair_exponent(1, 2, 2) == (1,)


coeff = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def random_series(draw, n, T):
    basis = enumerate_basis(n, T)
    return ConeSeries(n, T, {e: Q(draw(coeff)) for e in basis if draw(st.booleans())})


@settings(max_examples=25, deadline=None)
@given(data=st.data(), n=st.integers(2, 4), mode=st.sampled_from(["total", "box"]))
def test_product_matches_brute_force(data, n, mode):
    T = Truncation.total(3) if mode == "total" else Truncation.box([2] * (n - 1))
    a = random_series(data.draw, n, T)
    b = random_series(data.draw, n, T)
    expect = {}
    for ea, va in a.items():
        for eb, vb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if T.admits(e):
                expect[e] = expect.get(e, 0) + va * vb
    got = a * b
    for e in enumerate_basis(n, T):
        assert got[e] == expect.get(e, 0)


@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_ring_laws(data):
    T = Truncation.total(3)
    a, b, c = (random_series(data.draw, 3, T) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * ConeSeries.one(3, T) == a
    assert a - a == ConeSeries(3, T)


def test_serialization_roundtrip():
    T = Truncation.box((2, 1))
    f = ConeSeries(3, T, {(0, 0): Q(1), (2, 1): Q(-3, 7)})
    d = f.to_dict()
    assert d["coeffs"][1] == {"e": [2, 1], "c": "-3/7"}
    assert ConeSeries.from_dict(d) == f
    assert Truncation.from_dict(T.to_dict()) == T


def test_coefficients_outside_truncation_rejected_or_dropped():
    T = Truncation.total(2)
    f = ConeSeries(2, T, {(1,): Q(2)})
    assert f.shift((2,)).support() == []
    assert f.shift((1,))[(2,)] == 2


def _pt():
    return ParamPoint(u=Q(2, 3), v=Q(5, 4), s=(Q(1), Q(4)), alpha=Q(3))


def test_h_first_coefficient():
    pt = _pt()
    q, t = pt.q, pt.t
    assert h_coeffs(pt, 1) == [1, (1 - q / (t * t)) * t / (1 - q) - 1]
    assert h_coeffs(pt, 5) == [Q(x) for x in oracle_h(q, t, 5)]


def test_g_coefficients():
    pt = _pt()
    assert g_coeffs(pt, 4) == [g_coeff(k, pt) for k in range(5)]
    assert g_coeff(1, pt) == (1 - pt.t) / (1 - pt.q) * pt.u / pt.v


def test_product_h_is_pairwise_product():
    pt = ParamPoint(u=Q(2, 3), v=Q(5, 4), s=(Q(1), Q(4), Q(9)), alpha=Q(3))
    T = Truncation.total(3)
    H = product_h(pt, T)
    manual = ConeSeries.one(3, T)
    for l, m in [(1, 2), (1, 3), (2, 3)]:
        manual = manual * cone_from_univariate(h_coeffs(pt, 3), l, m, 3, T)
    assert H == manual
