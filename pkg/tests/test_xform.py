import pytest

from oracles import operator_image
from qcommute._scalar import Q
from qcommute.errors import ShapeMismatch
from qcommute.qkernel import ParamPoint, sample_generic_point
from qcommute.series import ConeSeries, Truncation, enumerate_basis
from qcommute.xform import (
    OperatorMatrix,
    bidiagonal_L,
    c_matrix,
    ctilde_matrix,
    d_matrix,
    e_matrix_closed,
    identity,
    lambda_diag,
    lambda_matrix,
    mat_mul,
    monomial_image,
    operator_matrix,
    restrict_matrix,
)


def _oracle_agrees(pt, T, **trunc):
    for e in enumerate_basis(pt.n, T):
        mine = monomial_image(e, pt, T)
        ref = operator_image(e, pt.u, pt.v, pt.s, pt.alpha, **trunc)
        keys = set(mine.support()) | set(ref)
        for k in keys:
            assert mine[k] == Q(ref.get(k, 0)), (e, k)


@pytest.mark.parametrize("seed", [1, 2])
def test_n2_matches_constant_term_oracle(seed):
    pt = sample_generic_point(2, 6, seed)
    _oracle_agrees(pt, Truncation.total(6), D=6)


@pytest.mark.parametrize("seed", [1, 2])
def test_n3_matches_constant_term_oracle(seed):
    pt = sample_generic_point(3, 4, seed)
    _oracle_agrees(pt, Truncation.total(4), D=4)


def test_n4_box_matches_constant_term_oracle():
    pt = sample_generic_point(4, 3, 3)
    _oracle_agrees(pt, Truncation.box((1, 1, 1)), box=(1, 1, 1))


@pytest.mark.parametrize("n,T", [(2, Truncation.total(5)), (3, Truncation.total(3)), (4, Truncation.box((1, 1, 1)))])
def test_lower_triangular_with_eigenvalue_diagonal(n, T):
    pt = sample_generic_point(n, 5, 4)
    M = operator_matrix(pt, T)
    for c, e in enumerate(M.basis):
        assert M.entries[c][c] == lambda_diag(pt, e)
        for r in range(c):
            assert M.entries[r][c] == 0


def test_constant_is_fixed():
    # the image of 1 has constant term 1 (the eigenvalue of index 0)
    pt = sample_generic_point(3, 3, 9)
    assert monomial_image((0, 0), pt, Truncation.total(3))[(0, 0)] == 1


def test_lambda_forms_agree():
    pt = sample_generic_point(2, 8, 5)
    assert lambda_matrix(pt, 8) == lambda_matrix(pt, 8, form=2)


def test_n2_factorization_small():
    pt = sample_generic_point(2, 5, 6)
    size = 6
    M = operator_matrix(pt, Truncation.total(size - 1))
    assert M.entries == mat_mul(bidiagonal_L(size), e_matrix_closed(pt, size))
    C, Dm = c_matrix(pt, size), d_matrix(pt, size)
    assert mat_mul(C, Dm) == identity(size)
    assert mat_mul(bidiagonal_L(size), ctilde_matrix(pt, size)) == C


def test_apply_and_restrict():
    pt = sample_generic_point(3, 4, 2)
    T = Truncation.total(4)
    M = operator_matrix(pt, T)
    f = ConeSeries(3, T, {(0, 0): Q(1), (1, 2): Q(-2, 3)})
    expect = monomial_image((0, 0), pt, T) + monomial_image((1, 2), pt, T).scale(Q(-2, 3))
    assert M.apply(f) == expect
    small = restrict_matrix(M, Truncation.total(2))
    assert small.entries == operator_matrix(pt, Truncation.total(2)).entries


def test_matrix_json_roundtrip():
    pt = sample_generic_point(2, 3, 1)
    M = operator_matrix(pt, Truncation.total(3))
    d = M.to_dict()
    assert d["basis"] == [[0], [1], [2], [3]]
    assert all(isinstance(x, str) and "/" in x for row in d["entries"] for x in row)
    again = OperatorMatrix.from_dict(d)
    assert again.entries == M.entries and again.point == pt


def test_index_shape_checked():
    pt = ParamPoint(u=Q(1, 2), v=Q(2), s=(Q(1), Q(4), Q(9)), alpha=Q(3))
    with pytest.raises(ShapeMismatch):
        monomial_image((1,), pt, Truncation.total(2))
