"""Exact checks: commutativity, the n=2 proof chain, the two summation lemmas,
alpha-independence of eigenfunctions and the parameter-shift relation."""

from __future__ import annotations

import random

from .._scalar import ONE, Q
from ..eigen import eigenfunction, first_series_difference, shift_check
from ..hyperg import PhiSpec, phi_eval_terminating, phi_series, qbinomial_series, termination_index
from ..qkernel import ParamPoint, _rand_rational
from ..report import CONJECTURE, THEOREM
from ..series import Truncation, one_minus_times, scaled_powers, univariate_mul
from ..xform import (
    bidiagonal_L,
    c_matrix,
    c_matrix_2phi1,
    ctc_sum_6phi5,
    ctilde_matrix,
    ctlamc_w87_matrix,
    ctlamc_watson_matrix,
    d_matrix,
    diag,
    e_matrix_closed,
    first_difference,
    identity,
    inverse_sum_6phi5,
    kernel_column_n2_prop1,
    lambda_matrix,
    lower_ones,
    mat_mul,
    operator_matrix,
)
from .common import Outcome, list_difference


def check_commutator(n: int, pt: ParamPoint, beta, trunc: Truncation, *, seed=None):
    """[I(alpha), I(beta)] == 0 on the truncated space.

    Exact under truncation: the action never lowers the cone exponent, so the
    truncated matrices compose like the infinite ones restricted.
    """
    if pt.n != n:
        raise ValueError(f"point has n={pt.n}, expected {n}")
    kind = THEOREM if n == 2 else CONJECTURE
    out = Outcome("commutator", kind, point=pt, trunc=trunc, seed=seed)
    out.details.update({"n": n, "beta": str(Q(beta))})
    A = operator_matrix(pt, trunc)
    B = A if Q(beta) == pt.alpha else operator_matrix(pt.with_alpha(beta), trunc)
    out.details["basis_size"] = A.size
    diff = first_difference(mat_mul(A.entries, B.entries), mat_mul(B.entries, A.entries))
    if diff is not None:
        r, c, x, y = diff
        diff = (A.basis[r], A.basis[c], x, y)
    out.compare("AB-BA", diff)
    return out.report()


def check_theorem2(pt: ParamPoint, size: int, *, seed=None):
    """The matrix form of the n=2 eigen-decomposition, every route compared pairwise."""
    out = Outcome("theorem2", THEOREM, point=pt, trunc=size, seed=seed)
    C = c_matrix(pt, size)
    Dm = d_matrix(pt, size)
    Ct = ctilde_matrix(pt, size)
    Lam = lambda_matrix(pt, size)
    E = e_matrix_closed(pt, size)
    M = operator_matrix(pt, Truncation.total(size - 1))
    L = bidiagonal_L(size)

    out.compare("C*Cinv=I", first_difference(mat_mul(C, Dm), identity(size)))
    out.compare("Cinv*C=I", first_difference(mat_mul(Dm, C), identity(size)))
    out.compare("Ct*Cinv=ones", first_difference(mat_mul(Ct, Dm), lower_ones(size)))
    out.compare("L*Ct=C", first_difference(mat_mul(L, Ct), C))

    CtLC = mat_mul(mat_mul(Ct, Lam), Dm)
    W87 = ctlamc_w87_matrix(pt, size)
    WAT = ctlamc_watson_matrix(pt, size)
    routes = {"product": CtLC, "8W7": W87, "watson": WAT, "e_closed": E}
    names = list(routes)
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            out.compare(f"{names[a]}=={names[b]}", first_difference(routes[names[a]], routes[names[b]]))
    out.compare("diag(CtLC)=Lambda", first_difference(diag([CtLC[i][i] for i in range(size)]), Lam))
    out.compare("lambda two forms", first_difference(Lam, lambda_matrix(pt, size, form=2)))
    out.compare("M=L*E", first_difference(M.entries, mat_mul(L, E)))
    prop1 = [kernel_column_n2_prop1(pt, j, size) for j in range(size)]
    out.compare("E==2phi1 product", first_difference(E, [[prop1[j][i] for j in range(size)] for i in range(size)]))
    out.compare("M*C=C*Lambda", first_difference(mat_mul(M.entries, C), mat_mul(C, Lam)))
    out.compare("C 4phi3==2phi1", first_difference(C, c_matrix_2phi1(pt, size)))

    inv_sums = [[inverse_sum_6phi5(pt, i, j) if i >= j else Q(0) for j in range(size)] for i in range(size)]
    out.compare("6phi5 inverse sum", first_difference(inv_sums, identity(size)))
    ctc_sums = [[ctc_sum_6phi5(pt, i, j) if i >= j else Q(0) for j in range(size)] for i in range(size)]
    out.compare("6phi5 all-ones sum", first_difference(ctc_sums, lower_ones(size)))
    return out.report()


def check_n2_eigenfunctions(pt: ParamPoint, D: int, indices=range(7), *, seed=None):
    """Eigen-solver columns equal both closed forms of f_j."""
    trunc = Truncation.total(D)
    out = Outcome("n2_eigen", THEOREM, point=pt, trunc=trunc, seed=seed)
    size = D + 1
    M = operator_matrix(pt, trunc)
    C4 = c_matrix(pt, size)
    C2 = c_matrix_2phi1(pt, size)
    for j in indices:
        res = eigenfunction((j,), pt, trunc, matrix=M)
        solved = [res.f[(i,)] for i in range(size)]
        out.compare(f"f_{j} vs 4phi3", list_difference(solved, [C4[i][j] for i in range(size)]))
        out.compare(f"f_{j} vs 2phi1", list_difference(solved, [C2[i][j] for i in range(size)]))
    out.details["indices"] = list(indices)
    return out.report()


def lemma_params(seed, *, height: int = 64):
    rng = random.Random(f"qcommute-lemma:{seed}")
    u = _rand_rational(rng, height, below_one=True)
    r = _rand_rational(rng, height)
    a = _rand_rational(rng, height)
    b = _rand_rational(rng, height)
    c = _rand_rational(rng, height)
    return {"u": u, "a_root": r, "a": a, "b": b, "c": c}


def lemma1_sides(u, a_root, b, N: int):
    q = u * u
    a = a_root * a_root
    z_scale = q / b
    lhs = one_minus_times(scaled_powers(phi_series(PhiSpec((a, b), (a * q / b,), q, N)), z_scale), N)
    upper = (a_root * u, -a_root * u, a / q, b / q)
    lower = (a_root / u, -a_root / u, a * q / b)
    rhs = scaled_powers(phi_series(PhiSpec(upper, lower, q, N)), z_scale)
    return lhs, rhs


def lemma3_sides(u, a, b, c, N: int):
    q = u * u
    prefactor = scaled_powers(qbinomial_series(q / (b * b), q, N), b)
    f1 = scaled_powers(phi_series(PhiSpec((a, b), (a * q / b,), q, N)), q / b)
    f2 = scaled_powers(phi_series(PhiSpec((c, b), (c * q / b,), q, N)), q / b)
    lhs = univariate_mul(univariate_mul(prefactor, f1, N), f2, N)
    outer = scaled_powers(phi_series(PhiSpec((c * q / (b * b), q / b), (c * q / b,), q, N)), b)
    rhs = []
    for k in range(N + 1):
        qk = q ** (-k)
        upper = [qk, b, b * qk / c, a]
        lower = [b * qk, b * b * qk / c, a * q / b]
        rhs.append(outer[k] * phi_eval_terminating(upper, lower, q, q, bound=k))
    return lhs, rhs


def check_lemma1(params: dict, N: int, *, seed=None):
    out = Outcome("lemma1", THEOREM, point=_plain(params), trunc=N, seed=seed)
    lhs, rhs = lemma1_sides(params["u"], params["a_root"], params["b"], N)
    out.compare("z-coefficients", list_difference(lhs, rhs))
    return out.report()


def check_lemma3(params: dict, N: int, *, seed=None):
    out = Outcome("lemma3", THEOREM, point=_plain(params), trunc=N, seed=seed)
    u, a, b = params["u"], params["a"], params["b"]
    lhs, rhs = lemma3_sides(u, a, b, params["c"], N)
    out.compare("z-coefficients", list_difference(lhs, rhs))
    q = u * u
    out.details["inner_terminates_at"] = [termination_index([q ** (-k), b], q, k) for k in range(N + 1)]
    return out.report()


def _plain(params: dict) -> dict:
    from .._scalar import to_str

    return {k: to_str(v) for k, v in params.items()}


def check_alpha_independence(pt: ParamPoint, alpha2, indices, trunc: Truncation, *, seed=None):
    """Eigenfunctions at two spectral parameters coincide coefficientwise."""
    kind = THEOREM if pt.n == 2 else CONJECTURE
    out = Outcome("alpha_independence", kind, point=pt, trunc=trunc, seed=seed)
    out.details["alpha2"] = str(Q(alpha2))
    pt2 = pt.with_alpha(alpha2)
    for j in indices:
        f1 = eigenfunction(j, pt, trunc).f
        f2 = eigenfunction(j, pt2, trunc).f
        diff = first_series_difference(f1, f2)
        out.compare(f"f{list(j)}", None if diff is None else diff)
    out.details["indices"] = [list(j) for j in indices]
    return out.report()


def check_shift(pt: ParamPoint, j, trunc: Truncation, *, seed=None):
    return shift_check(j, pt, trunc, seed=seed)
