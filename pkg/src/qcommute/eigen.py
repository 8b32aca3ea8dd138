"""Triangular eigenproblem for I(alpha): eigenvalues, eigenfunctions, parameter shifts."""

from __future__ import annotations

import time
from dataclasses import dataclass

from ._scalar import ONE, ZERO, Q, from_str, to_str
from .errors import EigenvalueCollision, ShapeMismatch
from .qkernel import ParamPoint
from .report import FAIL, THEOREM, Discrepancy, VerificationReport, success_status
from .series import ConeSeries, Exponent, Truncation, dominates, enumerate_basis, product_h
from .xform import OperatorMatrix, _MuTable, lambda_diag, monomial_image


def eigenvalue(j: Exponent, pt: ParamPoint):
    return lambda_diag(pt, tuple(j))


@dataclass(frozen=True)
class EigenResult:
    j: tuple
    lam: object
    f: ConeSeries

    def to_dict(self) -> dict:
        return {"index": list(self.j), "eigenvalue": to_str(self.lam), "series": self.f.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> "EigenResult":
        return cls(tuple(d["index"]), from_str(d["eigenvalue"]), ConeSeries.from_dict(d["series"]))


def _columns_above(j: Exponent, pt: ParamPoint, trunc: Truncation) -> tuple[list, dict]:
    """Basis exponents >= j and the operator columns for them."""
    needed = [e for e in enumerate_basis(pt.n, trunc) if dominates(e, j)]
    H = product_h(pt, trunc)
    mt = _MuTable(pt)
    cols = {e: monomial_image(e, pt, trunc, H=H, mu_table=mt) for e in needed}
    return needed, cols


def eigenfunction(
    j: Exponent,
    pt: ParamPoint,
    trunc: Truncation,
    *,
    matrix: OperatorMatrix | None = None,
    normalization=ONE,
) -> EigenResult:
    """Solve (M - lambda_j) f = 0 with f = x^j + higher terms, by back-substitution.

    Only exponents componentwise >= j are visited, in (weight, lex) order.
    """
    j = tuple(int(x) for x in j)
    if len(j) != pt.n - 1:
        raise ShapeMismatch(f"index {j} has wrong length for n={pt.n}")
    if not trunc.admits(j):
        raise ValueError(f"index {j} is outside the truncation {trunc}")
    lam = eigenvalue(j, pt)
    if matrix is not None:
        needed = [e for e in matrix.basis if dominates(e, j)]

        def M(row, col):
            return matrix.entry(row, col)

    else:
        needed, cols = _columns_above(j, pt, trunc)

        def M(row, col):
            return cols[col][row]

    c = {j: Q(normalization)}
    solved = [j]
    for i in needed:
        if i == j:
            continue
        acc = ZERO
        for k in solved:
            if dominates(i, k):
                m = M(i, k)
                if m != 0:
                    acc += m * c[k]
        gap = lam - M(i, i)
        if gap == 0:
            raise EigenvalueCollision(f"lambda{j} equals the diagonal entry at {i}")
        c[i] = acc / gap
        solved.append(i)
    return EigenResult(j, lam, ConeSeries(pt.n, trunc, c))


def residual(result: EigenResult, matrix: OperatorMatrix) -> ConeSeries:
    """M f - lambda f (zero for an exact eigenfunction)."""
    return matrix.apply(result.f) - result.f.scale(result.lam)


def shifted_point(j: Exponent, pt: ParamPoint, orientation: int = 1) -> ParamPoint:
    """s_i -> s_i q^{orientation * (j_i - j_{i-1})}  (j_0 = j_n = 0)."""
    jj = (0,) + tuple(j) + (0,)
    return pt.shift_s([orientation * (jj[i] - jj[i - 1]) for i in range(1, pt.n + 1)])


def shift_image(j: Exponent, pt: ParamPoint, trunc: Truncation, orientation: int = 1) -> ConeSeries:
    """x^j f_0 evaluated at the shifted parameters, on the truncation of f_j."""
    j = tuple(j)
    res = trunc.residual(j)
    f0 = eigenfunction((0,) * len(j), shifted_point(j, pt, orientation), res).f
    return ConeSeries(pt.n, trunc, {tuple(a + b for a, b in zip(e, j)): v for e, v in f0.items()})


def first_series_difference(a: ConeSeries, b: ConeSeries, exponents=None):
    keys = exponents if exponents is not None else sorted(set(a.support()) | set(b.support()), key=lambda e: (sum(e), e))
    for e in keys:
        if a[e] != b[e]:
            return e, a[e], b[e]
    return None


def shift_check(j: Exponent, pt: ParamPoint, trunc: Truncation, *, seed: int | None = None) -> VerificationReport:
    """f_j(s) == x^j f_0(s shifted by q powers), exactly on the truncation.

    The primary orientation raises s_i by q^{j_i - j_{i-1}}; the opposite one is
    evaluated as well and recorded in ``details``.
    """
    start = time.perf_counter()
    j = tuple(j)
    kind = THEOREM
    fj = eigenfunction(j, pt, trunc).f
    details = {"index": list(j)}
    outcome = {}
    first = None
    for name, orient in (("primary", 1), ("opposite", -1)):
        try:
            rhs = shift_image(j, pt, trunc, orient)
        except ZeroDivisionError as exc:
            outcome[name] = f"non-generic: {exc}"
            continue
        diff = first_series_difference(fj, rhs)
        outcome[name] = "match" if diff is None else f"mismatch at {list(diff[0])}"
        if name == "primary":
            first = diff
    details["orientations"] = outcome
    if j == (0,) * len(j):
        details["note"] = "zero index: no shift"
    status = success_status(kind) if first is None and outcome.get("primary") == "match" else FAIL
    disc = None
    if status == FAIL:
        disc = Discrepancy(str(list(first[0])), first[1], first[2]) if first else Discrepancy("shifted point", None, outcome.get("primary"))
    return VerificationReport(
        check_name="shift",
        status=status,
        kind=kind,
        point=pt,
        trunc=trunc,
        first_discrepancy=disc,
        elapsed=time.perf_counter() - start,
        seed=seed,
        details=details,
    )
