"""Series building blocks shared by the conjectural closed forms."""

from __future__ import annotations

from .._scalar import ONE
from ..hyperg import PhiSpec, phi_series, qbinomial_series
from ..series import ConeSeries, Truncation, add_exponents, one_minus_times, pair_product, scaled_powers


def all_pairs(n: int):
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def phi_block(pt, ks: dict, trunc: Truncation) -> ConeSeries:
    """prod_{i<j} (1 - zeta_j/zeta_i) 2phi1(q^{k+1}/t, q s_i/(t s_j); q^{k+1} s_i/s_j; q, t zeta_j/zeta_i).

    ``ks`` maps each pair (i, j) to its k_{ij}.
    """
    q, t = pt.q, pt.t
    s = pt.s

    def factor(i, j, order):
        ratio = s[i - 1] / s[j - 1]
        qk = q ** (ks[(i, j)] + 1)
        coeffs = phi_series(PhiSpec((qk / t, q * ratio / t), (qk * ratio,), q, order))
        return one_minus_times(scaled_powers(coeffs, t), order)

    return pair_product(pt.n, trunc, factor)


def product_pairs(n: int, trunc: Truncation, pairs, a, q, c) -> ConeSeries:
    """prod over pairs of (1 - z) (a c z;q)_inf / (c z;q)_inf with z = zeta_j/zeta_i."""

    def factor(i, j, order):
        return one_minus_times(scaled_powers(qbinomial_series(a, q, order), c), order)

    return pair_product(n, trunc, factor, pairs)


def placed(build, e, trunc: Truncation, coeff=ONE) -> ConeSeries | None:
    """coeff * x^e * build(T'), where T' is the residual of ``trunc`` at e.

    Returns None when x^e itself lies outside the truncation.
    """
    res = trunc.residual(e)
    if res is None:
        return None
    term = build(res)
    return ConeSeries(term.n, trunc, {add_exponents(f, e): v * coeff for f, v in term.items()})
