"""Slow, independent reference implementations used only by the tests.

Nothing here imports the package's arithmetic: plain Fractions, plain loops.
"""

from fractions import Fraction
from itertools import product


def frac(x):
    """Plain Fraction with int parts, whatever rational type comes in."""
    return Fraction(int(x.numerator), int(x.denominator)) if hasattr(x, "numerator") else Fraction(x)


def poch(a, q, k):
    """(a;q)_k, negative k by reciprocals."""
    a, q = frac(a), frac(q)
    if k >= 0:
        out = Fraction(1)
        for i in range(k):
            out *= 1 - a * q**i
        return out
    out = Fraction(1)
    for m in range(1, -k + 1):
        out *= 1 - a / q**m
    return 1 / out


def qbinom_coeffs(a, q, order):
    """(a z;q)_inf/(z;q)_inf = sum (a;q)_k/(q;q)_k z^k."""
    a, q = frac(a), frac(q)
    return [poch(a, q, k) / poch(q, q, k) for k in range(order + 1)]


def h_coeffs(q, t, order):
    q, t = frac(q), frac(t)
    base = [c * t**k for k, c in enumerate(qbinom_coeffs(q / (t * t), q, order))]
    return [base[k] - (base[k - 1] if k else 0) for k in range(order + 1)]


def cone_exponent(z):
    """zeta exponent vector (sum zero) -> exponents of x_r = zeta_{r+1}/zeta_r."""
    c, acc = [], 0
    for zi in z[:-1]:
        acc -= zi
        c.append(acc)
    return tuple(c)


def weight(e):
    return sum(e)


def admits(e, D=None, box=None):
    if any(x < 0 for x in e):
        return False
    if box is not None:
        return all(x <= b for x, b in zip(e, box))
    return weight(e) <= D


def series_mul(a, b, ok):
    out = {}
    for ea, va in a.items():
        for eb, vb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if ok(e):
                out[e] = out.get(e, 0) + va * vb
    return {e: v for e, v in out.items() if v != 0}


def operator_image(j, u, v, s, alpha, D=None, box=None):
    """I(alpha) x^j by constant-term extraction in the integration variables.

    Each Theta ratio times the diagonal g(xi_i/zeta_i) is replaced by its
    bilateral expansion sum_m mu_i(m) (zeta_i/xi_i)^m (the normalizing
    infinite products cancel); the off-diagonal g factors are expanded and the
    xi-constant term fixes every m_i.
    """
    u, v, alpha = frac(u), frac(v), frac(alpha)
    s = [frac(x) for x in s]
    q, t = u * u, v * v
    n = len(s)

    def ok(e):
        return admits(e, D, box)

    limit = D if box is None else sum(box)

    def mu(i, m):
        a = alpha / s[i]
        return poch(a, q, m) / poch(a * q / t, q, m) * (u / v) ** m

    def g(k):
        return poch(t, q, k) / poch(q, q, k) * (u / v) ** k

    # f(xi) = prod (xi_{r+1}/xi_r)^{j_r}
    f_exp = [0] * n
    for r, jr in enumerate(j):
        f_exp[r] -= jr
        f_exp[r + 1] += jr
    A = [(i, k) for i in range(n) for k in range(i + 1, n)]  # g(zeta_k / xi_i)
    B = [(jj, k) for k in range(n) for jj in range(k + 1, n)]  # g(xi_j / zeta_k)
    budget = limit - weight(j)
    image = {}
    if budget < 0:
        return image
    ranges = [range(budget // (k - i) + 1) for i, k in A] + [range(budget // (jj - k) + 1) for jj, k in B]
    for ks in product(*ranges):
        ka, kb = ks[: len(A)], ks[len(A):]
        w = sum(x * (k - i) for x, (i, k) in zip(ka, A)) + sum(x * (jj - k) for x, (jj, k) in zip(kb, B))
        if w > budget:
            continue
        xi = list(f_exp)
        zeta = [0] * n
        coeff = Fraction(1)
        for x, (i, k) in zip(ka, A):
            xi[i] -= x
            zeta[k] += x
            coeff *= g(x)
        for x, (jj, k) in zip(kb, B):
            xi[jj] += x
            zeta[k] -= x
            coeff *= g(x)
        for i in range(n):
            zeta[i] += xi[i]  # m_i = xi exponent, giving zeta_i^{m_i}
            coeff *= mu(i, xi[i])
        e = cone_exponent(zeta)
        if ok(e):
            image[e] = image.get(e, 0) + coeff
    H = {tuple([0] * (n - 1)): Fraction(1)}
    for l in range(n):
        for m in range(l + 1, n):
            base = [0] * n
            base[l], base[m] = -1, 1
            pe = cone_exponent(base)
            hc = h_coeffs(q, t, limit)
            fac = {tuple(k * x for x in pe): c for k, c in enumerate(hc) if ok(tuple(k * x for x in pe))}
            H = series_mul(H, fac, ok)
    return series_mul(H, {e: c for e, c in image.items() if c != 0}, ok)


def operator_matrix_dense(u, v, s, alpha, basis, **trunc):
    cols = {e: operator_image(e, u, v, s, alpha, **trunc) for e in basis}
    return [[cols[c].get(r, 0) for c in basis] for r in basis]
