"""Matrix of I(alpha) on the graded monomial basis, plus the n=2 closed forms.

The operator is realized through its action on a monomial x^j:

    I(alpha) x^j = x^j prod_{l<m} h(zeta_m/zeta_l)
                   * sum_{k_{lm} >= 0, l != m} prod_r mu(alpha/s_r; net_r + j_{r-1} - j_r)
                     * prod_{l != m} g_{k_{lm}} (zeta_max/zeta_min)^{k_{lm}}

where net_r = sum_{l<r} k_{l,r} - sum_{l>r} k_{l,r}.  Each k_{lm} adds cone
weight |m - l| >= 1, so only finitely many configurations fit inside any
truncation and the sum is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._scalar import ONE, ZERO, Q, from_str, to_str
from .errors import BudgetExceeded, NonGenericPoint, ShapeMismatch, TriangularityViolation
from .hyperg import phi_eval_terminating, qbinomial_series, w87_eval
from .qkernel import ParamPoint, mu, qpoch, qpoch_ratio
from .series import (
    ConeSeries,
    Exponent,
    Truncation,
    add_exponents,
    dominates,
    enumerate_basis,
    g_coeffs,
    one_minus_times,
    pair_exponent,
    product_h,
    scaled_powers,
)

DEFAULT_CONFIG_BUDGET = 5_000_000


# --------------------------------------------------------------------------
# exact dense matrix helpers


def mat_mul(A, B):
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    if A and len(A[0]) != m:
        raise ShapeMismatch("inner dimensions differ")
    out = [[ZERO] * p for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        row = out[i]
        for k in range(m):
            a = Ai[k]
            if a == 0:
                continue
            Bk = B[k]
            for j in range(p):
                b = Bk[j]
                if b != 0:
                    row[j] += a * b
    return out


def identity(size: int):
    return [[ONE if i == j else ZERO for j in range(size)] for i in range(size)]


def diag(values):
    size = len(values)
    return [[values[i] if i == j else ZERO for j in range(size)] for i in range(size)]


def lower_ones(size: int):
    return [[ONE if i >= j else ZERO for j in range(size)] for i in range(size)]


def bidiagonal_L(size: int):
    """Matrix of multiplication by (1 - zeta_2/zeta_1) on the n=2 basis."""
    return [[ONE if i == j else (-ONE if i == j + 1 else ZERO) for j in range(size)] for i in range(size)]


def first_difference(A, B):
    """(row, col, A[r][c], B[r][c]) of the first differing entry, row-major, else None."""
    for i, (ra, rb) in enumerate(zip(A, B)):
        for j, (a, b) in enumerate(zip(ra, rb)):
            if a != b:
                return i, j, a, b
    return None


# --------------------------------------------------------------------------
# general n: the monomial action


def _config_variables(n: int):
    """One entry per ordered pair (l, m), l != m: (exponent, weight, r, sign)."""
    out = []
    for l in range(1, n + 1):
        for m in range(1, n + 1):
            if l == m:
                continue
            lo, hi = min(l, m), max(l, m)
            out.append((pair_exponent(lo, hi, n), hi - lo, m, 1 if l < m else -1))
    out.sort(key=lambda v: -v[1])
    return out


class _MuTable:
    def __init__(self, pt: ParamPoint):
        self.pt = pt
        self.base = [pt.alpha / s for s in pt.s]
        self.cache: dict = {}

    def __call__(self, r: int, k: int):
        key = (r, k)
        v = self.cache.get(key)
        if v is None:
            v = mu(self.base[r - 1], k, self.pt)
            self.cache[key] = v
        return v


def kernel_sum(
    j: Exponent,
    pt: ParamPoint,
    trunc: Truncation,
    *,
    mu_table: _MuTable | None = None,
    budget: int = DEFAULT_CONFIG_BUDGET,
) -> ConeSeries:
    """The configuration sum (without x^j and the h prefactor) in truncation ``trunc``."""
    n = pt.n
    if mu_table is None:
        mu_table = _MuTable(pt)
    jj = [0] + list(j) + [0]
    offset = [jj[r - 1] - jj[r] for r in range(1, n + 1)]
    variables = _config_variables(n)
    zero = (0,) * (n - 1)
    max_k = trunc.bound if trunc.mode == "total" else max(trunc.bound, default=0)
    g = g_coeffs(pt, max(max_k, 0))
    acc: dict = {}
    count = 0
    net = [0] * (n + 1)
    nv = len(variables)

    def rec(i: int, e: Exponent, gprod):
        nonlocal count
        if i == nv:
            count += 1
            if count > budget:
                raise BudgetExceeded(f"more than {budget} kernel configurations")
            val = gprod
            for r in range(1, n + 1):
                val = val * mu_table(r, net[r] + offset[r - 1])
            acc[e] = acc.get(e, ZERO) + val
            return
        vec, _, r, sign = variables[i]
        k = 0
        cur = e
        while True:
            rec(i + 1, cur, gprod if k == 0 else gprod * g[k])
            k += 1
            nxt = add_exponents(cur, vec)
            if not trunc.admits(nxt):
                break
            net[r] += sign
            cur = nxt
        net[r] -= sign * (k - 1)

    rec(0, zero, ONE)
    return ConeSeries(n, trunc, acc)


def monomial_image(
    j: Exponent,
    pt: ParamPoint,
    trunc: Truncation,
    *,
    H: ConeSeries | None = None,
    mu_table: _MuTable | None = None,
) -> ConeSeries:
    """I(alpha) applied to x^j, truncated to ``trunc``."""
    j = tuple(int(x) for x in j)
    n = pt.n
    if len(j) != n - 1:
        raise ShapeMismatch(f"index {j} has wrong length for n={n}")
    res = trunc.residual(j)
    if res is None:
        return ConeSeries(n, trunc)
    if H is None:
        H = product_h(pt, trunc)
    S = kernel_sum(j, pt, res, mu_table=mu_table)
    body = H.restrict(res) * S
    return ConeSeries._raw(n, trunc, {add_exponents(e, j): v for e, v in body.items()})


@dataclass
class OperatorMatrix:
    n: int
    trunc: Truncation
    basis: list
    entries: list
    alpha: object
    point: ParamPoint | None = field(default=None, repr=False)

    def __post_init__(self):
        self._index = {e: i for i, e in enumerate(self.basis)}

    @property
    def size(self) -> int:
        return len(self.basis)

    def index(self, e: Exponent) -> int:
        return self._index[tuple(e)]

    def entry(self, row: Exponent, col: Exponent):
        return self.entries[self.index(row)][self.index(col)]

    def diagonal(self) -> list:
        return [self.entries[i][i] for i in range(self.size)]

    def column(self, e: Exponent) -> ConeSeries:
        c = self.index(e)
        return ConeSeries(self.n, self.trunc, {self.basis[r]: self.entries[r][c] for r in range(self.size)})

    def apply(self, f: ConeSeries) -> ConeSeries:
        """Matrix times the coefficient vector of f (f restricted to the basis)."""
        if f.n != self.n:
            raise ShapeMismatch("series and operator differ in n")
        out = [ZERO] * self.size
        for c, e in enumerate(self.basis):
            fc = f[e]
            if fc == 0:
                continue
            for r in range(c, self.size):
                a = self.entries[r][c]
                if a != 0:
                    out[r] += a * fc
        return ConeSeries(self.n, self.trunc, dict(zip(self.basis, out)))

    def to_dict(self) -> dict:
        d = {
            "n": self.n,
            "trunc": self.trunc.to_dict(),
            "alpha": to_str(self.alpha),
            "basis": [list(e) for e in self.basis],
            "entries": [[to_str(x) for x in row] for row in self.entries],
        }
        if self.point is not None:
            d["point"] = self.point.to_dict()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "OperatorMatrix":
        pt = ParamPoint.from_dict(d["point"]) if "point" in d else None
        return cls(
            n=int(d["n"]),
            trunc=Truncation.from_dict(d["trunc"]),
            basis=[tuple(e) for e in d["basis"]],
            entries=[[from_str(x) for x in row] for row in d["entries"]],
            alpha=from_str(d["alpha"]),
            point=pt,
        )


def operator_matrix(pt: ParamPoint, trunc: Truncation) -> OperatorMatrix:
    """Dense lower-triangular matrix of I(alpha); column c is the image of basis[c]."""
    n = pt.n
    basis = enumerate_basis(n, trunc)
    H = product_h(pt, trunc)
    mt = _MuTable(pt)
    size = len(basis)
    entries = [[ZERO] * size for _ in range(size)]
    index = {e: i for i, e in enumerate(basis)}
    for c, e in enumerate(basis):
        col = monomial_image(e, pt, trunc, H=H, mu_table=mt)
        for f, v in col.items():
            if not dominates(f, e):
                raise TriangularityViolation(f"entry ({f}, {e}) is nonzero")
            entries[index[f]][c] = v
    return OperatorMatrix(n=n, trunc=trunc, basis=basis, entries=entries, alpha=pt.alpha, point=pt)


def restrict_matrix(M: OperatorMatrix, trunc: Truncation) -> OperatorMatrix:
    basis = [e for e in M.basis if trunc.admits(e)]
    idx = [M.index(e) for e in basis]
    entries = [[M.entries[r][c] for c in idx] for r in idx]
    return OperatorMatrix(n=M.n, trunc=trunc, basis=basis, entries=entries, alpha=M.alpha, point=M.point)


def lambda_diag(pt: ParamPoint, j: Exponent, *, form: int = 1):
    """Diagonal entry prod_i (alpha/s_i;q)_{j_{i-1}-j_i} / (alpha q/(t s_i);q)_{j_{i-1}-j_i}.

    ``form=2`` (n=2 only) uses the positive-index rewriting
    (s_1 t/alpha;q)_j/(s_1 q/alpha;q)_j (alpha/s_2;q)_j/(alpha q/(t s_2);q)_j (q/t)^j.
    """
    q, t, a = pt.q, pt.t, pt.alpha
    j = tuple(j)
    if form == 2:
        if pt.n != 2:
            raise ShapeMismatch("the second eigenvalue form is for n=2")
        k = j[0]
        s1, s2 = pt.s
        return (
            qpoch_ratio([s1 * t / a, a / s2], [s1 * q / a, a * q / (t * s2)], q, k)
            * (q / t) ** k
        )
    jj = (0,) + j + (0,)
    out = ONE
    for i, si in enumerate(pt.s, start=1):
        d = jj[i - 1] - jj[i]
        num = qpoch(a / si, q, d)
        den = qpoch(a / si * q / t, q, d)
        if den == 0:
            raise NonGenericPoint("vanishing eigenvalue denominator")
        out *= num / den
    return out


# --------------------------------------------------------------------------
# n = 2 closed forms


def _n2(pt: ParamPoint):
    if pt.n != 2:
        raise ShapeMismatch("closed forms are for n=2")
    s = pt.s[0] / pt.s[1]
    return pt.q, pt.t, s


def _s_half(pt: ParamPoint):
    return pt.s_root(1) / pt.s_root(2)


def c_entry(pt: ParamPoint, i: int, j: int):
    """Coefficient c_ij of f_j, terminating 4phi3-type product form."""
    if i < j:
        return ZERO
    q, t, s = _n2(pt)
    sh = _s_half(pt)
    v = pt.v
    num = [s * q ** (2 * j) / t, sh * q ** (j + 1) / v, -sh * q ** (j + 1) / v, ONE / t]
    den = [s * q ** (2 * j + 1), sh * q**j / v, -sh * q**j / v, q]
    return qpoch_ratio(num, den, q, i - j) * t ** (i - j)


def c_column_2phi1(pt: ParamPoint, j: int, size: int) -> list:
    """Column j of C from zeta^j (1 - zeta) 2phi1(q/t, s q^{2j+1}/t; s q^{2j+1}; q, t zeta)."""
    q, t, s = _n2(pt)
    order = size - 1 - j
    out = [ZERO] * size
    if order < 0:
        return out
    from .hyperg import PhiSpec, phi_series

    a = s * q ** (2 * j + 1)
    coeffs = phi_series(PhiSpec((q / t, a / t), (a,), q, order))
    body = one_minus_times(scaled_powers(coeffs, t), order)
    for k, x in enumerate(body):
        out[j + k] = x
    return out


def d_entry(pt: ParamPoint, i: int, j: int):
    if i < j:
        return ZERO
    q, t, s = _n2(pt)
    return qpoch_ratio([s * q ** (i + j + 1) / t, t], [s * q ** (i + j), q], q, i - j)


def ctilde_entry(pt: ParamPoint, i: int, j: int):
    if i < j:
        return ZERO
    q, t, s = _n2(pt)
    a = s * q ** (2 * j + 1)
    return qpoch_ratio([a / t, q / t], [a, q], q, i - j) * t ** (i - j)


def c_matrix(pt: ParamPoint, size: int):
    return [[c_entry(pt, i, j) for j in range(size)] for i in range(size)]


def c_matrix_2phi1(pt: ParamPoint, size: int):
    cols = [c_column_2phi1(pt, j, size) for j in range(size)]
    return [[cols[j][i] for j in range(size)] for i in range(size)]


def d_matrix(pt: ParamPoint, size: int):
    return [[d_entry(pt, i, j) for j in range(size)] for i in range(size)]


def ctilde_matrix(pt: ParamPoint, size: int):
    return [[ctilde_entry(pt, i, j) for j in range(size)] for i in range(size)]


def lambda_matrix(pt: ParamPoint, size: int, *, form: int = 1):
    return diag([lambda_diag(pt, (j,), form=form) for j in range(size)])


def e_entry(pt: ParamPoint, i: int, j: int):
    """Entry e_ij of (1 - zeta)^{-1} I(alpha), prefactor times a balanced 4phi3."""
    if i < j:
        return ZERO
    q, t, _ = _n2(pt)
    a = pt.alpha
    s1, s2 = pt.s
    n = i - j
    pre = qpoch_ratio([q / t, s1 * q ** (j + 1) / (a * t)], [q, s1 * q ** (j + 1) / a], q, n) * t**n
    lam = lambda_diag(pt, (j,))
    upper = [q ** (-n), t, a / s1 * q ** (-i), a / s2 * q**j]
    lower = [q ** (-n) * t, a / s1 * q ** (-i) * t, a / s2 * q ** (j + 1) / t]
    return pre * lam * phi_eval_terminating(upper, lower, q, q, bound=n)


def e_matrix_closed(pt: ParamPoint, size: int):
    return [[e_entry(pt, i, j) for j in range(size)] for i in range(size)]


def ctlamc_w87_entry(pt: ParamPoint, i: int, j: int):
    """(C~ Lambda C^{-1})_ij through the terminating very-well-poised 8W7."""
    if i < j:
        return ZERO
    q, t, s = _n2(pt)
    a = pt.alpha
    s1, s2 = pt.s
    sh = _s_half(pt)
    a1 = q ** (-2 * i) / s
    a1_root = pt.u ** (-2 * i) / sh
    rest = [q / t, q ** (-i - j) * t / s, a / s1 * q ** (-i), s2 / a * q ** (-i) * t, q ** (j - i)]
    w = w87_eval(a1, rest, q, q / t, terminating_bound=i - j, a1_root=a1_root)
    return lambda_diag(pt, (i,)) * d_entry(pt, i, j) * w


def ctlamc_watson_entry(pt: ParamPoint, i: int, j: int):
    """(C~ Lambda C^{-1})_ij through the balanced 4phi3 obtained from Watson's formula."""
    if i < j:
        return ZERO
    q, t, s = _n2(pt)
    a = pt.alpha
    s1, s2 = pt.s
    n = i - j
    pre = qpoch_ratio([q ** (1 - 2 * i) / s, q / t], [s2 / a * q ** (1 - i), a / s1 * q ** (1 - i) / t], q, n)
    upper = [q ** (-n), a / s1 * q ** (-i), s2 / a * q ** (-i) * t, q ** (-n)]
    lower = [q ** (-n) * t, q ** (1 - n) / t, q ** (-2 * i) * t / s]
    phi = phi_eval_terminating(upper, lower, q, q, bound=n)
    return lambda_diag(pt, (i,)) * d_entry(pt, i, j) * pre * phi


def ctlamc_w87_matrix(pt: ParamPoint, size: int):
    return [[ctlamc_w87_entry(pt, i, j) for j in range(size)] for i in range(size)]


def ctlamc_watson_matrix(pt: ParamPoint, size: int):
    return [[ctlamc_watson_entry(pt, i, j) for j in range(size)] for i in range(size)]


def inverse_sum_6phi5(pt: ParamPoint, i: int, j: int):
    """d_ij times the terminating 6phi5 (argument q) equal to sum_k d_ik c_kj."""
    q, t, s = _n2(pt)
    sh = _s_half(pt)
    v = pt.v
    upper = [s * q ** (2 * j) / t, sh * q ** (j + 1) / v, -sh * q ** (j + 1) / v, ONE / t, s * q ** (i + j), q ** (j - i)]
    lower = [sh * q**j / v, -sh * q**j / v, s * q ** (2 * j + 1), q ** (j - i + 1) / t, s * q ** (i + j + 1) / t]
    return d_entry(pt, i, j) * phi_eval_terminating(upper, lower, q, q, bound=i - j)


def ctc_sum_6phi5(pt: ParamPoint, i: int, j: int):
    """d_ij times the terminating 6phi5 (argument 1) equal to sum_k c~_ik d_kj."""
    q, t, s = _n2(pt)
    sh = _s_half(pt)
    qi = pt.u ** (-2 * i)  # q^{-i}
    upper = [qi * qi / s, q * qi / sh, -q * qi / sh, q / t, qi * q ** (-j) * t / s, q ** (j - i)]
    lower = [qi / sh, -qi / sh, qi * qi * t / s, q ** (j - i + 1) / t, qi * q ** (-j) * q / s]
    return d_entry(pt, i, j) * phi_eval_terminating(upper, lower, q, ONE, bound=i - j)


def kernel_column_n2_prop1(pt: ParamPoint, j: int, size: int) -> list:
    """Column j of (1 - zeta)^{-1} I(alpha) from the product of two 2phi1 and the h tail.

    Independent of the configuration enumeration; used as a cross-check.
    """
    q, t, _ = _n2(pt)
    a = pt.alpha
    s1, s2 = pt.s
    order = size - 1 - j
    out = [ZERO] * size
    if order < 0:
        return out
    from .hyperg import PhiSpec, phi_series
    from .series import univariate_mul

    b1 = s1 / a * q**j
    b2 = a / s2 * q**j
    f1 = scaled_powers(phi_series(PhiSpec((b1 * t, t), (b1 * q,), q, order)), q / t)
    f2 = scaled_powers(phi_series(PhiSpec((b2, t), (b2 * q / t,), q, order)), q / t)
    tail = scaled_powers(qbinomial_series(q / (t * t), q, order), t)
    body = univariate_mul(univariate_mul(tail, f1, order), f2, order)
    lam = lambda_diag(pt, (j,))
    for k, x in enumerate(body):
        out[j + k] = x * lam
    return out
