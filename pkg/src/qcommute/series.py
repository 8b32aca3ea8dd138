"""Truncated formal power series in the cone variables x_i = zeta_{i+1}/zeta_i.

An exponent is a tuple ``(e_1, ..., e_{n-1})`` of non-negative ints; the
ratio ``zeta_m/zeta_l`` (l < m) is the exponent with ones in coordinates
l..m-1.  Both truncation modes are down-closed, so products restricted to
the truncation are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Callable, Iterable, Mapping, Sequence

from ._scalar import ONE, ZERO, Q, from_str, to_str
from .errors import ShapeMismatch
from .hyperg import qbinomial_series


Exponent = tuple


def weight(e: Sequence[int]) -> int:
    return sum(e)


def pair_exponent(l: int, m: int, n: int) -> Exponent:
    """Exponent of zeta_m / zeta_l for 1 <= l < m <= n."""
    if not 1 <= l < m <= n:
        raise ValueError(f"need 1 <= l < m <= n, got l={l}, m={m}, n={n}")
    return tuple(1 if l - 1 <= i < m - 1 else 0 for i in range(n - 1))


def add_exponents(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def dominates(a: Exponent, b: Exponent) -> bool:
    """a >= b componentwise."""
    return all(x >= y for x, y in zip(a, b))


@dataclass(frozen=True)
class Truncation:
    mode: str  # "total" or "box"
    bound: object  # int for total, tuple of ints for box

    @classmethod
    def total(cls, D: int) -> "Truncation":
        if D < 0:
            raise ValueError("total degree bound must be non-negative")
        return cls("total", int(D))

    @classmethod
    def box(cls, bounds: Iterable[int]) -> "Truncation":
        b = tuple(int(x) for x in bounds)
        if any(x < 0 for x in b):
            raise ValueError("box bounds must be non-negative")
        return cls("box", b)

    def admits(self, e: Exponent) -> bool:
        if self.mode == "total":
            return sum(e) <= self.bound
        return all(x <= b for x, b in zip(e, self.bound))

    def check_n(self, n: int) -> None:
        if self.mode == "box" and len(self.bound) != n - 1:
            raise ShapeMismatch(f"box truncation has {len(self.bound)} bounds, need {n - 1}")

    def residual(self, e: Exponent) -> "Truncation | None":
        """Truncation T' with  x^e * y admitted by self  iff  y admitted by T'."""
        if not self.admits(e):
            return None
        if self.mode == "total":
            return Truncation.total(self.bound - sum(e))
        return Truncation.box(b - x for b, x in zip(self.bound, e))

    def max_power(self, e: Exponent) -> int:
        """Largest k with k*e admitted (e nonzero)."""
        if self.mode == "total":
            w = sum(e)
            return self.bound // w
        return min(b // x for b, x in zip(self.bound, e) if x)

    def contains(self, other: "Truncation", n: int) -> bool:
        return all(self.admits(e) for e in enumerate_basis(n, other))

    def to_dict(self) -> dict:
        if self.mode == "total":
            return {"mode": "total", "bound": self.bound}
        return {"mode": "box", "bound": list(self.bound)}

    @classmethod
    def from_dict(cls, d: Mapping) -> "Truncation":
        if d["mode"] == "total":
            return cls.total(int(d["bound"]))
        if d["mode"] == "box":
            return cls.box(d["bound"])
        raise ValueError(f"unknown truncation mode {d['mode']!r}")

    def __str__(self) -> str:
        if self.mode == "total":
            return f"deg<={self.bound}"
        return "box(" + ",".join(map(str, self.bound)) + ")"


def basis_key(e: Exponent):
    return (sum(e), e)


def enumerate_basis(n: int, trunc: Truncation) -> list[Exponent]:
    """All admitted exponents, ordered by (weight, lexicographic)."""
    trunc.check_n(n)
    d = n - 1
    if trunc.mode == "box":
        out = [tuple(e) for e in _cartesian(*(range(b + 1) for b in trunc.bound))]
    else:
        out = []

        def rec(prefix: list, left: int):
            if len(prefix) == d:
                out.append(tuple(prefix))
                return
            for k in range(left + 1):
                prefix.append(k)
                rec(prefix, left - k)
                prefix.pop()

        rec([], trunc.bound)
    out.sort(key=basis_key)
    return out


class ConeSeries:
    """Truncated series with exact coefficients; treat instances as immutable."""

    __slots__ = ("n", "trunc", "_c")

    def __init__(self, n: int, trunc: Truncation, coeffs: Mapping | None = None):
        trunc.check_n(n)
        self.n = n
        self.trunc = trunc
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                e = tuple(e)
                if len(e) != n - 1:
                    raise ShapeMismatch(f"exponent {e} has wrong length for n={n}")
                if v != 0 and trunc.admits(e):
                    c[e] = Q(v)
        self._c = c

    @classmethod
    def _raw(cls, n: int, trunc: Truncation, c: dict) -> "ConeSeries":
        obj = cls.__new__(cls)
        obj.n, obj.trunc, obj._c = n, trunc, c
        return obj

    @classmethod
    def one(cls, n: int, trunc: Truncation) -> "ConeSeries":
        return cls(n, trunc, {(0,) * (n - 1): ONE})

    @classmethod
    def monomial(cls, e: Exponent, n: int, trunc: Truncation, coeff=ONE) -> "ConeSeries":
        return cls(n, trunc, {tuple(e): coeff})

    def __getitem__(self, e) -> object:
        return self._c.get(tuple(e), ZERO)

    def items(self) -> list:
        return sorted(self._c.items(), key=lambda kv: basis_key(kv[0]))

    def support(self) -> list[Exponent]:
        return sorted(self._c, key=basis_key)

    def __len__(self) -> int:
        return len(self._c)

    def _check(self, other: "ConeSeries") -> None:
        if self.n != other.n or self.trunc != other.trunc:
            raise ShapeMismatch("series differ in n or truncation")

    def __add__(self, other: "ConeSeries") -> "ConeSeries":
        self._check(other)
        c = dict(self._c)
        for e, v in other._c.items():
            w = c.get(e, ZERO) + v
            if w == 0:
                c.pop(e, None)
            else:
                c[e] = w
        return ConeSeries._raw(self.n, self.trunc, c)

    def __neg__(self) -> "ConeSeries":
        return ConeSeries._raw(self.n, self.trunc, {e: -v for e, v in self._c.items()})

    def __sub__(self, other: "ConeSeries") -> "ConeSeries":
        return self + (-other)

    def scale(self, k) -> "ConeSeries":
        k = Q(k)
        if k == 0:
            return ConeSeries._raw(self.n, self.trunc, {})
        return ConeSeries._raw(self.n, self.trunc, {e: v * k for e, v in self._c.items()})

    def __mul__(self, other: "ConeSeries") -> "ConeSeries":
        return series_mul(self, other)

    def shift(self, e: Exponent) -> "ConeSeries":
        """Multiply by the monomial x^e, dropping non-admitted exponents."""
        c = {}
        for f, v in self._c.items():
            g = add_exponents(f, e)
            if self.trunc.admits(g):
                c[g] = v
        return ConeSeries._raw(self.n, self.trunc, c)

    def restrict(self, trunc: Truncation) -> "ConeSeries":
        return ConeSeries(self.n, trunc, {e: v for e, v in self._c.items() if trunc.admits(e)})

    def with_trunc(self, trunc: Truncation) -> "ConeSeries":
        """Relabel the truncation (coefficients outside it are dropped)."""
        return self.restrict(trunc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConeSeries):
            return NotImplemented
        return self.n == other.n and self._c == other._c

    def __repr__(self) -> str:
        body = ", ".join(f"{e}: {to_str(v)}" for e, v in self.items()[:6])
        more = ", ..." if len(self._c) > 6 else ""
        return f"ConeSeries(n={self.n}, {self.trunc}, {{{body}{more}}})"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "trunc": self.trunc.to_dict(),
            "coeffs": [{"e": list(e), "c": to_str(v)} for e, v in self.items()],
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "ConeSeries":
        trunc = Truncation.from_dict(d["trunc"])
        coeffs = {tuple(item["e"]): from_str(item["c"]) for item in d["coeffs"]}
        return cls(int(d["n"]), trunc, coeffs)


def series_mul(a: ConeSeries, b: ConeSeries) -> ConeSeries:
    a._check(b)
    trunc = a.trunc
    out: dict = {}
    bt = list(b._c.items())
    if trunc.mode == "total":
        D = trunc.bound
        bt.sort(key=lambda kv: sum(kv[0]))
        bw = [sum(e) for e, _ in bt]
        for e1, c1 in a._c.items():
            w1 = sum(e1)
            for (e2, c2), w2 in zip(bt, bw):
                if w1 + w2 > D:
                    break
                g = tuple(x + y for x, y in zip(e1, e2))
                out[g] = out.get(g, ZERO) + c1 * c2
    else:
        bound = trunc.bound
        for e1, c1 in a._c.items():
            for e2, c2 in bt:
                g = tuple(x + y for x, y in zip(e1, e2))
                if all(x <= y for x, y in zip(g, bound)):
                    out[g] = out.get(g, ZERO) + c1 * c2
    return ConeSeries._raw(a.n, trunc, {e: v for e, v in out.items() if v != 0})


def series_product(factors: Sequence[ConeSeries], n: int, trunc: Truncation) -> ConeSeries:
    out = ConeSeries.one(n, trunc)
    for f in factors:
        out = series_mul(out, f)
    return out


def univariate_mul(a: Sequence, b: Sequence, order: int) -> list:
    out = [ZERO] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x == 0:
            continue
        for j, y in enumerate(b[: order + 1 - i]):
            out[i + j] += x * y
    return out


def one_minus_times(coeffs: Sequence, order: int) -> list:
    """Coefficients of (1 - z) * sum coeffs[k] z^k through ``order``."""
    return univariate_mul([ONE, -ONE], list(coeffs), order)


def scaled_powers(coeffs: Sequence, c) -> list:
    """coeffs[k] * c^k (substitution z -> c z)."""
    out = []
    p = ONE
    for x in coeffs:
        out.append(x * p)
        p = p * c
    return out


def cone_from_univariate(coeffs: Sequence, l: int, m: int, n: int, trunc: Truncation) -> ConeSeries:
    """sum coeffs[k] (zeta_m/zeta_l)^k as a cone series."""
    base = pair_exponent(l, m, n)
    K = trunc.max_power(base)
    c = {}
    for k in range(min(K, len(coeffs) - 1) + 1):
        if coeffs[k] != 0:
            c[tuple(k * x for x in base)] = coeffs[k]
    return ConeSeries._raw(n, trunc, c)


def pair_order(l: int, m: int, n: int, trunc: Truncation) -> int:
    return trunc.max_power(pair_exponent(l, m, n))


def pair_product(
    n: int,
    trunc: Truncation,
    factor: Callable[[int, int, int], Sequence],
    pairs: Iterable[tuple[int, int]] | None = None,
) -> ConeSeries:
    """prod over pairs (l, m) of factor(l, m, order), each a univariate list in zeta_m/zeta_l."""
    if pairs is None:
        pairs = [(l, m) for l in range(1, n + 1) for m in range(l + 1, n + 1)]
    out = ConeSeries.one(n, trunc)
    for l, m in pairs:
        order = pair_order(l, m, n, trunc)
        out = series_mul(out, cone_from_univariate(factor(l, m, order), l, m, n, trunc))
    return out


def h_coeffs(pt, order: int) -> list:
    """Univariate coefficients of h(z) = (1 - z)(q z/t;q)_inf/(t z;q)_inf."""
    ratio = scaled_powers(qbinomial_series(pt.q / (pt.t * pt.t), pt.q, order), pt.t)
    return one_minus_times(ratio, order)


def h_expand(l: int, m: int, pt, trunc: Truncation) -> ConeSeries:
    n = pt.n
    return cone_from_univariate(h_coeffs(pt, pair_order(l, m, n, trunc)), l, m, n, trunc)


def g_coeff(k: int, pt):
    """Coefficient g_k = (t;q)_k/(q;q)_k (u/v)^k of g(z)."""
    from .qkernel import qpoch_ratio

    if k < 0:
        raise ValueError("g_coeff needs k >= 0")
    return qpoch_ratio([pt.t], [pt.q], pt.q, k) * (pt.u / pt.v) ** k


def g_coeffs(pt, order: int) -> list:
    ratio = qbinomial_series(pt.t, pt.q, order)
    return scaled_powers(ratio, pt.u / pt.v)


def product_h(pt, trunc: Truncation) -> ConeSeries:
    """prod_{i<j} h(zeta_j/zeta_i) truncated."""
    n = pt.n
    return pair_product(n, trunc, lambda l, m, order: h_coeffs(pt, order))
