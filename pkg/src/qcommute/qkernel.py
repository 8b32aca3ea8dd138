"""q-shifted factorials and exact parameter points.

All parameters are specialized to exact rationals.  Half-powers of q and t
are avoided by taking ``u = q^(1/2)`` and ``v = t^(1/2)`` as the primitive
parameters; likewise the ``s_i`` may carry tracked square roots.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from ._scalar import ONE, ZERO, Q, from_str, to_str
from .errors import ExhaustedRetries, NonGenericPoint


def qpoch(a, q, k: int):
    """(a;q)_k for any integer k.

    Negative k follows ``(a;q)_{-n} = 1 / prod_{m=1..n} (1 - a q^{-m})``;
    a vanishing factor there raises :class:`NonGenericPoint`.
    """
    k = int(k)
    if k == 0:
        return ONE
    if k > 0:
        out = ONE
        term = a
        for _ in range(k):
            out *= ONE - term
            term = term * q
        return out
    den = ONE
    qinv = ONE / q
    term = a * qinv
    for _ in range(-k):
        den *= ONE - term
        term = term * qinv
    if den == 0:
        raise NonGenericPoint(f"({to_str(a)};q)_{k} has a vanishing factor")
    return ONE / den


def qpoch_multi(values: Iterable, q, k: int):
    out = ONE
    for a in values:
        out *= qpoch(a, q, k)
    return out


def qpoch_ratio(num: Sequence, den: Sequence, q, k: int):
    """prod (num;q)_k / prod (den;q)_k, raising NonGenericPoint on a zero denominator."""
    d = qpoch_multi(den, q, k)
    if d == 0:
        raise NonGenericPoint("vanishing q-Pochhammer denominator")
    return qpoch_multi(num, q, k) / d


@dataclass(frozen=True)
class ParamPoint:
    """Exact specialization of (q^(1/2), t^(1/2), s_1..s_n, alpha).

    ``s_roots`` is optional; when present ``s_roots[i]**2 == s[i]`` and the
    half-powers ``s_i^(1/2)`` needed by the n=2 closed forms are available.
    """

    u: object
    v: object
    s: tuple
    alpha: object
    s_roots: tuple | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "u", Q(self.u))
        object.__setattr__(self, "v", Q(self.v))
        object.__setattr__(self, "alpha", Q(self.alpha))
        object.__setattr__(self, "s", tuple(Q(x) for x in self.s))
        if self.s_roots is not None:
            roots = tuple(Q(x) for x in self.s_roots)
            if len(roots) != len(self.s) or any(r * r != x for r, x in zip(roots, self.s)):
                raise ValueError("s_roots must square to s")
            object.__setattr__(self, "s_roots", roots)
        if len(self.s) < 1:
            raise ValueError("need at least one s parameter")

    @property
    def n(self) -> int:
        return len(self.s)

    @property
    def q(self):
        return self.u * self.u

    @property
    def t(self):
        return self.v * self.v

    def s_root(self, i: int):
        """s_i^(1/2), 1-based index."""
        if self.s_roots is None:
            from ._scalar import rational_sqrt

            return rational_sqrt(self.s[i - 1])
        return self.s_roots[i - 1]

    def with_alpha(self, alpha) -> "ParamPoint":
        return replace(self, alpha=Q(alpha))

    def shift_s(self, powers: Sequence[int]) -> "ParamPoint":
        """Replace s_i by s_i q^(powers[i]) (roots shifted by u^(powers[i]))."""
        s = tuple(x * self.q ** int(p) for x, p in zip(self.s, powers))
        roots = None
        if self.s_roots is not None:
            roots = tuple(r * self.u ** int(p) for r, p in zip(self.s_roots, powers))
        return replace(self, s=s, s_roots=roots)

    def to_dict(self) -> dict:
        d = {
            "u": to_str(self.u),
            "v": to_str(self.v),
            "s": [to_str(x) for x in self.s],
            "alpha": to_str(self.alpha),
        }
        if self.s_roots is not None:
            d["s_roots"] = [to_str(x) for x in self.s_roots]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ParamPoint":
        try:
            roots = d.get("s_roots")
            return cls(
                u=from_str(d["u"]),
                v=from_str(d["v"]),
                s=tuple(from_str(x) for x in d["s"]),
                alpha=from_str(d["alpha"]),
                s_roots=None if roots is None else tuple(from_str(x) for x in roots),
            )
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed parameter point: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ParamPoint":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed parameter point: {exc}") from exc
        if not isinstance(data, dict):
            raise ValueError("malformed parameter point: expected a JSON object")
        return cls.from_dict(data)


def mu(a, k: int, pt: ParamPoint):
    """(a;q)_k / (a q/t;q)_k * (u/v)^k, any integer k."""
    q, t = pt.q, pt.t
    num = qpoch(a, q, k)
    den = qpoch(a * q / t, q, k)
    if den == 0:
        raise NonGenericPoint(f"mu({to_str(a)}; {k}) has a vanishing denominator")
    return num / den * (pt.u / pt.v) ** k


def index_bound(D: int) -> int:
    """Largest |k| of any q-Pochhammer index reachable at total degree D."""
    return 2 * D + 2


def genericity_failures(pt: ParamPoint, D: int, *, check_spectrum: bool = True) -> list[str]:
    """Violated genericity predicates at total degree D (empty list means generic)."""
    q, t, alpha = pt.q, pt.t, pt.alpha
    bad: list[str] = []
    if q == 0 or q == 1:
        bad.append("q in {0, 1}")
    if t == 0:
        bad.append("t == 0")
    if alpha == 0:
        bad.append("alpha == 0")
    if any(x == 0 for x in pt.s):
        bad.append("some s_i == 0")
    if bad:
        return bad
    K = index_bound(D)
    if qpoch(q, q, K) == 0:
        bad.append("(q;q)_K == 0")
    for i, si in enumerate(pt.s, start=1):
        if qpoch(alpha / si * q / t, q, K) == 0:
            bad.append(f"(alpha/s_{i} q/t;q)_K == 0")
        if qpoch(si / alpha * q, q, K) == 0:
            bad.append(f"(s_{i}/alpha q;q)_K == 0")
    if bad or not check_spectrum or pt.n < 2:
        return bad
    from .eigen import eigenvalue
    from .series import Truncation, enumerate_basis

    seen: dict = {}
    for e in enumerate_basis(pt.n, Truncation.total(D)):
        lam = eigenvalue(e, pt)
        if lam in seen:
            bad.append(f"eigenvalue collision between {seen[lam]} and {e}")
            break
        seen[lam] = e
    return bad


def is_generic(pt: ParamPoint, D: int) -> bool:
    return not genericity_failures(pt, D)


def _rand_rational(rng: random.Random, height: int, *, below_one: bool = False, signed: bool = True):
    while True:
        if below_one:
            den = rng.randint(2, height)
            num = rng.randint(1, den - 1)
        else:
            num = rng.randint(1, height)
            den = rng.randint(1, height)
        x = Q(num, den)
        if x == 1:
            continue
        if signed and rng.random() < 0.5:
            x = -x
        return x


def sample_generic_point(
    n: int,
    D: int,
    seed: int,
    *,
    height: int = 64,
    retries: int = 200,
    positive: bool = False,
) -> ParamPoint:
    """Deterministic rational point passing the genericity(D) screen.

    ``u`` is drawn with |u| < 1 so that |q| < 1.  The ``s_i`` are drawn as
    squares of tracked roots.  ``positive`` restricts every primitive draw to
    positive values.
    """
    if n < 2 or D < 1:
        raise ValueError("need n >= 2 and D >= 1")
    rng = random.Random(f"qcommute-point:{n}:{D}:{seed}")
    signed = not positive
    for _ in range(retries):
        u = _rand_rational(rng, height, below_one=True, signed=signed)
        v = _rand_rational(rng, height, signed=signed)
        roots = tuple(_rand_rational(rng, height, signed=signed) for _ in range(n))
        alpha = _rand_rational(rng, height, signed=signed)
        pt = ParamPoint(u=u, v=v, s=tuple(r * r for r in roots), alpha=alpha, s_roots=roots)
        if pt.q == pt.t:
            continue
        try:
            if not genericity_failures(pt, D):
                return pt
        except NonGenericPoint:
            continue
    raise ExhaustedRetries(f"no generic point for n={n}, D={D}, seed={seed} in {retries} draws")


def sample_rational(seed, *, height: int = 64, tag: str = "scalar", below_one: bool = False):
    """One deterministic small-height rational, independent of point sampling."""
    rng = random.Random(f"qcommute-{tag}:{seed}")
    return _rand_rational(rng, height, below_one=below_one)


__all__ = [
    "ParamPoint",
    "qpoch",
    "qpoch_multi",
    "qpoch_ratio",
    "mu",
    "index_bound",
    "genericity_failures",
    "is_generic",
    "sample_generic_point",
    "sample_rational",
    "ZERO",
    "ONE",
]
