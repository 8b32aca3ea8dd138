"""High-precision check of the bilateral (1psi1) expansion behind the kernel.

Both sides are Laurent series in w on the annulus |u/v| < |w| < |v/u|:

    g(1/w) Theta(alpha (u/v) w) / Theta((u/v) w)
        = (alpha q/t, q/alpha)_inf / (q/t, q)_inf * sum_m (alpha)_m / (alpha q/t)_m ((u/v) w)^m

with g(z) = (u v z)_inf / ((u/v) z)_inf and Theta(z) = (z, q/z, q)_inf.  The left
side is sampled on |w| = 1 and its Laurent coefficients extracted by a discrete
Fourier sum; infinite products are cut after K factors.
"""

from __future__ import annotations

import random

import mpmath

from .._scalar import Q, to_str
from ..errors import ToleranceNotMet
from ..qkernel import ParamPoint, _rand_rational
from ..report import APPROXIMATE
from .common import Outcome

DPS = 60


def to_mpf(x):
    x = Q(x)
    return mpmath.mpf(int(x.numerator)) / int(x.denominator)


def _prod(x, q, K, powers=None):
    powers = powers or [q ** k for k in range(K)]
    out = mpmath.mpf(1)
    for qk in powers[:K]:
        out *= 1 - x * qk
    return out


def _poch(a, q, m):
    """(a;q)_m for any integer m, in mpmath."""
    if m >= 0:
        return _prod(a, q, m)
    out = mpmath.mpf(1)
    for k in range(1, -m + 1):
        out /= 1 - a / q ** k
    return out


def ramanujan_point(seed, *, n: int = 2) -> ParamPoint:
    """u in [2/5, 1/2], 1 <= |v| <= 3/2, alpha in [1/3, 3]; so |q| <= 1/4 and |u/v| <= 1/2."""
    rng = random.Random(f"qcommute-psi:{seed}")
    u = Q(2, 5) + Q(rng.randint(0, 100), 1000)
    v = (Q(1) + Q(rng.randint(0, 500), 1000)) * rng.choice((1, -1))
    alpha = Q(1, 3) + Q(rng.randint(1, 2666), 1000)
    alpha = alpha if alpha != 1 else Q(7, 5)
    s = tuple(_rand_rational(rng, 16) ** 2 for _ in range(n))
    return ParamPoint(u=u, v=v, s=s, alpha=alpha)


def lhs_coefficients(pt: ParamPoint, W: int, K: int, N: int) -> list:
    """Laurent coefficients m = -W..W of the left side, products cut at K factors."""
    u, v, a = to_mpf(pt.u), to_mpf(pt.v), to_mpf(pt.alpha)
    q = u * u
    r = u / v

    powers = [q ** k for k in range(K)]

    def theta_ratio(w):
        # the (q;q)_inf factors cancel
        num = _prod(a * r * w, q, K, powers) * _prod(q / (a * r * w), q, K, powers)
        return num / (_prod(r * w, q, K, powers) * _prod(q / (r * w), q, K, powers))

    roots = [mpmath.expjpi(mpmath.mpf(2 * j) / N) for j in range(N)]
    values = []
    for w in roots:
        g = _prod(u * v / w, q, K, powers) / _prod(r / w, q, K, powers)
        values.append(g * theta_ratio(w))
    out = []
    for m in range(-W, W + 1):
        acc = mpmath.mpc(0)
        for j, val in enumerate(values):
            acc += val * roots[(-j * m) % N]
        out.append(acc / N)
    return out, max(abs(x) for x in values)


def rhs_coefficient(pt: ParamPoint, m: int, K: int):
    u, v, a = to_mpf(pt.u), to_mpf(pt.v), to_mpf(pt.alpha)
    q, t = u * u, v * v
    pref = _prod(a * q / t, q, K) * _prod(q / a, q, K) / (_prod(q / t, q, K) * _prod(q, q, K))
    return pref * _poch(a, q, m) / _poch(a * q / t, q, m) * (u / v) ** m


def tail_bound(pt: ParamPoint, K: int, lhs_max, rhs_max) -> object:
    """Bound on the coefficient error from cutting every infinite product after K factors.

    A product prod_{k>=K} (1 - x q^k)^{+-1} differs from 1 by at most
    exp(2 |x| |q|^K / (1 - |q|)) - 1 once |x q^K| <= 1/2.  Relative errors of the
    factors add up in the exponent; a function error on |w|=1 bounds every Fourier
    coefficient error.
    """
    u, v, a = (abs(to_mpf(x)) for x in (pt.u, pt.v, pt.alpha))
    q, t = u * u, v * v
    r = u / v
    lhs_args = [u * v, r, a * r, q / (a * r), r, q / r]
    rhs_args = [a * q / t, q / a, q / t, q]

    def rho(args):
        return mpmath.exp(2 * sum(args) * q ** K / (1 - q)) - 1

    return rho(lhs_args) * lhs_max + rho(rhs_args) * rhs_max


def aliasing_bound(pt: ParamPoint, W: int, N: int, K: int):
    """sum over l != 0 of |c_{m + l N}|, using the closed-form coefficients and a geometric tail."""
    r = abs(to_mpf(pt.u) / to_mpf(pt.v))
    worst = mpmath.mpf(0)
    for m in range(-W, W + 1):
        acc = mpmath.mpf(0)
        for l in (-2, -1, 1, 2):
            acc += abs(rhs_coefficient(pt, m + l * N, K))
        acc += abs(rhs_coefficient(pt, m + 2 * N, K)) * r ** N / (1 - r ** N) * 2
        worst = max(worst, acc)
    return worst


def grid_size(pt: ParamPoint, W: int) -> int:
    r = abs(to_mpf(pt.u) / to_mpf(pt.v))
    N = 4 * W
    while r ** (N - W) > mpmath.mpf(10) ** (-40):
        N += 8
    return N


def check_ramanujan(pt: ParamPoint, *, W: int = 6, K: int = 50, tol=1e-25, seed=None, strict: bool = False):
    """Approximate comparison of both sides' Laurent coefficients for |m| <= W."""
    out = Outcome("ramanujan", APPROXIMATE, point=pt, trunc={"W": W, "K": K}, seed=seed)
    with mpmath.workdps(DPS):
        q = abs(to_mpf(pt.q))
        r = abs(to_mpf(pt.u) / to_mpf(pt.v))
        if not (q <= mpmath.mpf(1) / 3 and r < 1):
            raise ValueError("need |q| <= 1/3 and |u/v| < 1")
        tol_m = mpmath.mpf(tol)
        N = grid_size(pt, W)
        lhs, lhs_max = lhs_coefficients(pt, W, K, N)
        rhs = [rhs_coefficient(pt, m, K) for m in range(-W, W + 1)]
        diffs = [abs(x - y) for x, y in zip(lhs, rhs)]
        worst = max(diffs)
        worst_m = diffs.index(worst) - W
        tail = tail_bound(pt, K, lhs_max, max(abs(x) for x in rhs))
        alias = aliasing_bound(pt, W, N, K)
        bound = tail + alias

        out.trunc["N"] = N
        out.details.update(
            {
                "tol": mpmath.nstr(tol_m, 3),
                "max_residual": mpmath.nstr(worst, 5),
                "tail_bound": mpmath.nstr(tail, 5),
                "aliasing_bound": mpmath.nstr(alias, 5),
                "dps": DPS,
                "alpha": to_str(pt.alpha),
            }
        )
        if worst >= tol_m:
            out.fail(f"coefficient m={worst_m}", mpmath.nstr(lhs[worst_m + W], 30), mpmath.nstr(rhs[worst_m + W], 30))
        elif bound >= tol_m:
            out.fail("tolerance below error bound", mpmath.nstr(tol_m, 5), mpmath.nstr(bound, 5))
        report = out.report()
    if strict and not report.passed:
        raise ToleranceNotMet(report.first_discrepancy.location)
    return report
