"""Run configured checks over seeds and collect reports."""

from __future__ import annotations

import json
import os
import random
import tempfile
from dataclasses import dataclass, field

from .._scalar import Q
from ..errors import ExhaustedRetries, NonGenericPoint
from ..qkernel import ParamPoint, genericity_failures, sample_generic_point, sample_rational
from ..report import FAIL, THEOREM, VerificationReport
from ..series import Truncation
from .approx import check_ramanujan, ramanujan_point
from .conjectures import check_n3_conjecture, check_n4_extended, check_n4_partial, check_quasi_eigen
from .exact import (
    check_alpha_independence,
    check_commutator,
    check_lemma1,
    check_lemma3,
    check_n2_eigenfunctions,
    check_shift,
    check_theorem2,
    lemma_params,
)

RESAMPLE_LIMIT = 5
DEFAULT_SEEDS = (1, 2, 3)


class ConfigError(ValueError):
    pass


@dataclass
class SuiteEntry:
    check: str
    n: int | None = None
    deg: int | None = None
    box: tuple | None = None
    seeds: tuple = DEFAULT_SEEDS
    params: dict = field(default_factory=dict)

    def trunc(self) -> Truncation | None:
        if self.box is not None:
            return Truncation.box(self.box)
        if self.deg is not None:
            return Truncation.total(self.deg)
        return None

    def to_dict(self) -> dict:
        d = {"check": self.check, "seeds": list(self.seeds)}
        for key in ("n", "deg"):
            if getattr(self, key) is not None:
                d[key] = getattr(self, key)
        if self.box is not None:
            d["box"] = list(self.box)
        if self.params:
            d["params"] = self.params
        return d


@dataclass
class SuiteConfig:
    entries: list = field(default_factory=list)
    approx: bool = False
    tol: float = 1e-25

    @classmethod
    def from_dict(cls, d: dict) -> "SuiteConfig":
        if not isinstance(d, dict):
            raise ConfigError("config must be a JSON object")
        default_seeds = d.get("seeds", list(DEFAULT_SEEDS))
        entries = []
        for raw in d.get("checks", []):
            if isinstance(raw, str):
                raw = {"check": raw}
            if not isinstance(raw, dict) or "check" not in raw:
                raise ConfigError(f"bad check entry: {raw!r}")
            unknown = set(raw) - {"check", "n", "deg", "box", "seeds", "params"}
            if unknown:
                raise ConfigError(f"unknown keys in check entry: {sorted(unknown)}")
            entry = SuiteEntry(
                check=raw["check"],
                n=raw.get("n"),
                deg=raw.get("deg"),
                box=tuple(raw["box"]) if raw.get("box") is not None else None,
                seeds=tuple(raw.get("seeds", default_seeds)),
                params=dict(raw.get("params", {})),
            )
            entries.append(entry)
        cfg = cls(entries=entries, approx=bool(d.get("approx", False)), tol=float(d.get("tol", 1e-25)))
        cfg.validate()
        return cfg

    @classmethod
    def load(cls, path: str) -> "SuiteConfig":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_dict(data)

    def validate(self) -> None:
        for e in self.entries:
            if e.check not in CHECKS:
                raise ConfigError(f"unknown check {e.check!r}; known: {', '.join(sorted(CHECKS))}")
            if not e.seeds:
                raise ConfigError(f"{e.check}: at least one seed is required")
            if not all(isinstance(s, int) for s in e.seeds):
                raise ConfigError(f"{e.check}: seeds must be integers")
            if e.deg is not None and (not isinstance(e.deg, int) or e.deg < 1):
                raise ConfigError(f"{e.check}: deg must be a positive integer")
            if e.box is not None and (not all(isinstance(b, int) and b >= 1 for b in e.box)):
                raise ConfigError(f"{e.check}: box bounds must be positive integers")
            if e.n is not None and (not isinstance(e.n, int) or e.n < 2):
                raise ConfigError(f"{e.check}: n must be an integer >= 2")

    def to_dict(self) -> dict:
        return {"checks": [e.to_dict() for e in self.entries], "approx": self.approx, "tol": self.tol}


def derived_seed(seed: int, attempt: int) -> int:
    return seed if attempt == 0 else seed * 1000 + attempt


def _point(entry: SuiteEntry, seed: int, n: int, D: int) -> ParamPoint:
    """The entry's fixed point if it carries one, else a sampled generic point."""
    if "point" in entry.params:
        return ParamPoint.from_dict(entry.params["point"])
    return sample_generic_point(n, D, seed)


def _second_alpha(pt: ParamPoint, D: int, seed: int, tag: str):
    """A spectral parameter != alpha at which the point stays generic."""
    for k in range(50):
        beta = sample_rational(f"{seed}:{k}", tag=tag)
        if beta != pt.alpha and not genericity_failures(pt.with_alpha(beta), D):
            return beta
    raise NonGenericPoint(f"no generic second alpha for seed {seed}")


# each runner returns a list of reports for one (entry, seed)


def _run_commutator(entry, seed, cfg):
    n = entry.n or 2
    trunc = entry.trunc() or Truncation.total({2: 8, 3: 5}.get(n, 3))
    D = trunc.bound if trunc.mode == "total" else sum(trunc.bound)
    pt = _point(entry, seed, n, D)
    pairs = int(entry.params.get("pairs", 3 if n == 2 else 1))
    reports = []
    for p in range(pairs):
        a = pt.alpha if p == 0 else _second_alpha(pt, D, seed, f"alpha{p}")
        base = pt.with_alpha(a)
        beta = _second_alpha(base, D, seed, f"beta{p}")
        r = check_commutator(n, base, beta, trunc, seed=seed)
        r.details["pair"] = p
        reports.append(r)
    return reports


def _run_theorem2(entry, seed, cfg):
    size = int(entry.params.get("size", 12))
    pt = _point(entry, seed, 2, size - 1)
    return [check_theorem2(pt, size, seed=seed)]


def _run_n2_eigen(entry, seed, cfg):
    D = entry.deg or 8
    pt = _point(entry, seed, 2, D)
    indices = entry.params.get("indices", list(range(7)))
    return [check_n2_eigenfunctions(pt, D, [i for i in indices if i <= D], seed=seed)]


def _run_lemma1(entry, seed, cfg):
    return [check_lemma1(lemma_params(seed), int(entry.params.get("order", 12)), seed=seed)]


def _run_lemma3(entry, seed, cfg):
    return [check_lemma3(lemma_params(seed), int(entry.params.get("order", 12)), seed=seed)]


def _run_n3_conjecture(entry, seed, cfg):
    trunc = entry.trunc() or Truncation.total(6)
    pt = _point(entry, seed, 3, trunc.bound if trunc.mode == "total" else sum(trunc.bound))
    return [check_n3_conjecture(pt, trunc, seed=seed)]


def _run_alpha_independence(entry, seed, cfg):
    n = entry.n or 3
    trunc = entry.trunc() or Truncation.total(6)
    D = trunc.bound if trunc.mode == "total" else sum(trunc.bound)
    pt = _point(entry, seed, n, D)
    default = [(0, 0), (1, 0), (0, 1), (1, 1)] if n == 3 else [(0,) * (n - 1)]
    indices = [tuple(j) for j in entry.params.get("indices", default)]
    alpha2 = _second_alpha(pt, D, seed, "alpha2")
    return [check_alpha_independence(pt, alpha2, indices, trunc, seed=seed)]


def _run_n4_partial(entry, seed, cfg):
    trunc = entry.trunc() or Truncation.box((2, 2, 2))
    pt = _point(entry, seed, 4, sum(trunc.bound) if trunc.mode == "box" else trunc.bound)
    return [check_n4_partial(pt, trunc=trunc, seed=seed)]


def _run_n4_extended(entry, seed, cfg):
    boxes = [tuple(b) for b in entry.params.get("boxes", [(4, 2, 4), (2, 4, 2)])]
    pt = _point(entry, seed, 4, max(sum(b) for b in boxes))
    return [check_n4_extended(pt, boxes, seed=seed)]


def _run_shift(entry, seed, cfg):
    n = entry.n or 2
    trunc = entry.trunc() or Truncation.total(5)
    D = trunc.bound if trunc.mode == "total" else sum(trunc.bound)
    default = [(1,), (2,)] if n == 2 else [(1, 0), (1, 1)] if n == 3 else [(1,) + (0,) * (n - 2)]
    indices = [tuple(j) for j in entry.params.get("indices", default)]
    pt = _point(entry, seed, n, D)
    return [check_shift(pt, j, trunc, seed=seed) for j in indices]


def quasi_params(seed) -> dict:
    """u, v, alpha for the s=1 checks; alpha avoids the special values used there."""
    rng = random.Random(f"qcommute-quasi:{seed}")
    while True:
        u = Q(rng.randint(1, 30), 31) * rng.choice((1, -1))
        v = Q(rng.randint(2, 40), rng.randint(2, 40)) * rng.choice((1, -1))
        alpha = Q(rng.randint(1, 50), rng.randint(1, 50)) * rng.choice((1, -1))
        q, t = u * u, v * v
        if v * v in (1, q) or alpha in (1, v, -v, t) or alpha * alpha == 1:
            continue
        return {"u": u, "v": v, "alpha": alpha}


def _run_quasi_eigen(entry, seed, cfg):
    n = entry.n or 3
    p = quasi_params(seed)
    deg = entry.deg or 5
    cov = int(entry.params.get("deg_covariance", 4))
    return [check_quasi_eigen(n, p["u"], p["v"], p["alpha"], deg_products=deg, deg_cov=cov, seed=seed)]


def _run_ramanujan(entry, seed, cfg):
    W = int(entry.params.get("window", 6))
    K = int(entry.params.get("terms", 50))
    return [check_ramanujan(ramanujan_point(seed), W=W, K=K, tol=cfg.tol, seed=seed)]


CHECKS = {
    "commutator": _run_commutator,
    "theorem2": _run_theorem2,
    "n2_eigen": _run_n2_eigen,
    "lemma1": _run_lemma1,
    "lemma3": _run_lemma3,
    "n3_conjecture": _run_n3_conjecture,
    "alpha_independence": _run_alpha_independence,
    "n4_partial": _run_n4_partial,
    "n4_extended": _run_n4_extended,
    "shift": _run_shift,
    "quasi_eigen": _run_quasi_eigen,
    "ramanujan": _run_ramanujan,
}
APPROX_CHECKS = {"ramanujan"}


def default_entries(approx: bool = False) -> list:
    two = (1, 2)
    entries = [
        SuiteEntry("commutator", n=2, deg=8),
        SuiteEntry("commutator", n=3, deg=5),
        SuiteEntry("commutator", n=4, box=(1, 1, 1), seeds=two),
        SuiteEntry("theorem2", n=2),
        SuiteEntry("n2_eigen", n=2, deg=8),
        SuiteEntry("lemma1"),
        SuiteEntry("lemma3"),
        SuiteEntry("n3_conjecture", n=3, deg=6),
        SuiteEntry("alpha_independence", n=3, deg=6),
        SuiteEntry("n4_partial", n=4, box=(2, 2, 2), seeds=two),
        SuiteEntry("n4_extended", n=4, seeds=(1,)),
        SuiteEntry("shift", n=2, deg=5, seeds=two),
        SuiteEntry("shift", n=3, deg=5, seeds=two),
        SuiteEntry("quasi_eigen", n=3, deg=5),
        SuiteEntry("quasi_eigen", n=2, deg=5),
    ]
    if approx:
        entries.append(SuiteEntry("ramanujan"))
    return entries


def default_config(approx: bool = False, tol: float = 1e-25) -> SuiteConfig:
    return SuiteConfig(entries=default_entries(approx), approx=approx, tol=tol)


def run_entry(entry: SuiteEntry, seed: int, cfg: SuiteConfig) -> list:
    """Run one entry at one seed, resampling on a non-generic draw."""
    runner = CHECKS[entry.check]
    last = None
    for attempt in range(RESAMPLE_LIMIT):
        s = derived_seed(seed, attempt)
        try:
            reports = runner(entry, s, cfg)
        except (NonGenericPoint, ExhaustedRetries) as exc:
            if "point" in entry.params:
                raise
            last = exc
            continue
        if attempt:
            for r in reports:
                r.details["resampled_from"] = seed
        return reports
    raise NonGenericPoint(f"{entry.check}: seed {seed} stayed non-generic after {RESAMPLE_LIMIT} draws ({last})")


def run_suite(config: SuiteConfig | None = None) -> list:
    cfg = config if config is not None else default_config()
    cfg.validate()
    out = []
    for entry in cfg.entries:
        if entry.check in APPROX_CHECKS and not cfg.approx:
            continue
        for seed in entry.seeds:
            out.extend(run_entry(entry, seed, cfg))
    return out


def exit_status(reports) -> int:
    """1 if any theorem-kind check failed, else 0."""
    return 1 if any(r.status == FAIL and r.kind == THEOREM for r in reports) else 0


def write_jsonl(reports, path: str, *, timings: bool = False) -> None:
    """One report per line."""
    write_text(path, "".join(r.to_json(timings=timings) + "\n" for r in reports))


def write_text(path: str, text: str) -> None:
    """Write to a temp file in the target directory, then rename into place."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def summary_table(reports: list[VerificationReport], *, timings: bool = False) -> str:
    rows = [("check", "seed", "kind", "status", "trunc", "first discrepancy")]
    for r in reports:
        trunc = str(r.trunc) if r.trunc is not None else "-"
        loc = r.first_discrepancy.location if r.first_discrepancy else "-"
        rows.append((r.check_name, str(r.seed), r.kind, r.status, trunc, loc))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    counts = {}
    for r in reports:
        counts[r.status] = counts.get(r.status, 0) + 1
    lines.append("")
    lines.append(", ".join(f"{k}: {v}" for k, v in sorted(counts.items())) or "no checks run")
    if timings:
        lines.append(f"total elapsed: {sum(r.elapsed for r in reports):.2f}s")
    return "\n".join(lines)
