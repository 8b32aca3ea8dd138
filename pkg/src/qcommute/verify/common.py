from __future__ import annotations

import time
from contextlib import contextmanager

from ..report import FAIL, Discrepancy, VerificationReport, success_status


class Outcome:
    """Accumulates sub-check results; the first failure becomes the discrepancy."""

    def __init__(self, check_name: str, kind: str, *, point=None, trunc=None, seed=None):
        self.check_name = check_name
        self.kind = kind
        self.point = point
        self.trunc = trunc
        self.seed = seed
        self.details: dict = {}
        self.first: Discrepancy | None = None
        self._start = time.perf_counter()

    def compare(self, label: str, diff) -> bool:
        """Record a sub-check from a (location..., lhs, rhs) tuple or None."""
        ok = diff is None
        self.details.setdefault("subchecks", {})[label] = "ok" if ok else "mismatch"
        if not ok and self.first is None:
            *loc, lhs, rhs = diff
            where = ",".join(str(list(x)) if isinstance(x, tuple) else str(x) for x in loc)
            self.first = Discrepancy(f"{label}[{where}]", lhs, rhs)
        return ok

    def fail(self, label: str, lhs, rhs) -> None:
        self.details.setdefault("subchecks", {})[label] = "mismatch"
        if self.first is None:
            self.first = Discrepancy(label, lhs, rhs)

    def report(self) -> VerificationReport:
        status = FAIL if self.first is not None else success_status(self.kind)
        return VerificationReport(
            check_name=self.check_name,
            status=status,
            kind=self.kind,
            point=self.point,
            trunc=self.trunc,
            first_discrepancy=self.first,
            elapsed=time.perf_counter() - self._start,
            seed=self.seed,
            details=self.details,
        )


def list_difference(a, b):
    for k, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return k, x, y
    if len(a) != len(b):
        return min(len(a), len(b)), None, None
    return None
