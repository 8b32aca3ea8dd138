"""Command-line front end.

Exit codes: 0 success, 1 a theorem-kind check failed, 2 usage or config
error, 3 non-generic parameters.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from ._scalar import to_str
from .eigen import eigenfunction
from .errors import EigenvalueCollision, ExhaustedRetries, NonGenericPoint
from .qkernel import ParamPoint, genericity_failures, sample_generic_point
from .series import Truncation
from .verify.suite import (
    APPROX_CHECKS,
    CHECKS,
    ConfigError,
    SuiteConfig,
    SuiteEntry,
    default_config,
    derived_seed,
    exit_status,
    run_suite,
    summary_table,
    write_jsonl,
    write_text,
)
from .xform import operator_matrix

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NONGENERIC = 0, 1, 2, 3
RETRIES = 5


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("QCOMMUTE_SEED")
    if raw is None:
        return 1
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"QCOMMUTE_SEED must be an integer, got {raw!r}") from None


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _truncation(args, n: int) -> Truncation:
    if args.box is not None:
        if len(args.box) != n - 1:
            raise UsageError(f"--box needs {n - 1} bounds for n={n}")
        if any(b < 0 for b in args.box):
            raise UsageError("--box bounds must be nonnegative")
        return Truncation.box(args.box)
    deg = args.deg if args.deg is not None else 4
    if deg < 0:
        raise UsageError("--deg must be nonnegative")
    return Truncation.total(deg)


def _degree(trunc: Truncation) -> int:
    return max(1, trunc.bound if trunc.mode == "total" else sum(trunc.bound))


def _load_point(path: str) -> ParamPoint:
    try:
        with open(path) as fh:
            return ParamPoint.from_json(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read params file: {exc}") from exc
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=1) + "\n"
    if out:
        write_text(out, text)
    else:
        sys.stdout.write(text)


def _points(args, n: int, D: int):
    """Candidate points: the params file once, or the seed then derived seeds."""
    if args.params:
        pt = _load_point(args.params)
        if pt.n != n:
            raise UsageError(f"params file has n={pt.n}, but --n is {n}")
        yield None, pt
        return
    seed = args.seed if args.seed is not None else _default_seed()
    for attempt in range(RETRIES):
        s = derived_seed(seed, attempt)
        try:
            yield s, sample_generic_point(n, D, s)
        except ExhaustedRetries:
            continue


def cmd_matrix(args) -> int:
    n = args.n
    trunc = _truncation(args, n)
    D = _degree(trunc)
    for seed, pt in _points(args, n, D):
        bad = genericity_failures(pt, D)
        if bad:
            if seed is None:
                print(f"non-generic point: {'; '.join(bad)}", file=sys.stderr)
                return EXIT_NONGENERIC
            continue
        M = operator_matrix(pt, trunc)
        payload = M.to_dict()
        payload["seed"] = seed
        _emit(payload, args.out)
        return EXIT_OK
    print("non-generic point after retry budget", file=sys.stderr)
    return EXIT_NONGENERIC


def cmd_eigen(args) -> int:
    n = args.n
    j = args.index
    if len(j) != n - 1:
        raise UsageError(f"--index needs {n - 1} entries for n={n}")
    if any(x < 0 for x in j):
        raise UsageError("--index entries must be nonnegative")
    trunc = _truncation(args, n)
    if not trunc.admits(j):
        raise UsageError(f"index {list(j)} lies outside {trunc}")
    D = _degree(trunc)
    for seed, pt in _points(args, n, D):
        try:
            res = eigenfunction(j, pt, trunc)
        except (EigenvalueCollision, NonGenericPoint) as exc:
            if seed is None:
                print(f"non-generic point: {exc}", file=sys.stderr)
                return EXIT_NONGENERIC
            continue
        payload = res.to_dict()
        payload["point"] = pt.to_dict()
        payload["seed"] = seed
        _emit(payload, args.out)
        return EXIT_OK
    print("eigenvalue collision persisted after retry budget", file=sys.stderr)
    return EXIT_NONGENERIC


def _verify_config(args) -> SuiteConfig:
    selected = sum(bool(x) for x in (args.check, args.all, args.config))
    if selected != 1:
        raise UsageError("choose exactly one of --check NAME, --all, --config FILE")
    if args.config:
        cfg = SuiteConfig.load(args.config)
        if args.approx is not None:
            cfg.approx = args.approx
        if args.tol is not None:
            cfg.tol = args.tol
        return cfg
    base = args.seed if args.seed is not None else _default_seed()
    seeds = tuple(range(base, base + args.seeds)) if args.seeds else None
    if args.seeds is not None and args.seeds < 1:
        raise UsageError("--seeds must be at least 1")
    approx = bool(args.approx)
    tol = args.tol if args.tol is not None else 1e-25
    if args.all:
        cfg = default_config(approx=approx, tol=tol)
        if seeds:
            for e in cfg.entries:
                e.seeds = seeds
        return cfg
    if args.check not in CHECKS:
        raise UsageError(f"unknown check {args.check!r}; known: {', '.join(sorted(CHECKS))}")
    if args.check in APPROX_CHECKS and not approx:
        raise UsageError(f"{args.check} is approximate; pass --approx to run it")
    entry = SuiteEntry(args.check, n=args.n, deg=args.deg, box=args.box)
    if seeds:
        entry.seeds = seeds
    cfg = SuiteConfig(entries=[entry], approx=approx, tol=tol)
    cfg.validate()
    return cfg


def cmd_verify(args) -> int:
    cfg = _verify_config(args)
    reports = run_suite(cfg)
    if args.out:
        write_jsonl(reports, args.out, timings=args.timings)
    print(summary_table(reports, timings=args.timings))
    return exit_status(reports)


def cmd_point(args) -> int:
    if args.action == "sample":
        seed = args.seed if args.seed is not None else _default_seed()
        pt = sample_generic_point(args.n, args.deg, seed)
        _emit({"point": pt.to_dict(), "seed": seed, "deg": args.deg}, args.out)
        return EXIT_OK
    if not args.file:
        raise UsageError("point inspect needs a params file")
    pt = _load_point(args.file)
    bad = genericity_failures(pt, args.deg)
    info = {
        "point": pt.to_dict(),
        "n": pt.n,
        "q": to_str(pt.q),
        "t": to_str(pt.t),
        "deg": args.deg,
        "generic": not bad,
        "failures": bad,
    }
    _emit(info, args.out)
    return EXIT_OK if not bad else EXIT_NONGENERIC


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qcommute", description="Exact series action of the integral operators and its checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def trunc_args(sp, default_deg=None):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--deg", type=int, default=default_deg, help="total-degree truncation")
        g.add_argument("--box", type=_int_list, help="box truncation, e.g. 2,2,2")

    def point_args(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--seed", type=int, help="sampling seed (default $QCOMMUTE_SEED or 1)")
        g.add_argument("--params", help="JSON file with a parameter point")

    m = sub.add_parser("matrix", help="operator matrix on a truncated basis")
    m.add_argument("--n", type=int, required=True)
    trunc_args(m)
    point_args(m)
    m.add_argument("--out")
    m.set_defaults(func=cmd_matrix)

    e = sub.add_parser("eigen", help="eigenfunction with a given index")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--index", type=_int_list, required=True, help="e.g. 1,0")
    trunc_args(e)
    point_args(e)
    e.add_argument("--out")
    e.set_defaults(func=cmd_eigen)

    v = sub.add_parser("verify", help="run checks and write reports")
    v.add_argument("--check", help=f"one of: {', '.join(sorted(CHECKS))}")
    v.add_argument("--all", action="store_true", help="every default check")
    v.add_argument("--config", help="JSON suite config")
    v.add_argument("--n", type=int)
    trunc_args(v)
    v.add_argument("--seeds", type=int, help="number of seeds")
    v.add_argument("--seed", type=int, help="first seed")
    v.add_argument("--approx", dest="approx", action="store_true", default=None)
    v.add_argument("--no-approx", dest="approx", action="store_false")
    v.add_argument("--tol", type=float)
    v.add_argument("--out", help="JSON-lines report file")
    v.add_argument("--timings", action="store_true", help="include elapsed times (output no longer reproducible)")
    v.set_defaults(func=cmd_verify)

    pt = sub.add_parser("point", help="sample or inspect parameter points")
    pt.add_argument("action", choices=("sample", "inspect"))
    pt.add_argument("file", nargs="?")
    pt.add_argument("--n", type=int, default=2)
    pt.add_argument("--deg", type=int, default=4)
    pt.add_argument("--seed", type=int)
    pt.add_argument("--out")
    pt.set_defaults(func=cmd_point)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if getattr(args, "n", None) is not None and args.n < 2:
        print("qcommute: error: --n must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"qcommute: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonGenericPoint as exc:
        print(f"qcommute: non-generic parameters: {exc}", file=sys.stderr)
        return EXIT_NONGENERIC


if __name__ == "__main__":
    sys.exit(main())
