"""Command-line frontend: ``cyclo check ...`` and ``cyclo scan ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .criteria import CHECKS, SKIPPED, CheckReport, Workspace, check_ab, run_check
from .errors import CycloError
from .modarith import is_prime

EXIT_OK, EXIT_ERROR, EXIT_SKIPPED, EXIT_USAGE = 0, 1, 2, 64

FIELDS = ("check", "p", "N", "nu", "g", "verdict", "lhs", "rhs", "aux")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class ScanConfig:
    p: int
    n_lo: int
    n_hi: int
    checks: tuple
    jobs: int = 1
    format: str = "json"
    norm_bound: int = 10
    chi: int | None = None
    i: int | None = None
    timing: bool = False

    def __post_init__(self):
        if self.n_lo > self.n_hi:
            raise UsageError("empty range")
        if not self.checks:
            raise UsageError("no checks selected")
        unknown = set(self.checks) - set(CHECKS)
        if unknown:
            raise UsageError(f"unknown checks: {', '.join(sorted(unknown))}")


def parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}")


def parse_checks(text: str, p: int) -> tuple:
    if text == "all":
        return tuple(c for c in CHECKS if c != "ab" and (c != "p5" or p == 5))
    return tuple(c.strip() for c in text.split(",") if c.strip())


# -- serialisation ---------------------------------------------------------

def error_record(check: str, p: int, N, exc: Exception) -> dict:
    return {"check": check, "p": p, "N": N, "nu": None, "g": None, "verdict": "error",
            "lhs": None, "rhs": None,
            "aux": {"error": type(exc).__name__, "message": str(exc)}}


def to_json_line(rec: dict) -> str:
    return json.dumps(rec, separators=(",", ":"))


def csv_header() -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow(FIELDS + (("ms",)))
    return buf.getvalue()


def to_csv_line(rec: dict) -> str:
    row = []
    for f in FIELDS:
        v = rec.get(f)
        if f == "aux":
            v = json.dumps(v, separators=(",", ":"))
        row.append("" if v is None else v)
    row.append(rec.get("ms", ""))
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow(row)
    return buf.getvalue()


def from_csv_row(row: dict) -> dict:
    """Inverse of to_csv_line on a csv.DictReader row."""
    rec = {}
    for f in FIELDS:
        v = row[f]
        if f == "aux":
            rec[f] = json.loads(v)
        elif f in ("check", "verdict"):
            rec[f] = v
        else:
            rec[f] = None if v == "" else int(v)
    if row.get("ms"):
        rec["ms"] = float(row["ms"])
    return rec


def render(rec: dict, fmt: str) -> str:
    return to_json_line(rec) + "\n" if fmt == "json" else to_csv_line(rec)


# -- scanning --------------------------------------------------------------

def candidate_primes(p: int, lo: int, hi: int) -> list[int]:
    start = max(lo, 5)
    first = start + ((1 - start) % p)
    return [N for N in range(first, hi + 1, p) if N % 2 and is_prime(N)]


def scan_one(job) -> list[dict]:
    """All requested reports for one N; never raises."""
    cfg, N = job
    out = []
    try:
        ws = Workspace.build(cfg.p, N, cfg.norm_bound)
    except CycloError as exc:
        return [error_record(c, cfg.p, N, exc) for c in cfg.checks]
    for name in cfg.checks:
        t0 = time.perf_counter()
        if name == "ab":
            rec = CheckReport("ab", cfg.p, N, ws.ctx.nu, ws.ctx.g, SKIPPED,
                              aux={"reason": "ab takes --a/--b, not a range"}).as_dict()
        else:
            try:
                rec = run_check(ws, name, chi=cfg.chi, i=cfg.i).as_dict()
            except CycloError as exc:
                rec = error_record(name, cfg.p, N, exc)
        if cfg.timing:
            rec["ms"] = round((time.perf_counter() - t0) * 1000, 3)
        out.append(rec)
    return out


def scan(cfg: ScanConfig):
    """Yield report dicts in ascending N, whatever the worker count."""
    jobs = [(cfg, N) for N in candidate_primes(cfg.p, cfg.n_lo, cfg.n_hi)]
    if cfg.jobs <= 1:
        for job in jobs:
            yield from scan_one(job)
        return
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        for recs in pool.map(scan_one, jobs, chunksize=max(1, len(jobs) // (8 * cfg.jobs))):
            yield from recs


# -- entry points -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cyclo", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    chk = sub.add_parser("check", help="run one check at one (p, N) or (p, a, b)")
    chk.add_argument("name", choices=CHECKS)
    chk.add_argument("--p", type=int, required=True)
    chk.add_argument("--n", type=int)
    chk.add_argument("--a", type=int)
    chk.add_argument("--b", type=int)
    chk.add_argument("--g", type=int, help="primitive root to use instead of the smallest")
    chk.add_argument("--chi", type=int, help="exponent I of chi = omega^I (default -1)")
    chk.add_argument("--i", type=int, help="index for si / powerlog (default 1)")
    chk.add_argument("--norm-bound", type=int, default=10)
    chk.add_argument("--format", choices=("json", "csv"), default="json")

    sc = sub.add_parser("scan", help="run checks over all primes N = 1 mod p in a range")
    sc.add_argument("--p", type=int, required=True)
    sc.add_argument("--range", type=parse_range, required=True, metavar="LO..HI")
    sc.add_argument("--checks", default="ce", metavar="LIST|all")
    sc.add_argument("--chi", type=int)
    sc.add_argument("--i", type=int)
    sc.add_argument("--norm-bound", type=int, default=10)
    sc.add_argument("--jobs", type=int, default=int(os.environ.get("CYCLO_JOBS", "1")))
    sc.add_argument("--format", choices=("json", "csv"), default="json")
    sc.add_argument("--timing", action="store_true", help="add per-report ms (breaks byte-determinism)")
    return parser


def cmd_check(args, out) -> int:
    try:
        if args.name == "ab":
            if args.a is None or args.b is None:
                raise UsageError("check ab needs --a and --b")
            rep = check_ab(args.p, args.a, args.b)
        else:
            if args.n is None:
                raise UsageError(f"check {args.name} needs --n")
            ws = Workspace.build(args.p, args.n, args.norm_bound, args.g)
            rep = run_check(ws, args.name, chi=args.chi, i=args.i)
    except CycloError as exc:
        rec = error_record(args.name, args.p, args.n, exc)
        if args.format == "csv":
            out.write(csv_header())
        out.write(render(rec, args.format))
        print(f"cyclo: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.format == "csv":
        out.write(csv_header())
    out.write(render(rep.as_dict(), args.format))
    return EXIT_SKIPPED if rep.verdict == SKIPPED else EXIT_OK


def cmd_scan(args, out) -> int:
    cfg = ScanConfig(p=args.p, n_lo=args.range[0], n_hi=args.range[1],
                     checks=parse_checks(args.checks, args.p), jobs=args.jobs,
                     format=args.format, norm_bound=args.norm_bound, chi=args.chi,
                     i=args.i, timing=args.timing)
    if cfg.format == "csv":
        out.write(csv_header())
    verdicts = []
    for rec in scan(cfg):
        out.write(render(rec, cfg.format))
        out.flush()
        verdicts.append(rec["verdict"])
    if "error" in verdicts:
        return EXIT_ERROR
    if verdicts and all(v == SKIPPED for v in verdicts):
        return EXIT_SKIPPED
    return EXIT_OK


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "check":
            return cmd_check(args, out)
        return cmd_scan(args, out)
    except UsageError as exc:
        print(f"cyclo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # downstream closed early (e.g. `| head`); silence the flush at exit
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
