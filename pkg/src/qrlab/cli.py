"""Command-line entry point: ``qrlab verify | table | inspect``.

Exit codes: 0 everything passed, 1 an identity failed, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import load_defaults
from .errors import QrlabError
from .verify import (
    CHECKS,
    TABLE_NAMES,
    ScanConfig,
    UsageError,
    format_reports,
    format_table,
    generate_table,
    inspect_prime,
    parse_checks,
    run_scan,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="qrlab", description="Verify identities for products and sums of quadratic residues.")
    ap.add_argument("--config", help="key=value file with precision/jobs/outdir defaults")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run named checks over a range of primes")
    v.add_argument("--check", required=True, help="comma-separated: " + ",".join(CHECKS))
    v.add_argument("--min", dest="min_p", type=int, default=3)
    v.add_argument("--max", dest="max_p", type=int, required=True)
    v.add_argument("--jobs", type=int)
    v.add_argument("--precision", type=int)
    v.add_argument("--format", choices=("csv", "json"), default="json")
    v.add_argument("--out")
    v.add_argument("--all-r", action="store_true", help="sweep every r in the Stickelberger check")
    v.add_argument("--timing", action="store_true", help="record per-check wall time (breaks byte-stability)")

    t = sub.add_parser("table", help="print one of the residue tables")
    t.add_argument("--name", required=True, choices=TABLE_NAMES)
    t.add_argument("--max", dest="max_p", type=int, required=True)
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.add_argument("--out")

    i = sub.add_parser("inspect", help="print the full record for one prime")
    i.add_argument("-p", type=int, required=True)
    i.add_argument("--precision", type=int)
    return ap


def _emit(text: str, out: str | None, outdir: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    if outdir and not path.is_absolute():
        path = Path(outdir) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        defaults = load_defaults(args.config)
        if args.command == "verify":
            cfg = ScanConfig(
                checks=parse_checks(args.check),
                min_p=args.min_p,
                max_p=args.max_p,
                jobs=args.jobs or defaults.jobs,
                precision=args.precision or defaults.precision,
                fmt=args.format,
                out=args.out,
                all_r=args.all_r,
                timing=args.timing,
            )
            reports, code = run_scan(cfg)
            _emit(format_reports(reports, cfg.fmt), cfg.out, defaults.outdir)
            if code:
                failed = sum(1 for r in reports for c in r.checks if not c.passed)
                print(f"qrlab: {failed} check(s) failed", file=sys.stderr)
            return code
        if args.command == "table":
            rows = generate_table(args.name, args.max_p)
            _emit(format_table(rows, args.format), args.out, defaults.outdir)
            return 0
        rec = inspect_prime(args.p, args.precision or defaults.precision)
        print(json.dumps(rec, indent=2))
        return 0 if all(c["pass"] for c in rec["checks"]) else 1
    except UsageError as err:
        print(f"qrlab: {err}", file=sys.stderr)
        return 2
    except QrlabError as err:
        print(f"qrlab: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
