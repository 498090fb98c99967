"""Optional ``key=value`` config file: default precision, jobs and output directory.

Looked up from ``--config PATH`` or the ``QRLAB_CONFIG`` environment
variable.  Command-line flags always win.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .analytic import DEFAULT_PREC
from .verify import UsageError

_KEYS = {"precision", "jobs", "outdir"}


@dataclass(frozen=True)
class Defaults:
    precision: int = DEFAULT_PREC
    jobs: int = 1
    outdir: str | None = None


def parse_config(text: str) -> Defaults:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected key=value, got {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        if key not in _KEYS:
            raise UsageError(f"config line {lineno}: unknown key {key!r}")
        values[key] = val
    try:
        return Defaults(
            precision=int(values.get("precision", DEFAULT_PREC)),
            jobs=int(values.get("jobs", 1)),
            outdir=values.get("outdir") or None,
        )
    except ValueError as err:
        raise UsageError(f"bad config value: {err}") from None


def load_defaults(path: str | None = None) -> Defaults:
    path = path or os.environ.get("QRLAB_CONFIG")
    if not path:
        return Defaults()
    try:
        return parse_config(Path(path).read_text())
    except OSError as err:
        raise UsageError(f"cannot read config {path}: {err}") from None
