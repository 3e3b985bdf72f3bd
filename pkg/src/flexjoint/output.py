"""Deterministic CSV output and JSON run manifests."""

from __future__ import annotations

import json
import math
import os
from datetime import datetime, timezone

from . import __version__

__all__ = ["format_float", "write_csv", "write_manifest"]


def format_float(x) -> str:
    """9 significant digits, scientific notation; stable across platforms."""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, (int,)):
        return str(x)
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return f"{x:.8e}"


def write_csv(path, header, rows) -> str:
    """Write rows of numbers with a header line; returns the path."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_float(v) for v in row) + "\n")
    return os.fspath(path)


def write_manifest(output_path, command: str, config_si: dict,
                   parameters: dict | None = None,
                   extra: dict | None = None) -> str:
    """JSON sidecar (<output>.manifest.json) describing one output file."""
    manifest = {
        "command": command,
        "output": os.path.basename(os.fspath(output_path)),
        "config_si": config_si,
        "parameters": parameters or {},
        "code_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    if extra:
        manifest.update(extra)
    path = os.fspath(output_path) + ".manifest.json"
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")
    return path
