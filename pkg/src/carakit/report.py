"""Report envelopes, JSON/CSV serialization and the leaf-boundary SVG."""
from __future__ import annotations

import csv
import io
import json
import math
from datetime import datetime, timezone
from importlib import resources
from typing import Iterable, Optional, Sequence

import numpy as np

SCHEMA_VERSION = "1"


def load_schema() -> dict:
    return json.loads(resources.files("carakit").joinpath("schema_v1.json").read_text())


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, complex):
        return [x.real, x.imag]
    return x


def envelope(command: Sequence[str], config: dict, payload_type: str, payload: dict,
             timestamp: Optional[str] = None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": list(command),
        "config": _jsonable(config),
        "timestamp": timestamp or datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "payload_type": payload_type,
        "payload": _jsonable(payload),
    }


def dumps(env: dict) -> str:
    return json.dumps(env, sort_keys=True, indent=2, allow_nan=False) + "\n"


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def leaf_svg(curve: np.ndarray, size: int = 512) -> str:
    """Plain SVG 1.1: leaf boundary polyline, unit circle and axes.

    ``curve`` holds rows ``(theta, r, x, y)``; y is flipped to screen space.
    """
    pts = " ".join(f"{x:.6f},{-y:.6f}" for x, y in curve[:, 2:4])
    first = curve[0]
    pts += f" {first[2]:.6f},{-first[3]:.6f}"
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        'viewBox="-1.1 -1.1 2.2 2.2">\n'
        '  <line x1="-1.1" y1="0" x2="1.1" y2="0" stroke="gray" stroke-width="0.004"/>\n'
        '  <line x1="0" y1="-1.1" x2="0" y2="1.1" stroke="gray" stroke-width="0.004"/>\n'
        '  <circle cx="0" cy="0" r="1" fill="none" stroke="black" stroke-width="0.006"/>\n'
        f'  <polyline points="{pts}" fill="none" stroke="blue" stroke-width="0.008"/>\n'
        "</svg>\n"
    )
