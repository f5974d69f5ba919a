"""Deterministic text rendering of service responses.

Both output formats print every float through the same 17-significant-digit
formatter, so repeated runs are byte-identical and CSV and JSON carry the
same decimal strings (value round-trip is exact).
"""

from __future__ import annotations

import json


def fmt_float(x: float) -> str:
    """Shortest-faithful fixed rendering: 17 significant digits round-trip."""
    return f"{float(x):.17g}"


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return fmt_float(value)
    return str(value)


def _json_fragment(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return fmt_float(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        inner = ",".join(f"{json.dumps(k)}:{_json_fragment(v)}" for k, v in value.items())
        return "{" + inner + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_json_fragment(v) for v in value) + "]"
    raise TypeError(f"cannot render {type(value).__name__} deterministically")


def render_json(payload: dict) -> str:
    return _json_fragment(payload) + "\n"


def manifest_comment(manifest: dict) -> str:
    parts = [
        "# manifest",
        f"command={manifest.get('command')}",
        f"config_digest={manifest.get('config_digest')}",
        f"version={manifest.get('version')}",
        f"format={manifest.get('format')}",
    ]
    for key, value in (manifest.get("params") or {}).items():
        parts.append(f"{key}={_cell(value)}")
    return " ".join(parts)


def render_csv(
    manifest: dict,
    columns: list[str],
    rows: list[dict],
    extra_comments: tuple[str, ...] = (),
) -> str:
    lines = [manifest_comment(manifest)]
    lines.extend(extra_comments)
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_cell(row.get(col)) for col in columns))
    return "\n".join(lines) + "\n"
