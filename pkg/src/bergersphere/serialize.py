"""Deterministic text output for reports and profiles.

Floats are printed with 17 significant digits so that every value
round-trips exactly and repeated runs produce byte-identical files.
The JSON writer is a small recursive renderer rather than ``json.dumps``
because the stdlib encoder offers no hook to control float formatting.
"""

from __future__ import annotations

import json
import math

__all__ = ["fmt17", "json_text"]


def fmt17(x: float) -> str:
    """Render a finite float with 17 significant digits."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    return format(x, ".17g")


def _render(obj, indent: int, level: int, out: list) -> None:
    pad = " " * (indent * (level + 1))
    close_pad = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            out.append(pad)
            out.append(json.dumps(str(key)))
            out.append(": ")
            _render(value, indent, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(close_pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, value in enumerate(obj):
            out.append(pad)
            _render(value, indent, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(close_pad + "]")
    elif obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(repr(obj))
    elif isinstance(obj, float):
        out.append(fmt17(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def json_text(obj, indent: int = 2) -> str:
    """Pretty JSON with 17-significant-digit floats and a trailing newline."""
    out: list = []
    _render(obj, indent, 0, out)
    out.append("\n")
    return "".join(out)
