"""Deterministic JSON, CSV and SVG emitters."""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

__all__ = ["dumps", "write_json", "write_csv", "svg_line_chart", "write_text"]


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=True) + "\n"


def write_text(path: Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def write_json(path: Path, obj) -> Path:
    return write_text(path, dumps(obj))


def write_csv(path: Path, header, rows, comment: str | None = None) -> Path:
    buf = io.StringIO()
    if comment:
        buf.write(f"# {comment}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return write_text(path, buf.getvalue())


def _cell(v):
    return repr(v) if isinstance(v, float) else v


def svg_line_chart(series, title: str = "", width: int = 640, height: int = 400, comment: str = "") -> str:
    """Polyline chart; ``series`` is a list of ``(label, colour, [(x, y), ...])``."""
    pad = 50
    pts = [p for _, _, s in series for p in s if math.isfinite(p[1])]
    x0, x1 = min(p[0] for p in pts), max(p[0] for p in pts)
    y0, y1 = min(0.0, min(p[1] for p in pts)), max(p[1] for p in pts)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y1 = y0 + 1

    def sx(x):
        return pad + (x - x0) / (x1 - x0) * (width - 2 * pad)

    def sy(y):
        return height - pad - (y - y0) / (y1 - y0) * (height - 2 * pad)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
    ]
    if comment:
        out.append(f"<!-- {comment.replace('--', '- -')} -->")
    out.append(f'<rect width="{width}" height="{height}" fill="white"/>')
    out.append(f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" font-size="14">{_esc(title)}</text>')
    out.append(
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>'
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>'
    )
    for v, anchor in ((x0, "start"), (x1, "end")):
        out.append(f'<text x="{sx(v):.1f}" y="{height - pad + 16}" text-anchor="{anchor}" font-size="11">{v:g}</text>')
    for v in (y0, y1):
        out.append(f'<text x="{pad - 4}" y="{sy(v):.1f}" text-anchor="end" font-size="11">{v:.3g}</text>')
    for i, (label, colour, s) in enumerate(series):
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in s if math.isfinite(y))
        out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{coords}"/>')
        out.append(
            f'<text x="{pad + 10}" y="{pad + 14 * (i + 1)}" font-size="11" fill="{colour}">{_esc(label)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
