"""Deterministic JSON, CSV (RFC 4180) and SVG 1.1 writers."""

import csv
import io
import json
import math
import os
from importlib import resources

import numpy as np


def load_schemas():
    text = resources.files("critline").joinpath("schemas.json").read_text(encoding="utf-8")
    return json.loads(text)


def plain(obj):
    """JSON-safe copy: numpy scalars unwrapped, complex as [re, im], non-finite as strings."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [plain(float(obj.real)), plain(float(obj.imag))]
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isfinite(x):
            return x
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    if obj is None or isinstance(obj, str):
        return obj
    if hasattr(obj, "to_dict"):
        return plain(obj.to_dict())
    return str(obj)


def write_json(path, obj):
    text = json.dumps(plain(obj), indent=2, allow_nan=False, ensure_ascii=True) + "\n"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cell(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if x is None:
        return ""
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return repr(x) if math.isfinite(x) else ("nan" if math.isnan(x) else ("inf" if x > 0 else "-inf"))
    return str(x)


def write_csv(path, name, rows, schemas=None):
    """Rows are dicts; the header comes from the schema entry ``name``."""
    schemas = schemas or load_schemas()
    cols = [c["name"] for c in schemas[name]["columns"]]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n", quoting=csv.QUOTE_MINIMAL)
    w.writerow(cols)
    for r in rows:
        missing = set(cols) - set(r)
        if missing:
            raise KeyError(f"{name}: row lacks {sorted(missing)}")
        w.writerow([cell(r[c]) for c in cols])
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(buf.getvalue())


def read_csv(path):
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


# ------------------------------------------------------------------- SVG

def _f(x):
    return f"{x:.3f}"


def _esc(s):
    return (str(s).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            .replace('"', "&quot;"))


class _Panel:
    def __init__(self, x, y, w, h, xr, yr):
        self.x, self.y, self.w, self.h = x, y, w, h
        x0, x1 = xr
        y0, y1 = yr
        if x1 <= x0:
            x1 = x0 + 1.0
        if y1 <= y0:
            y1 = y0 + 1.0
        self.xr, self.yr = (x0, x1), (y0, y1)

    def px(self, v):
        return self.x + (v - self.xr[0]) / (self.xr[1] - self.xr[0]) * self.w

    def py(self, v):
        return self.y + self.h - (v - self.yr[0]) / (self.yr[1] - self.yr[0]) * self.h

    def frame(self, title, xlabel, ylabel):
        out = [f'<rect x="{_f(self.x)}" y="{_f(self.y)}" width="{_f(self.w)}" height="{_f(self.h)}" '
               f'fill="none" stroke="#444" stroke-width="1"/>',
               f'<text x="{_f(self.x + self.w / 2)}" y="{_f(self.y - 8)}" text-anchor="middle" '
               f'font-size="13">{_esc(title)}</text>',
               f'<text x="{_f(self.x + self.w / 2)}" y="{_f(self.y + self.h + 32)}" '
               f'text-anchor="middle" font-size="11">{_esc(xlabel)}</text>',
               f'<text x="{_f(self.x - 40)}" y="{_f(self.y + self.h / 2)}" text-anchor="middle" '
               f'font-size="11" transform="rotate(-90 {_f(self.x - 40)} {_f(self.y + self.h / 2)})">'
               f'{_esc(ylabel)}</text>']
        for v, anchor in ((self.xr[0], "start"), (self.xr[1], "end")):
            out.append(f'<text x="{_f(self.px(v))}" y="{_f(self.y + self.h + 14)}" '
                       f'text-anchor="{anchor}" font-size="10">{v:.4g}</text>')
        for v in self.yr:
            out.append(f'<text x="{_f(self.x - 4)}" y="{_f(self.py(v) + 3)}" text-anchor="end" '
                       f'font-size="10">{v:.4g}</text>')
        return out


def phase_svg(path, t, phi, crossings, zeros, rect, title):
    """Phase phi(t) with crossing markers, and the zero map in the s-plane."""
    width, height = 960, 420
    t = np.asarray(t, dtype=float)
    phi = np.asarray(phi, dtype=float)
    left = _Panel(70, 40, 520, 320, (float(t.min()), float(t.max())),
                  (float(phi.min()), float(phi.max())))
    x0, x1, y0, y1 = rect
    right = _Panel(700, 40, 220, 320, (x0, x1), (y0, y1))
    parts = ['<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
             f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
             f'height="{height}" viewBox="0 0 {width} {height}">',
             f'<title>{_esc(title)}</title>',
             '<rect x="0" y="0" width="100%" height="100%" fill="white"/>']
    parts += left.frame("phase of c on the critical line", "t", "phi(t)")
    # thin the polyline to at most 4000 vertices
    step = max(1, int(math.ceil(t.size / 4000)))
    pts = " ".join(f"{_f(left.px(a))},{_f(left.py(b))}" for a, b in zip(t[::step], phi[::step]))
    parts.append(f'<polyline points="{pts}" fill="none" stroke="#1f4e9a" stroke-width="1.2"/>')
    for tc, pc in crossings:
        parts.append(f'<circle cx="{_f(left.px(tc))}" cy="{_f(left.py(pc))}" r="3" '
                     f'fill="none" stroke="#c0392b" stroke-width="1.2"/>')
    parts += right.frame("zeros in the s-plane", "Re s", "Im s")
    if x0 <= 0.5 <= x1:
        xl = _f(right.px(0.5))
        parts.append(f'<line x1="{xl}" y1="{_f(right.y)}" x2="{xl}" y2="{_f(right.y + right.h)}" '
                     f'stroke="#888" stroke-dasharray="4,3" stroke-width="1"/>')
    for w in zeros:
        if x0 <= w.real <= x1 and y0 <= w.imag <= y1:
            parts.append(f'<circle cx="{_f(right.px(w.real))}" cy="{_f(right.py(w.imag))}" r="2.5" '
                         f'fill="#c0392b"/>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")


def ensure_dir(path):
    os.makedirs(path, exist_ok=True)
    return path
