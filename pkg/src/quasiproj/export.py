"""CSV/JSON export, JSON re-import, SVG rendering and the flat config format."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .projector import EdgeSet, ProjectedPointSet

SIG_DIGITS = 12


def fmt(x: float) -> str:
    """Shortest round-trip text of ``x`` after rounding to 12 significant digits."""
    v = float(f"{float(x):.{SIG_DIGITS}g}")
    if v == 0:
        v = 0.0  # drop the sign of -0
    s = repr(v)
    return s[:-2] if s.endswith(".0") else s


def _rounded(xy: np.ndarray) -> np.ndarray:
    out = np.array([[float(fmt(v)) for v in row] for row in np.asarray(xy).reshape(-1, 2)])
    return out.reshape(-1, 2)


def export_order(ps: ProjectedPointSet | np.ndarray) -> np.ndarray:
    """Permutation sorting points lexicographically by their rounded (x, y)."""
    xy = _rounded(ps.xy if isinstance(ps, ProjectedPointSet) else ps)
    return np.lexsort((xy[:, 1], xy[:, 0])) if len(xy) else np.empty(0, np.int64)


def _sorted_export(ps: ProjectedPointSet, edges: EdgeSet | None):
    order = export_order(ps)
    xy = _rounded(ps.xy)[order]
    if edges is None or len(edges) == 0:
        return xy, np.empty((0, 2), np.int64)
    rank = np.empty(len(order), np.int64)
    rank[order] = np.arange(len(order))
    e = np.sort(rank[edges.edges], axis=1)
    e = e[np.lexsort((e[:, 1], e[:, 0]))]
    return xy, e


def csv_text(ps: ProjectedPointSet) -> str:
    xy, _ = _sorted_export(ps, None)
    lines = ["x,y"] + [f"{fmt(x)},{fmt(y)}" for x, y in xy]
    return "\n".join(lines) + "\n"


def json_text(ps: ProjectedPointSet, edges: EdgeSet | None = None, meta: dict | None = None) -> str:
    """Document ``{meta, points, edges}``; ``meta.count`` is always the point count."""
    xy, e = _sorted_export(ps, edges)
    m = {"group": str(ps.group), "lattice": None, "range": None, "plane": None, "radius": None}
    m.update(meta or {})
    if m.get("radius") is not None:
        m["radius"] = float(fmt(m["radius"]))
    m["count"] = len(xy)
    doc = {
        "meta": m,
        "points": [[float(fmt(x)), float(fmt(y))] for x, y in xy],
        "edges": [[int(i), int(j)] for i, j in e],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def load_json(path: str | Path) -> dict:
    """Read an exported document back; points come back as an ``(m, 2)`` array."""
    doc = json.loads(Path(path).read_text())
    doc["points"] = np.array(doc["points"], dtype=float).reshape(-1, 2)
    doc["edges"] = np.array(doc["edges"], dtype=np.int64).reshape(-1, 2)
    return doc


def export_points(ps: ProjectedPointSet, edges: EdgeSet | None, format: str, path: str | Path,
                  meta: dict | None = None) -> None:
    if format == "csv":
        text = csv_text(ps)
    elif format == "json":
        text = json_text(ps, edges, meta)
    else:
        raise ConfigError(f"unknown export format {format!r}")
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


@dataclass(frozen=True)
class RenderOptions:
    canvas: int = 800            # pixel width and height
    point_radius: float = 0.004  # fraction of the viewBox side
    draw_edges: bool = True
    margin: float = 0.05


def render_svg(ps: ProjectedPointSet, edges: EdgeSet | None = None,
               opts: RenderOptions = RenderOptions()) -> str:
    """SVG 1.1 document: edges as ``<line>`` then points as ``<circle>``, in export order.

    The y axis is flipped so that the plane keeps its orientation.
    """
    xy, e = _sorted_export(ps, edges)
    pts = np.column_stack([xy[:, 0], -xy[:, 1]]) if len(xy) else xy
    if len(pts):
        lo, hi = pts.min(axis=0), pts.max(axis=0)
    else:
        lo, hi = np.zeros(2), np.zeros(2)
    side = float(max(hi - lo)) or 1.0
    centre = (lo + hi) / 2
    side *= 1 + 2 * opts.margin
    x0, y0 = centre - side / 2
    r = opts.point_radius * side
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{opts.canvas}" '
        f'height="{opts.canvas}" viewBox="{fmt(x0)} {fmt(y0)} {fmt(side)} {fmt(side)}">',
    ]
    if opts.draw_edges and len(e):
        out.append(f'<g id="edges" stroke="#555" stroke-width="{fmt(r / 2)}">')
        for i, j in e:
            (xa, ya), (xb, yb) = pts[i], pts[j]
            out.append(f'<line x1="{fmt(xa)}" y1="{fmt(ya)}" x2="{fmt(xb)}" y2="{fmt(yb)}"/>')
        out.append("</g>")
    out.append('<g id="points" fill="#1f4e9c">')
    for x, y in pts:
        out.append(f'<circle cx="{fmt(x)}" cy="{fmt(y)}" r="{fmt(r)}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def read_config(path: str | Path) -> dict[str, str]:
    """Flat ``key = value`` file; ``#`` starts a comment, keys use dashes or underscores."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        k, v = (s.strip() for s in line.split("=", 1))
        if not k:
            raise ConfigError(f"{path}:{lineno}: empty key")
        out[k.replace("-", "_")] = v
    return out
