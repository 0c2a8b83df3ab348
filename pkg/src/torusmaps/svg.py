"""SVG drawings of developments. This is the only place exact lattice
coordinates are turned into floats."""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from torusmaps.holonomy import Development, DualLoop, develop
from torusmaps.lattice import LatticeMotion, LatticePoint


@dataclass(frozen=True)
class RenderOptions:
    scale: float = 40.0
    margin: float = 20.0
    loop: DualLoop | None = None


def _centroid(points: list[tuple[float, float]]) -> tuple[float, float]:
    return (sum(p[0] for p in points) / len(points), sum(p[1] for p in points) / len(points))


def _place(dev: Development, f: int, M: LatticeMotion) -> list[LatticePoint]:
    return [M.apply(dev.face_start[d]) for d in dev.map.faces[f]]


def render_svg(m_or_dev, family=None, options: RenderOptions | None = None) -> str:
    opts = options or RenderOptions()
    dev = m_or_dev if isinstance(m_or_dev, Development) else develop(m_or_dev, family)
    m = dev.map
    polys = []
    for f in range(len(m.faces)):
        pts = [p.to_plane() for p in _place(dev, f, dev.frame[f])]
        polys.append((f, pts))
    path: list[tuple[float, float]] = []
    if opts.loop is not None and opts.loop.darts:
        opts.loop.validate(m)
        f = m.face_of[opts.loop.darts[0]]
        M = dev.frame[f]
        path.append(_centroid([p.to_plane() for p in _place(dev, f, M)]))
        for d in opts.loop.darts:
            M = M @ dev.gluing[d]
            f = m.face_of[d ^ 1]
            path.append(_centroid([p.to_plane() for p in _place(dev, f, M)]))

    s = opts.scale
    xs = [x for _, pts in polys for x, _ in pts] + [x for x, _ in path]
    ys = [y for _, pts in polys for _, y in pts] + [y for _, y in path]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    width = (x1 - x0) * s + 2 * opts.margin
    height = (y1 - y0) * s + 2 * opts.margin

    def tr(p: tuple[float, float]) -> str:
        # flip y so the picture has the usual mathematical orientation
        return f"{(p[0] - x0) * s + opts.margin:.3f},{(y1 - p[1]) * s + opts.margin:.3f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.3f}" height="{height:.3f}" '
        f'viewBox="0 0 {width:.3f} {height:.3f}">',
        f"<title>{escape(m.name)} ({dev.family.name})</title>",
        '<g class="faces" fill="#e8eef7" stroke="#33415c" stroke-width="1">',
    ]
    for f, pts in polys:
        out.append(f'<polygon class="face" data-face="{f}" points="{" ".join(tr(p) for p in pts)}"/>')
    out.append("</g>")
    if path:
        out.append(f'<polyline class="loop" fill="none" stroke="#c0392b" stroke-width="3" '
                   f'points="{" ".join(tr(p) for p in path)}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
