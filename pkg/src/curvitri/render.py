"""Flat drawings of tilings: SVG with edge decorations, or Graphviz DOT.

The layout is a barycentric (Tutte) embedding with face 0 as the outer
triangle, so it is planar and deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .verify import LabeledTiling

CLASS_COLORS = ("#222222", "#1f5fbf", "#2a8a3a")


@dataclass(frozen=True)
class RenderOptions:
    format: str = "svg"
    size: int = 480
    corners: bool = True  # print corner numbers inside the faces
    amplitude: float = 0.12  # decoration height relative to edge length

    def __post_init__(self):
        if self.format not in ("svg", "dot"):
            raise ValueError(f"unknown format {self.format!r}")


def tutte_layout(t: LabeledTiling, outer: int = 0) -> np.ndarray:
    """Vertex positions: outer face on a circle, every other vertex at its neighbours' mean."""
    m = t.map
    n = m.nv
    fixed = m.faces[outer]
    pos = np.zeros((n, 2))
    for i, v in enumerate(fixed):
        a = math.pi / 2 + 2 * math.pi * i / 3
        pos[v] = (math.cos(a), math.sin(a))
    free = [v for v in range(n) if v not in fixed]
    if free:
        index = {v: i for i, v in enumerate(free)}
        A = np.zeros((len(free), len(free)))
        b = np.zeros((len(free), 2))
        for v in free:
            i = index[v]
            nbrs = m.neighbors(v)
            A[i, i] = len(nbrs)
            for u in nbrs:
                if u in index:
                    A[i, index[u]] -= 1
                else:
                    b[i] += pos[u]
        sol = np.linalg.solve(A, b)
        for v in free:
            pos[v] = sol[index[v]]
    return pos


def _fmt(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def _edge_path(p, q, label, amp: float) -> tuple[str, list[str]]:
    """SVG path from p to q for a label read by the face on the left of p->q."""
    (x0, y0), (x1, y1) = p, q
    dx, dy = x1 - x0, y1 - y0
    L = math.hypot(dx, dy) or 1.0
    # screen y points down, so the left normal of p->q is (dy, -dx)
    nx, ny = dy / L, -dx / L
    h = amp * L

    def pt(s, off):
        return (x0 + s * dx + off * nx, y0 + s * dy + off * ny)

    def P(xy):
        return f"{_fmt(xy[0])} {_fmt(xy[1])}"

    extra: list[str] = []
    k = label.kind
    if k == "A":
        d = f"M {P(p)} L {P(q)}"
    elif k == "H":
        # bump towards the tile reading the plain side
        off = h if label.side == 0 else -h
        d = f"M {P(p)} Q {P(pt(0.5, 2 * off))} {P(q)}"
    elif k == "G":
        off = h if label.side == 0 else -h
        s1, s2 = (0.2, 0.45) if label.chirality > 0 else (0.55, 0.8)
        d = f"M {P(p)} C {P(pt(s1, 2 * off))} {P(pt(s2, 2 * off))} {P(q)}"
        # arrow tick marks the direction of the curve
        tip = pt(0.5, 0)
        back = pt(0.42 if label.chirality > 0 else 0.58, 0.35 * h)
        extra.append(f'<path d="M {P(back)} L {P(tip)}" fill="none"/>')
    else:  # R
        sgn = 1 if label.chirality > 0 else -1
        d = f"M {P(p)} C {P(pt(0.33, 2 * sgn * h))} {P(pt(0.67, -2 * sgn * h))} {P(q)}"
        if label.chirality < 0:
            c = pt(0.5, 0)
            extra.append(f'<circle cx="{_fmt(c[0])}" cy="{_fmt(c[1])}" r="{_fmt(0.18 * h + 2)}" fill="white"/>')
    return d, extra


def render_svg(t: LabeledTiling, opts: RenderOptions | None = None) -> str:
    opts = opts or RenderOptions()
    m = t.map
    pos = tutte_layout(t)
    S = opts.size
    margin = 0.08 * S
    scale = (S - 2 * margin) / 2
    scr = [(S / 2 + scale * x, S / 2 - scale * y + 0.12 * scale) for x, y in pos]
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{S}" height="{S}" viewBox="0 0 {S} {S}">',
        f'<title>{t.prototile.name} f={m.nf}</title>',
        '<g fill="none" stroke-width="1.6">',
    ]
    for d, e in m.edges():
        lab = t.label[d]
        path, extra = _edge_path(scr[m.origin(d)], scr[m.dest(d)], lab, opts.amplitude)
        color = CLASS_COLORS[lab.cls % len(CLASS_COLORS)]
        out.append(f'<g stroke="{color}" data-edge="{d}-{e}" data-label="{lab.ascii}/{t.label[e].ascii}">')
        out.append(f'<path d="{path}"/>')
        out.extend(extra)
        out.append("</g>")
    out.append("</g>")
    if opts.corners:
        out.append('<g font-family="sans-serif" font-size="10" text-anchor="middle" fill="#555555">')
        for k, face in enumerate(m.faces):
            if k == 0:
                continue  # the outer face surrounds the picture
            cx = sum(scr[v][0] for v in face) / 3
            cy = sum(scr[v][1] for v in face) / 3
            for j, v in enumerate(face):
                x = scr[v][0] + 0.3 * (cx - scr[v][0])
                y = scr[v][1] + 0.3 * (cy - scr[v][1]) + 3
                out.append(f'<text x="{_fmt(x)}" y="{_fmt(y)}">{t.corner[3 * k + j]}</text>')
        out.append("</g>")
    out.append('<g fill="#000000">')
    for v, (x, y) in enumerate(scr):
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.5"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_dot(t: LabeledTiling, opts: RenderOptions | None = None) -> str:
    m = t.map
    pos = tutte_layout(t)
    lines = ["graph tiling {", "  node [shape=point];"]
    for v, (x, y) in enumerate(pos):
        lines.append(f'  v{v} [pos="{_fmt(4 * x)},{_fmt(4 * y)}!"];')
    for d, e in m.edges():
        lines.append(
            f'  v{m.origin(d)} -- v{m.dest(d)} [label="{t.label[d].ascii}/{t.label[e].ascii}", '
            f'kind="{t.label[d].kind}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def render(t: LabeledTiling, opts: RenderOptions | None = None) -> bytes:
    opts = opts or RenderOptions()
    text = render_svg(t, opts) if opts.format == "svg" else render_dot(t, opts)
    return text.encode("utf-8")
