"""SVG rendering of environments, routed sketches, grid paths, and frames."""

from __future__ import annotations

import math

from .frame import RoutedFrame
from .geometry import Environment
from .gridastar import GridRouteResult
from .sketch import SketchArc, SketchPath, SketchSegment

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")


def _svg_header(x_min, y_min, width, height, scale=6.0):
    return (f'<svg xmlns="http://www.w3.org/2000/svg" '
            f'width="{width * scale:.0f}" height="{height * scale:.0f}" '
            f'viewBox="{x_min} {y_min} {width} {height}">\n'
            f'<g transform="scale(1,-1) translate(0,{-(2 * y_min + height)})">\n')


_SVG_FOOTER = "</g>\n</svg>\n"


def render_environment(env: Environment, paths: list[SketchPath] | None = None,
                       grid_result: GridRouteResult | None = None,
                       forest=None) -> str:
    """Boundary, disks, optional dashed forest edges, and routed paths."""
    b = env.boundary
    pad = 2.0
    out = [_svg_header(b.x_min - pad, b.y_min - pad,
                       (b.x_max - b.x_min) + 2 * pad,
                       (b.y_max - b.y_min) + 2 * pad)]
    out.append(f'<rect x="{b.x_min}" y="{b.y_min}" width="{b.x_max - b.x_min}" '
               f'height="{b.y_max - b.y_min}" fill="none" stroke="black" '
               f'stroke-width="0.3"/>\n')
    if forest is not None:
        for e in forest.edges:
            out.append(f'<line x1="{e.a.position.x:.3f}" y1="{e.a.position.y:.3f}" '
                       f'x2="{e.b.position.x:.3f}" y2="{e.b.position.y:.3f}" '
                       f'stroke="#888" stroke-width="0.15" '
                       f'stroke-dasharray="1,1"/>\n')
    for ent in env.entities:
        color = "#444" if ent.kind == "start" else "#a00"
        out.append(f'<circle cx="{ent.center.x:.3f}" cy="{ent.center.y:.3f}" '
                   f'r="{ent.radius}" fill="{color}" fill-opacity="0.6"/>\n')
    if paths is not None:
        for p in paths:
            color = _PALETTE[(p.net_index - 1) % len(_PALETTE)]
            out.append(_sketch_path_element(p, color))
    if grid_result is not None:
        for i, nodes in grid_result.paths.items():
            if not nodes:
                continue
            color = _PALETTE[(i - 1) % len(_PALETTE)]
            pts = " ".join(f"{x},{y}" for x, y in nodes)
            out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                       f'stroke-width="0.25"/>\n')
    out.append(_SVG_FOOTER)
    return "".join(out)


def _sketch_path_element(path: SketchPath, color: str) -> str:
    cmds = []
    for piece in path.pieces:
        if isinstance(piece, SketchSegment):
            if not cmds:
                cmds.append(f"M {piece.start.x:.4f} {piece.start.y:.4f}")
            cmds.append(f"L {piece.end.x:.4f} {piece.end.y:.4f}")
        elif isinstance(piece, SketchArc):
            large = 1 if abs(piece.sweep) > math.pi else 0
            sweep_flag = 1 if piece.sweep > 0 else 0
            end = piece.end
            cmds.append(f"A {piece.radius:.4f} {piece.radius:.4f} 0 "
                        f"{large} {sweep_flag} {end.x:.4f} {end.y:.4f}")
    d = " ".join(cmds)
    return (f'<path d="{d}" fill="none" stroke="{color}" '
            f'stroke-width="0.25"/>\n')


def render_frame(rf: RoutedFrame, radius: float = 50.0) -> str:
    """The Circular Frame with labeled ring vertices and chords."""
    m = len(rf.frame.ring)
    pad = 10.0
    out = [_svg_header(-radius - pad, -radius - pad,
                       2 * (radius + pad), 2 * (radius + pad), scale=8.0)]
    out.append(f'<circle cx="0" cy="0" r="{radius}" fill="none" '
               f'stroke="black" stroke-width="0.3"/>\n')

    def pos(vertex: int, rank: float = 0.0, count: int = 1):
        # Spread chord-end ranks slightly along the circle inside the vertex.
        theta = 2 * math.pi * (vertex + 0.5 * (rank + 1) / (count + 1) - 0.25) / m
        return radius * math.cos(theta), radius * math.sin(theta)

    for i, v in enumerate(rf.frame.ring):
        x, y = pos(i)
        out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="0.8" fill="#333"/>\n')
        lx, ly = x * 1.1, y * 1.1
        out.append(f'<text x="{lx:.3f}" y="{ly:.3f}" font-size="3" '
                   f'transform="scale(1,-1) translate(0,{-2 * ly:.3f})"'
                   f'>{v.label()}</text>\n')
    for chord in rf.chords.values():
        color = _PALETTE[(chord.net_index - 1) % len(_PALETTE)]
        coords = []
        for eid in chord.end_ids:
            vertex = rf.end_vertex[eid]
            stack = rf.stacks[vertex]
            coords.append(pos(vertex, stack.index(eid), len(stack)))
        (x1, y1), (x2, y2) = coords
        out.append(f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" '
                   f'y2="{y2:.3f}" stroke="{color}" stroke-width="0.3"/>\n')
    out.append(_SVG_FOOTER)
    return "".join(out)
