"""Rubber-band sketch embedding of topological classes.

A routed net's class is realized in the plane as tangent line segments
joined by concentric arcs around its pivot entities.  The arc radius at a
pivot is the entity radius plus the crossing height times the height
interval, so stacked paths stay separated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geometry import Environment, PlanePoint, euclidean_distance
from .router import TopologicalClass

DEFAULT_HEIGHT_INTERVAL = 0.5
# Maximum chord error (plane units) when sampling arcs into polylines.
ARC_SAMPLING_TOLERANCE = 0.05


class SketchError(RuntimeError):
    pass


@dataclass(frozen=True)
class SketchConfig:
    height_interval: float = DEFAULT_HEIGHT_INTERVAL
    base_radius: float | None = None   # None: use each entity's own radius

    def __post_init__(self):
        if self.height_interval <= 0:
            raise ValueError("height interval must be positive")


@dataclass(frozen=True)
class SketchSegment:
    start: PlanePoint
    end: PlanePoint

    @property
    def length(self) -> float:
        return euclidean_distance(self.start, self.end)


@dataclass(frozen=True)
class SketchArc:
    center: PlanePoint
    radius: float
    start_angle: float
    sweep: float          # signed: positive anti-clockwise
    orientation: int

    @property
    def end_angle(self) -> float:
        return self.start_angle + self.sweep

    @property
    def length(self) -> float:
        return self.radius * abs(self.sweep)

    def point_at(self, angle: float) -> PlanePoint:
        return PlanePoint(self.center.x + self.radius * math.cos(angle),
                          self.center.y + self.radius * math.sin(angle))

    @property
    def start(self) -> PlanePoint:
        return self.point_at(self.start_angle)

    @property
    def end(self) -> PlanePoint:
        return self.point_at(self.end_angle)


@dataclass
class SketchPath:
    net_index: int
    pieces: list  # alternating SketchSegment, SketchArc, ..., SketchSegment

    @property
    def start(self) -> PlanePoint:
        return self.pieces[0].start

    @property
    def end(self) -> PlanePoint:
        return self.pieces[-1].end


def _perp(dx: float, dy: float) -> tuple[float, float]:
    return -dy, dx


def _tangent_line(ca: PlanePoint, ra: float, sa: int,
                  cb: PlanePoint, rb: float, sb: int) -> tuple[PlanePoint, PlanePoint]:
    """Common tangent of two oriented circles.

    Orientation +1 means the path travels anti-clockwise around the circle
    (center on the travel direction's left), -1 clockwise; radius 0 treats
    the center as a point the line passes through.
    """
    cx, cy = cb.x - ca.x, cb.y - ca.y
    L = math.hypot(cx, cy)
    k = sb * rb - sa * ra
    if L <= abs(k) + 1e-12:
        raise SketchError(
            f"tangent infeasible between circles at {ca} (r={ra}) and {cb} (r={rb})")
    lam = math.sqrt(max(L * L - k * k, 0.0))
    px, py = _perp(cx, cy)
    dx = (lam * cx - k * px) / (L * L)
    dy = (lam * cy - k * py) / (L * L)
    pdx, pdy = _perp(dx, dy)
    pa = PlanePoint(ca.x - sa * ra * pdx, ca.y - sa * ra * pdy)
    pb = PlanePoint(cb.x - sb * rb * pdx, cb.y - sb * rb * pdy)
    return pa, pb


def _arc_between(center: PlanePoint, radius: float, orientation: int,
                 p_in: PlanePoint, p_out: PlanePoint,
                 expected: float | None = None) -> SketchArc:
    """Arc from p_in to p_out in the orientation's direction.

    The contact points fix the sweep only modulo full turns.  With
    ``expected`` set (the path's turn angle at this pivot), the branch
    nearest it is taken; a tiny negative sweep then stands for contacts
    that land fractionally past each other on a near-degenerate turn.
    """
    a_in = math.atan2(p_in.y - center.y, p_in.x - center.x)
    a_out = math.atan2(p_out.y - center.y, p_out.x - center.x)
    if orientation == 1:
        sweep = (a_out - a_in) % (2 * math.pi)
    else:
        sweep = -((a_in - a_out) % (2 * math.pi))
    if expected is not None:
        want = orientation * expected
        sweep += 2 * math.pi * round((want - sweep) / (2 * math.pi))
    return SketchArc(center, radius, a_in, sweep, orientation)


def sketch_path(tclass: TopologicalClass, env: Environment,
                cfg: SketchConfig = SketchConfig()) -> SketchPath:
    """Embed one topological class as tangent segments and concentric arcs."""
    by_slot: dict[int, list] = {}
    for slot, pid, w, h in tclass.clearances:
        by_slot.setdefault(slot, []).append((pid, w, h))
    wraps = tclass.wraps or (None,) * len(tclass.pivots)
    seq = []   # (entity id, orientation, height, is_clearance, turn angle)
    for i, (pid, w, h, turn) in enumerate(zip(tclass.pivots,
                                              tclass.orientations,
                                              tclass.heights, wraps)):
        for c in by_slot.get(i, ()):
            seq.append((*c, True, None))
        seq.append((pid, w, h, False, turn))

    while True:
        centers = []
        radii = []
        signs = []
        for pid, w, h, _, _ in seq:
            ent = env.entity(pid)
            base = cfg.base_radius if cfg.base_radius is not None else ent.radius
            centers.append(ent.center)
            if w == 0:
                radii.append(0.0)
                signs.append(1)      # sign unused at zero radius
            else:
                radii.append(base + h * cfg.height_interval)
                signs.append(w)

        tangents = []
        for i in range(len(centers) - 1):
            tangents.append(_tangent_line(centers[i], radii[i], signs[i],
                                          centers[i + 1], radii[i + 1],
                                          signs[i + 1]))

        pieces: list = []
        slack = None
        for i, (pa, pb) in enumerate(tangents):
            if i > 0:
                arc = _arc_between(centers[i], radii[i],
                                   signs[i], tangents[i - 1][1], pa,
                                   expected=seq[i][4])
                # A clearance bend is a near-zero detour; an arc sweeping
                # most of the circle means the tangents already clear it on
                # the held side, so the bend is slack and can be dropped.
                if seq[i][3] and abs(arc.sweep) > math.pi:
                    slack = i
                    break
                pieces.append(arc)
            pieces.append(SketchSegment(pa, pb))
        if slack is None:
            return SketchPath(tclass.net_index, pieces)
        del seq[slack]


def sketch_all(classes: list[TopologicalClass], env: Environment,
               cfg: SketchConfig = SketchConfig()) -> list[SketchPath]:
    return [sketch_path(tc, env, cfg) for tc in classes]


def path_length(path: SketchPath) -> float:
    return sum(p.length for p in path.pieces)


def sample_polyline(path: SketchPath,
                    tol: float = ARC_SAMPLING_TOLERANCE) -> list[PlanePoint]:
    """Flatten a sketch into a polyline with bounded arc chord error."""
    pts: list[PlanePoint] = []

    def push(p: PlanePoint):
        if not pts or (pts[-1].x, pts[-1].y) != (p.x, p.y):
            pts.append(p)

    for piece in path.pieces:
        if isinstance(piece, SketchSegment):
            push(piece.start)
            push(piece.end)
        else:
            r = piece.radius
            if r <= tol:
                max_step = math.pi / 2
            else:
                max_step = 2 * math.acos(max(1 - tol / r, -1.0))
            steps = max(1, int(math.ceil(abs(piece.sweep) / max_step)))
            for j in range(steps + 1):
                ang = piece.start_angle + piece.sweep * j / steps
                push(piece.point_at(ang))
    return pts


def _segments_cross(a1, a2, b1, b2) -> bool:
    d1 = (a2[0] - a1[0]) * (b1[1] - a1[1]) - (a2[1] - a1[1]) * (b1[0] - a1[0])
    d2 = (a2[0] - a1[0]) * (b2[1] - a1[1]) - (a2[1] - a1[1]) * (b2[0] - a1[0])
    d3 = (b2[0] - b1[0]) * (a1[1] - b1[1]) - (b2[1] - b1[1]) * (a1[0] - b1[0])
    d4 = (b2[0] - b1[0]) * (a2[1] - b1[1]) - (b2[1] - b1[1]) * (a2[0] - b1[0])
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0))


def find_crossings(paths: list[SketchPath],
                   tol: float = ARC_SAMPLING_TOLERANCE) -> list[tuple[int, int]]:
    """Pairs of net indices whose sampled polylines properly intersect."""
    sampled = [(p.net_index, [(q.x, q.y) for q in sample_polyline(p, tol)])
               for p in paths]
    bad = []
    for i in range(len(sampled)):
        ni, pi = sampled[i]
        for j in range(i + 1, len(sampled)):
            nj, pj = sampled[j]
            if _polylines_cross(pi, pj):
                bad.append((ni, nj))
    return bad


def _polylines_cross(pa, pb) -> bool:
    # Bounding-box prefilter per segment; quadratic scan is fine at this scale.
    segs_a = list(zip(pa, pa[1:]))
    segs_b = list(zip(pb, pb[1:]))
    for a1, a2 in segs_a:
        ax_lo, ax_hi = min(a1[0], a2[0]), max(a1[0], a2[0])
        ay_lo, ay_hi = min(a1[1], a2[1]), max(a1[1], a2[1])
        for b1, b2 in segs_b:
            if max(b1[0], b2[0]) < ax_lo or min(b1[0], b2[0]) > ax_hi:
                continue
            if max(b1[1], b2[1]) < ay_lo or min(b1[1], b2[1]) > ay_hi:
                continue
            if _segments_cross(a1, a2, b1, b2):
                return True
    return False


def tangency_residual(path: SketchPath) -> float:
    """Largest angular mismatch between segment directions and arc tangents."""
    worst = 0.0
    for prev, piece, nxt in zip(path.pieces, path.pieces[1:], path.pieces[2:]):
        if not isinstance(piece, SketchArc):
            continue
        for seg, ang, at_start in ((prev, piece.start_angle, True),
                                   (nxt, piece.end_angle, False)):
            sd = math.atan2(seg.end.y - seg.start.y, seg.end.x - seg.start.x)
            # Arc tangent direction, oriented along travel.  A near-zero
            # sweep may land fractionally on the far side of zero, so the
            # orientation, not the sweep sign, fixes the travel direction.
            td = ang + piece.orientation * math.pi / 2
            diff = abs((sd - td + math.pi) % (2 * math.pi) - math.pi)
            worst = max(worst, diff)
    return worst
