"""Taut realizations of routed connections.

A routed net's chord chain fixes a homotopy class in the plane punctured at
the entity points: the chain is traced as a polyline along the cut-region
boundary (offset a hair from the forest slits) and then pulled taut.  The
shortening keeps every entity point on the side of the path the class
dictates, so the surviving bend points are exactly the pivots of the net's
topological class, each with the side it is wrapped on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import PlanePoint

WALL_OFFSET = 0.05       # sliver half-width around each tree edge
BOUNDARY_INSET = 0.02    # boundary entities pulled inside the rectangle
ANCHOR_SHIFT = 0.02      # anchor pair separation along the boundary
_TOL = 1e-9


class TautError(RuntimeError):
    pass


@dataclass
class PolyVertex:
    kind: str            # "entity" | "anchor" | "tree" | "corner"
    ref: str             # entity id, anchor ref, or edge id as string
    ring_index: int | None
    side: str
    pos: PlanePoint


def _tri2(a: PlanePoint, b: PlanePoint, c: PlanePoint) -> float:
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def _close(a: PlanePoint, b: PlanePoint, tol: float = 1e-9) -> bool:
    return abs(a.x - b.x) <= tol and abs(a.y - b.y) <= tol


def _near(a: PlanePoint, b: PlanePoint) -> bool:
    # Loose match covering the inward nudge of boundary obstacle points.
    return _close(a, b, tol=1e-3)


def _perimeter_dir(boundary, p: PlanePoint) -> tuple[float, float]:
    """Counter-clockwise tangent of the rectangle boundary at p."""
    tol = 1e-9
    if abs(p.y - boundary.y_min) <= tol:
        return (1.0, 0.0)
    if abs(p.x - boundary.x_max) <= tol:
        return (0.0, 1.0)
    if abs(p.y - boundary.y_max) <= tol:
        return (-1.0, 0.0)
    if abs(p.x - boundary.x_min) <= tol:
        return (0.0, -1.0)
    raise TautError(f"{p} is not on the boundary")


def _inset_boundary_point(boundary, p: PlanePoint, d: float) -> PlanePoint:
    tx, ty = _perimeter_dir(boundary, p)
    # Interior normal = left of the CCW tangent.
    return PlanePoint(p.x - ty * d, p.y + tx * d)


def _gap_vertex(frame, forest, ring_idx: int) -> PlanePoint:
    """Trace position for an interior entity copy, inside its angular gap."""
    ring = frame.ring
    m = len(ring)
    u = forest.nodes[ring[ring_idx].ref]
    e_in = forest.edge_by_id(int(ring[(ring_idx - 1) % m].ref))
    e_out = forest.edge_by_id(int(ring[(ring_idx + 1) % m].ref))
    a = e_in.other(u).position
    c = e_out.other(u).position
    ang1 = math.atan2(a.y - u.position.y, a.x - u.position.x)
    ang2 = math.atan2(c.y - u.position.y, c.x - u.position.x)
    delta = (ang1 - ang2) % (2 * math.pi)
    if delta < 1e-9:
        delta = 2 * math.pi
    bis = ang1 - delta / 2
    half = delta / 2
    s = math.sin(half) if half < math.pi / 2 else 1.0
    d = WALL_OFFSET / max(s, 0.25)
    return PlanePoint(u.position.x + d * math.cos(bis),
                      u.position.y + d * math.sin(bis))


def build_polygon(frame) -> tuple[list[PolyVertex], dict[int, int]]:
    """Boundary walk of the cut region as a counter-clockwise polygon.

    Every ring vertex gets a concrete position a hair away from the slits;
    rectangle corners are woven in.  Returns the vertex list and the map
    from ring indices to polygon indices.
    """
    env, forest = frame.env, frame.forest
    if env is None or forest is None:
        raise TautError("frame lacks environment/forest context")
    ring = frame.ring
    m = len(ring)
    boundary = env.boundary

    raw: list[PolyVertex] = []
    for i, v in enumerate(ring):
        if v.is_entity:
            ent = env.entity(v.ref)
            if boundary.on_edge(ent.center):
                pos = _inset_boundary_point(boundary, ent.center, BOUNDARY_INSET)
            else:
                pos = _gap_vertex(frame, forest, i)
            raw.append(PolyVertex("entity", v.ref, i, "", pos))
        elif v.kind == "anchor":
            node = forest.nodes[v.ref]
            tx, ty = _perimeter_dir(boundary, node.position)
            s = -1.0 if v.side == "A" else 1.0
            pos = PlanePoint(node.position.x + s * ANCHOR_SHIFT * tx,
                             node.position.y + s * ANCHOR_SHIFT * ty)
            raw.append(PolyVertex("anchor", v.ref, i, v.side, pos))
        else:
            raw.append(PolyVertex("tree", v.ref, i, v.side, None))
    for i, v in enumerate(raw):
        if v.kind == "tree":
            p = raw[(i - 1) % m].pos
            q = raw[(i + 1) % m].pos
            v.pos = PlanePoint((p.x + q.x) / 2, (p.y + q.y) / 2)

    # Weave rectangle corners into the boundary walk.
    corners = sorted(boundary.corners, key=boundary.perimeter_parameter)
    corner_params = [boundary.perimeter_parameter(c) for c in corners]

    def boundary_param(v: PolyVertex) -> float | None:
        if v.kind == "anchor":
            return boundary.perimeter_parameter(forest.nodes[v.ref].position)
        if v.kind == "entity":
            ent = env.entity(v.ref)
            if boundary.on_edge(ent.center):
                return boundary.perimeter_parameter(ent.center)
        return None

    out: list[PolyVertex] = []
    params = [boundary_param(v) for v in raw]
    first_param = next(p for p in params if p is not None)
    last = first_param
    emitted = [False] * 4

    def emit_corners_between(lo: float, hi: float) -> None:
        for k, cp in enumerate(corner_params):
            if not emitted[k] and lo < cp < hi:
                emitted[k] = True
                out.append(PolyVertex("corner", "", None, "", corners[k]))

    for v, p in zip(raw, params):
        if p is not None and p > last:
            emit_corners_between(last, p)
            last = p
        out.append(v)
    total = 2 * ((boundary.x_max - boundary.x_min)
                 + (boundary.y_max - boundary.y_min))
    emit_corners_between(last, total + 1)
    # Corners before the first boundary vertex wrap to the end of the walk.
    for k, cp in enumerate(corner_params):
        if not emitted[k] and cp < first_param:
            emitted[k] = True
            out.append(PolyVertex("corner", "", None, "", corners[k]))

    ring_to_poly = {v.ring_index: i for i, v in enumerate(out)
                    if v.ring_index is not None}
    return out, ring_to_poly


@dataclass
class TautVertex:
    pos: PlanePoint
    ref: str | None       # obstacle entity id, None for trace scaffolding
    side: int             # +1 obstacle held on the path's left, -1 right
    wrap: float = 0.0     # angle wrapped around the obstacle, in the side's
                          # direction; > pi marks a reflex wrap that must
                          # survive shortening even when locally slack


def obstacle_points(env) -> list[tuple[str, PlanePoint]]:
    """Entity points as (id, position) obstacles for taut shortening.

    Entities sitting on the boundary are excluded: the region is convex, so
    an interior path can never wind around a point on its wall, and keeping
    them would trap boundary-hugging traces in zero-width slivers.
    """
    return [(e.id, e.center) for e in env.entities
            if not env.boundary.on_edge(e.center)]


def _convex_chain(a: PlanePoint, b: PlanePoint, side: float,
                  blocked: list[tuple[str, PlanePoint]]) -> list[tuple[str, PlanePoint]]:
    """Hull chain from a to b over `blocked`, bulging to `side` of a->b.

    Points are ordered along a->b; the chain is the convex hull facing the
    requested side, keeping collinear points so near-degenerate captures
    stay in a stable order.
    """
    length = math.hypot(b.x - a.x, b.y - a.y)
    tx, ty = (b.x - a.x) / length, (b.y - a.y) / length
    # Local frame: u along a->b, w positive toward the requested side.
    nx, ny = -ty * side, tx * side

    def local(p: PlanePoint) -> tuple[float, float]:
        dx, dy = p.x - a.x, p.y - a.y
        return dx * tx + dy * ty, dx * nx + dy * ny

    items = [("__a__", a, 0.0, 0.0), ("__b__", b, length, 0.0)]
    items += [(ref, p, *local(p)) for ref, p in blocked]
    items.sort(key=lambda it: (it[2], -it[3]))
    eps = 1e-9 * max(1.0, length)
    chain: list[tuple] = []
    for it in items:
        # Keep the hull facing +w; middles on or below a hull edge are
        # grazed by the shortened path and dropped.
        while len(chain) >= 2:
            (u1, w1), (u2, w2) = chain[-2][2:], chain[-1][2:]
            if (u2 - u1) * (it[3] - w1) - (w2 - w1) * (it[2] - u1) >= -eps:
                chain.pop()
            else:
                break
        chain.append(it)
    return [(ref, p) for ref, p, _, _ in chain if ref not in ("__a__", "__b__")]


_TWO_PI = 2 * math.pi


def _effective_base(pts: list[TautVertex], i: int) -> float | None:
    """Wrap angle of bend i in its held side's direction, in [0, 2*pi).

    Neighbors coinciding with the bend are skipped so the incoming and
    outgoing rays are well defined; None when no such neighbors exist.
    """
    v = pts[i]
    j = i - 1
    while j > 0 and _close(pts[j].pos, v.pos):
        j -= 1
    k = i + 1
    while k < len(pts) - 1 and _close(pts[k].pos, v.pos):
        k += 1
    a, b = pts[j], pts[k]
    if _close(a.pos, v.pos) or _close(b.pos, v.pos):
        return None
    u_in = math.atan2(v.pos.y - a.pos.y, v.pos.x - a.pos.x)
    u_out = math.atan2(b.pos.y - v.pos.y, b.pos.x - v.pos.x)
    return (v.side * (u_out - u_in)) % _TWO_PI


def _refresh_wrap(pts: list[TautVertex], i: int,
                  estimate: float | None = None) -> None:
    """Re-anchor a held bend's wrap angle after its neighborhood changed.

    A single shortening step rotates a neighbor ray by less than a half
    turn, so the branch nearest the previous wrap value is always the
    continuous one."""
    if not (0 < i < len(pts) - 1):
        return
    v = pts[i]
    if v.ref is None:
        return
    base = _effective_base(pts, i)
    if base is None:
        return
    prev = v.wrap if estimate is None else estimate
    v.wrap = base + _TWO_PI * round((prev - base) / _TWO_PI)


def _sweep_polyline(pts: list[TautVertex], center: PlanePoint,
                    zero: int | None = None, eps: float = 1e-6) -> float:
    """Signed angle the polyline sweeps around center.

    Held bends are replaced by an eps-radius detour around their obstacle
    swept by their wrap angle, so the value is exact for the class the
    polyline represents.  With ``zero`` set, that bend's detour is kept at
    its entry contact without sweeping, removing its arc term.
    """
    sample: list[tuple[float, float]] = []
    for i, v in enumerate(pts):
        if v.ref is None or i == 0 or i == len(pts) - 1:
            sample.append((v.pos.x, v.pos.y))
            continue
        w = 0.0 if i == zero else v.wrap
        j = i - 1
        while j > 0 and _close(pts[j].pos, v.pos):
            j -= 1
        a = pts[j].pos
        u_in = math.atan2(v.pos.y - a.y, v.pos.x - a.x)
        phi0 = u_in - v.side * math.pi / 2
        n = max(4, int(abs(w) * 8) + 1)
        for k in range(n + 1):
            phi = phi0 + v.side * w * k / n
            sample.append((v.pos.x + eps * math.cos(phi),
                           v.pos.y + eps * math.sin(phi)))
    total = 0.0
    for (x0, y0), (x1, y1) in zip(sample, sample[1:]):
        ax, ay = x0 - center.x, y0 - center.y
        bx, by = x1 - center.x, y1 - center.y
        total += math.atan2(ax * by - ay * bx, ax * bx + ay * by)
    return total


def pull_taut(trace: list[TautVertex],
              obstacles: list[tuple[str, PlanePoint]],
              max_rounds: int = 10000) -> list[TautVertex]:
    """Shorten a polyline homotopically among point obstacles.

    Scaffolding vertices (ref None) are dropped freely; obstacle vertices
    may only be detached toward the side their invariant allows, and only
    while their wrap is shallow -- a reflex wrap (more than a half turn)
    pins its bend no matter which side the neighbors fall on.  The result
    alternates straight stretches with binding obstacle bends.
    """
    pts = list(trace)
    for idx in range(1, len(pts) - 1):
        if pts[idx].ref is not None:
            base = _effective_base(pts, idx)
            # Initial bends turn by less than a half wrap either way.
            pts[idx].wrap = (0.0 if base is None
                             else ((base + math.pi) % _TWO_PI) - math.pi)

    # The total angle each obstacle is swept by is a class invariant; it
    # pins every bend's wrap branch exactly, where neighbor-ray continuity
    # alone is ambiguous around hairpins.  The path's own terminals are
    # included too -- a mid-path passage around the net's own endpoint is
    # class content -- but their sweep is measured on the polyline with the
    # endpoint itself trimmed off, since the final ray into the terminal's
    # center is direction-free.
    centers = dict(obstacles)
    own_refs = {ref for ref, p in obstacles
                if _near(p, pts[0].pos) or _near(p, pts[-1].pos)}

    def measure(ref: str) -> float:
        c = centers[ref]
        if ref not in own_refs:
            return _sweep_polyline(pts, c)
        lo, hi = 0, len(pts)
        while hi - lo > 1 and pts[hi - 1].ref is None and _near(pts[hi - 1].pos, c):
            hi -= 1
        while hi - lo > 1 and pts[lo].ref is None and _near(pts[lo].pos, c):
            lo += 1
        return _sweep_polyline(pts[lo:hi], c)

    target = {ref: measure(ref) for ref in centers}

    def refresh(idx: int, estimate: float | None = None) -> None:
        _refresh_wrap(pts, idx, estimate)
        if not (0 < idx < len(pts) - 1):
            return
        v = pts[idx]
        if v.ref is None or v.ref not in target:
            return
        base = _effective_base(pts, idx)
        if base is None:
            return
        # The branch is pinned by the sweep invariant: exactly one choice of
        # wrap = base + 2*pi*k reproduces the obstacle's target sweep.
        seed = v.wrap
        k0 = round((seed - base) / _TWO_PI)
        goal = target[v.ref]
        for k in sorted(range(k0 - 4, k0 + 5), key=lambda k: abs(k - k0)):
            v.wrap = base + _TWO_PI * k
            if abs(measure(v.ref) - goal) < 1e-6:
                return
        v.wrap = seed      # no branch matches; keep the continuity estimate

    def remove(idx: int) -> None:
        del pts[idx]
        refresh(idx - 1)
        refresh(idx)

    rounds = 0
    changed = True
    while changed:
        rounds += 1
        if rounds > max_rounds:
            raise TautError("taut shortening failed to converge")
        changed = False
        i = 1
        while i < len(pts) - 1:
            a, v, b = pts[i - 1], pts[i], pts[i + 1]
            if (v.ref is not None
                    and ((i == 1 and _near(v.pos, pts[0].pos))
                         or (i == len(pts) - 2 and _near(v.pos, pts[-1].pos)))):
                # A wind held directly at the path's own endpoint retracts
                # into the anchor point, whatever its wrap.  That is a real
                # class change around the terminal, so its sweep target is
                # re-anchored to the retracted polyline.
                ref = v.ref
                del pts[i]
                _refresh_wrap(pts, i - 1)
                _refresh_wrap(pts, i)
                if ref in own_refs:
                    target[ref] = measure(ref)
                refresh(i - 1)
                refresh(i)
                changed = True
                i = max(1, i - 1)
                continue
            if _close(a.pos, v.pos) or _close(v.pos, b.pos):
                nb_i = i - 1 if _close(a.pos, v.pos) else i + 1
                nb = pts[nb_i]
                if v.ref is None:
                    remove(i)
                elif nb.ref == v.ref:
                    if nb.side == v.side:
                        # Consecutive touches merge into one wrap.
                        merged = v.wrap + nb.wrap
                        del pts[i]
                        refresh(min(i, nb_i), estimate=merged)
                        refresh(i - 1)
                        refresh(i)
                    else:
                        # Opposite-side touches of one entity offset each
                        # other; any residual winding stays on one bend.
                        net = v.wrap - nb.wrap      # in v's orientation
                        lo = min(i, nb_i)
                        if abs(net) < 1e-9:
                            del pts[max(i, nb_i)]
                            del pts[lo]
                            refresh(lo - 1)
                            refresh(lo)
                        else:
                            gone = nb_i if net > 0 else i
                            del pts[gone]
                            refresh(lo, estimate=abs(net))
                            refresh(lo - 1)
                            refresh(lo + 1)
                elif nb.ref is None and 0 < nb_i < len(pts) - 1:
                    remove(nb_i)
                else:
                    remove(i)
                changed = True
                i = max(1, i - 1)
                continue
            if _close(a.pos, b.pos):
                # Out-and-back spike.  The excursion closes into a loop whose
                # winding around a held obstacle is side*(wrap + pi) / 2pi; a
                # zero-winding hairpin slides off, any hooked one stays.
                if v.ref is None or abs(v.wrap + math.pi) < 1e-6:
                    remove(i)
                    changed = True
                    i = max(1, i - 1)
                else:
                    i += 1
                continue
            s_tri = _tri2(a.pos, v.pos, b.pos)
            s = 1.0 if s_tri >= 0 else -1.0
            ab = math.hypot(b.pos.x - a.pos.x, b.pos.y - a.pos.y)
            eps = 1e-7 * max(ab, 1.0)
            v_side = _tri2(a.pos, b.pos, v.pos)   # >0: v left of a->b
            if v.ref is not None:
                # The bend is binding when its obstacle is held on the side
                # of the path the straightening would sweep across, which is
                # the opposite side of the straightened segment.
                binding = (v.side * v_side < -eps)
                if not binding and abs(v.wrap) > math.pi:
                    i += 1      # reflex wrap: the bend cannot be shortcut
                    continue
            blocked: list[tuple[str, PlanePoint]] = []
            for ref, p in obstacles:
                if (_close(p, a.pos) or _close(p, v.pos) or _close(p, b.pos)):
                    continue
                if abs(_tri2(a.pos, b.pos, p)) <= eps:
                    # The straightened segment grazes this point exactly; the
                    # wrap side is degenerate and the point is passed over.
                    continue
                if (s * _tri2(a.pos, v.pos, p) >= -eps
                        and s * _tri2(v.pos, b.pos, p) >= -eps
                        and s * _tri2(b.pos, a.pos, p) >= -eps):
                    blocked.append((ref, p))
            if v.ref is not None and v.side * v_side < -eps:
                blocked.append((v.ref, v.pos))
            if not blocked:
                remove(i)
                changed = True
                if i > 1:
                    i -= 1
                continue
            side = 1.0 if v_side >= 0 else -1.0
            chain = _convex_chain(a.pos, b.pos, side, blocked)
            if not chain:
                remove(i)
                changed = True
                if i > 1:
                    i -= 1
                continue
            if (len(chain) == 1 and chain[0][0] == v.ref
                    and _close(chain[0][1], v.pos)):
                i += 1      # already taut at this bend
                continue
            hold = -1 if side > 0 else 1
            pts[i:i + 1] = [TautVertex(p, ref, hold) for ref, p in chain]
            for idx in range(i, i + len(chain)):
                base = _effective_base(pts, idx)
                pts[idx].wrap = (0.0 if base is None
                                 else ((base + math.pi) % _TWO_PI) - math.pi)
                # A re-captured bend may carry winding beyond the principal
                # branch; the sweep invariant restores it exactly.
                refresh(idx)
            refresh(i - 1)
            refresh(i + len(chain))
            changed = True
            i += len(chain)
    return pts
