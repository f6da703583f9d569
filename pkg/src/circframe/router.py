"""Net connection inside the Circular Frame.

Each net is connected by a chord when its chosen start and end copies share
a slice, and otherwise by a chain of chords hopping through tree-edge
tunnels.  Every tunnel passage is inserted at matching slice orders on both
sides so that gluing the cut back together recombines the correct slices.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .forest import Forest
from .frame import SIDE_A, SIDE_B, Frame, RoutedFrame
from .geometry import Net, PlanePoint
from .taut import (
    PolyVertex,
    TautVertex,
    build_polygon,
    obstacle_points,
    pull_taut,
)


class RoutingError(RuntimeError):
    """Internal consistency violation; valid inputs never raise."""


@dataclass(frozen=True)
class RoutingStrategy:
    copy_selection: str = "min-hops"                # see below
    tunnel_selection: str = "bfs-min-tunnels"       # or "paper-greedy"
    net_order: str = "given"                        # or "by-index"

    def __post_init__(self):
        if self.copy_selection not in ("min-hops", "nearest-ring-distance",
                                       "first-listed"):
            raise ValueError(self.copy_selection)
        if self.tunnel_selection not in ("bfs-min-tunnels", "paper-greedy"):
            raise ValueError(self.tunnel_selection)
        if self.net_order not in ("given", "by-index"):
            raise ValueError(self.net_order)


@dataclass(frozen=True)
class TopologicalClass:
    net_index: int
    pivots: tuple[str, ...]        # entity ids, first = start, last = end
    orientations: tuple[int, ...]  # +1 anti-clockwise, -1 clockwise, 0 at ends
    heights: tuple[int, ...]
    # Drawing-only bends: (slot, entity, orientation, height) for entities the
    # connection passes close to without wrapping.  The bend sits on the leg
    # entering pivot index `slot` and keeps the drawn path outside the arcs
    # stacked around that entity; it carries no class content.
    clearances: tuple[tuple[int, str, int, int], ...] = ()
    # Turn angle at each pivot (radians, in the orientation's direction);
    # zero at the endpoints.  Guides the drawn arc's sweep branch.
    wraps: tuple[float, ...] = ()

    def __post_init__(self):
        if not (len(self.pivots) == len(self.orientations) == len(self.heights) >= 2):
            raise ValueError("pivot/orientation/height lists out of step")
        if self.orientations[0] != 0 or self.orientations[-1] != 0:
            raise ValueError("endpoint orientations must be 0")
        if self.heights[0] != 0 or self.heights[-1] != 0:
            raise ValueError("endpoint heights must be 0")


def _ring_distance(i: int, j: int, m: int) -> int:
    d = abs(i - j)
    return min(d, m - d)


def _select_copies(rf: RoutedFrame, net: Net, strategy: RoutingStrategy) -> tuple[int, int]:
    frame = rf.frame
    s_copies = frame.entity_copies(net.start_id)
    t_copies = frame.entity_copies(net.end_id)
    if not s_copies or not t_copies:
        raise RoutingError(f"net {net.index} has no copies on the ring")
    if strategy.copy_selection == "first-listed":
        return s_copies[0], t_copies[0]
    m = len(frame.ring)
    if strategy.copy_selection == "min-hops":
        # Fewest tunnel passages first: a copy pair already sharing a slice
        # needs a single chord and no winding around intermediate entities.
        best = None
        for u in s_copies:
            dist = _bfs_all(rf, rf.face_of_bare_vertex(u))
            for v in t_copies:
                hops = dist.get(rf.face_of_bare_vertex(v))
                if hops is None:
                    continue
                key = (hops, _ring_distance(u, v, m), u, v)
                if best is None or key < best:
                    best = key
        if best is None:
            raise RoutingError(f"net {net.index}: no copy pair is connected")
        return best[2], best[3]
    best = None
    for u in s_copies:
        for v in t_copies:
            key = (_ring_distance(u, v, m), u, v)
            if best is None or key < best:
                best = key
    return best[1], best[2]


def _bfs_first_hop(rf: RoutedFrame, source: int, target: int):
    """Shortest tunnel path in the current slice-adjacency graph.

    Returns (edge_id, order, entry_side) of the first hop, or None if the
    source already equals the target.  Raises if no path exists.
    """
    if source == target:
        return None
    adj: dict[int, list[tuple[int, tuple[int, int, str]]]] = {}
    for edge_id, order, fa, fb in rf.tunnel_adjacency():
        if fa == fb:
            continue
        adj.setdefault(fa, []).append((fb, (edge_id, order, SIDE_A)))
        adj.setdefault(fb, []).append((fa, (edge_id, order, SIDE_B)))
    for nbrs in adj.values():
        nbrs.sort(key=lambda it: (it[1][0], it[1][1], it[1][2]))
    first_hop: dict[int, tuple[int, int, str]] = {}
    seen = {source}
    queue = deque([source])
    while queue:
        f = queue.popleft()
        for g, hop in adj.get(f, []):
            if g in seen:
                continue
            seen.add(g)
            first_hop[g] = first_hop.get(f, hop)
            if g == target:
                return first_hop[g]
            queue.append(g)
    raise RoutingError("no tunnel path between slices (frame inconsistent)")


def _bfs_all(rf: RoutedFrame, source: int) -> dict[int, int]:
    """Tunnel-hop distance from one slice to every reachable slice."""
    adj: dict[int, set[int]] = {}
    for _, _, fa, fb in rf.tunnel_adjacency():
        if fa == fb:
            continue
        adj.setdefault(fa, set()).add(fb)
        adj.setdefault(fb, set()).add(fa)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        f = queue.popleft()
        for g in adj.get(f, ()):
            if g not in dist:
                dist[g] = dist[f] + 1
                queue.append(g)
    return dist


def _bfs_distance(rf: RoutedFrame, source: int, target: int) -> int:
    """Independent shortest tunnel-distance (for property checks)."""
    dist = _bfs_all(rf, source)
    if target not in dist:
        raise RoutingError("no tunnel path between slices")
    return dist[target]


def _greedy_hop(rf: RoutedFrame, cur_face: int, cur_vertex: int,
                visited: set[tuple[int, int, str]]):
    """Closest tunnel point along the slice boundary, by points passed."""
    slc = rf.slices()[cur_face]
    walk = slc.vertex_indices
    if cur_vertex not in walk:
        raise RoutingError("current point not on its slice boundary")
    n = len(walk)
    at = walk.index(cur_vertex)
    best = None
    for idx, v in enumerate(walk):
        vert = rf.frame.ring[v]
        if not vert.is_tree:
            continue
        edge_id = int(vert.ref)
        side = vert.side
        piece = _piece_of_face(rf, v, cur_face)
        order = rf.order_of_piece(v, piece)
        if (edge_id, order, side) in visited:
            continue
        steps = min((idx - at) % n, (at - idx) % n)
        key = (steps, v)
        if best is None or key < best[0]:
            best = (key, (edge_id, order, side))
    if best is None:
        raise RoutingError("no unvisited tunnel point on slice boundary")
    return best[1]


def _piece_of_face(rf: RoutedFrame, vertex: int, face: int) -> int:
    for piece in range(rf.piece_count(vertex)):
        if rf.face_of_piece(vertex, piece) == face:
            return piece
    raise RoutingError(f"face {face} not adjacent to vertex {vertex}")


def route_net(rf: RoutedFrame, net: Net,
              strategy: RoutingStrategy = RoutingStrategy()) -> RoutedFrame:
    """Connect one net with non-crossing chords, tunnelling as needed."""
    if net.index in rf.net_chords:
        raise RoutingError(f"net {net.index} already routed")
    u, v = _select_copies(rf, net, strategy)

    # A hop is atomic: the chord into the tunnel is finished and a dangling
    # exit end is placed at the matching order slot on the other side, so the
    # tunnel stacks stay in sync for every adjacency query.
    cur_end = rf.place_end(u, 0)
    visited: set[tuple[int, int, str]] = set()
    max_hops = 4 * (len(rf.frame.tunnels) + 1) + 4

    for _ in range(max_hops):
        target_face = rf.face_of_bare_vertex(v)
        cur_face = rf.face_of_end(cur_end)
        if cur_face == target_face:
            rf.finish_chord(cur_end, (v, 0), net.index)
            return rf
        if strategy.tunnel_selection == "bfs-min-tunnels":
            hop = _bfs_first_hop(rf, cur_face, target_face)
        else:
            hop = _greedy_hop(rf, cur_face, rf.end_vertex[cur_end], visited)
        edge_id, order, entry_side = hop
        visited.add((edge_id, order, entry_side))
        entry_vertex = rf.tunnel_side_vertex(edge_id, entry_side)
        exit_side = SIDE_B if entry_side == SIDE_A else SIDE_A
        exit_vertex = rf.tunnel_side_vertex(edge_id, exit_side)
        entry_piece = rf.piece_of_order(entry_vertex, order)
        if rf.face_of_piece(entry_vertex, entry_piece) != cur_face:
            raise RoutingError("tunnel entry does not border the current slice")
        exit_piece = rf.piece_of_order(exit_vertex, order)
        rf.finish_chord(cur_end, (entry_vertex, entry_piece), net.index)
        cur_end = rf.place_end(exit_vertex, exit_piece)
    raise RoutingError(f"net {net.index} exceeded {max_hops} tunnel hops")


def route_all(frame: Frame, nets: list[Net],
              strategy: RoutingStrategy = RoutingStrategy()) -> RoutedFrame:
    """Route every net; completion is guaranteed for consistent frames."""
    rf = RoutedFrame(frame)
    ordered = list(nets)
    if strategy.net_order == "by-index":
        ordered.sort(key=lambda net: net.index)
    for net in ordered:
        route_net(rf, net, strategy)
    return rf


@dataclass
class _Pass:
    """One binding bend (wrap) of a taut connection around an entity.

    `pts`/`k` locate the bend inside its net's taut polyline so that wraps of
    a shared entity can be nested against each other geometrically.
    """
    entity: str
    w: int
    pts: list[TautVertex]
    k: int
    height: int = 0

    @property
    def center(self) -> "PlanePoint":
        return self.pts[self.k].pos

    def blocked(self) -> tuple[float, float]:
        """Directions a ray from the entity cannot take without meeting this
        strand locally, as a counter-clockwise (start, sweep) sector.

        The wrap together with its two corridors blocks everything from the
        incoming far direction around the covered side to the outgoing one;
        the complementary gap is where nested strands may pass through.
        """
        c = self.center
        two_pi = 2 * math.pi
        p, q = self.pts[self.k - 1].pos, self.pts[self.k + 1].pos
        a_in = math.atan2(p.y - c.y, p.x - c.x)
        a_out = math.atan2(q.y - c.y, q.x - c.x)
        if self.w == 1:
            start, raw = a_in % two_pi, (a_out - a_in) % two_pi
        else:
            start, raw = a_out % two_pi, (a_in - a_out) % two_pi
        # The far directions only fix the sweep modulo full turns; the bend's
        # tracked wrap angle picks the branch (a reflex wrap blocks all
        # round).  Ties round up so an exact half-turn hairpin blocks the
        # full circle rather than nothing.
        extra = max(0, math.floor((self.pts[self.k].wrap - raw) / two_pi
                                  + 0.5 + 1e-9))
        return start, raw + two_pi * extra


def _net_trace(poly: list[PolyVertex], ring_to_poly: dict[int, int],
               rf: RoutedFrame, net: Net,
               obstacle_map: dict[str, "PlanePoint"] | None = None) -> list[TautVertex]:
    """Initial polyline for a net, tracing its chord chain along the
    cut-region boundary and hopping through each tunnel in turn.

    Entity copies passed by the walk are emitted as held bends at their
    obstacle point: the walk direction fixes the side the path keeps them
    on, so wraps forced by the chain survive shortening exactly, however
    thin the boundary sliver enclosing them is."""
    frame = rf.frame
    chord_ids = rf.net_chords.get(net.index)
    if not chord_ids:
        raise RoutingError(f"net {net.index} not routed")
    chords = [rf.chords[cid] for cid in chord_ids]
    first_v = rf.end_vertex[chords[0].end_ids[0]]
    last_v = rf.end_vertex[chords[-1].end_ids[1]]
    if frame.ring[first_v].ref != net.start_id:
        raise RoutingError(f"net {net.index} chain does not begin at its start")
    if frame.ring[last_v].ref != net.end_id:
        raise RoutingError(f"net {net.index} chain does not end at its end")

    env = frame.env
    m = len(poly)

    def walk_vertex(i: int, step: int) -> TautVertex:
        v = poly[i]
        if (obstacle_map is not None and v.kind == "entity"
                and v.ref in obstacle_map):
            # Ring-increasing walks run anti-clockwise along the region
            # boundary, keeping the entity on the path's right.
            return TautVertex(obstacle_map[v.ref], v.ref,
                              -1 if step > 0 else 1)
        return TautVertex(v.pos, None, 0)

    trace = [TautVertex(env.entity(net.start_id).center, None, 0)]
    prev_chord = None
    for chord in chords:
        if prev_chord is not None:
            entry = frame.ring[rf.end_vertex[prev_chord.end_ids[1]]]
            exit_ = frame.ring[rf.end_vertex[chord.end_ids[0]]]
            if not (entry.is_tree and exit_.is_tree
                    and entry.ref == exit_.ref and entry.side != exit_.side):
                raise RoutingError("chain hop does not match a tunnel pair")
        x = ring_to_poly[rf.end_vertex[chord.end_ids[0]]]
        y = ring_to_poly[rf.end_vertex[chord.end_ids[1]]]
        fwd = (y - x) % m
        step = 1 if fwd <= m - fwd else -1
        i = x
        trace.append(walk_vertex(i, step))
        while i != y:
            i = (i + step) % m
            trace.append(walk_vertex(i, step))
        prev_chord = chord
    trace.append(TautVertex(env.entity(net.end_id).center, None, 0))
    return trace


def _build_passes(pts: list[TautVertex]) -> list[_Pass]:
    passes: list[_Pass] = []
    for k in range(1, len(pts) - 1):
        v = pts[k]
        if v.ref is None:
            raise RoutingError("taut connection retained a scaffold vertex")
        # The held side is the wrap orientation; the bend may turn against
        # it when the wrap is reflex (more than a half turn).
        passes.append(_Pass(v.ref, v.side, pts, k))
    return passes


# Radial distance between stacked arcs of a shared entity in the drawn
# sketch; clearance bends are budgeted on the same grid.
_CLEARANCE_STEP = 0.5


def _add_clearance_bends(pts: list[TautVertex],
                         obstacles: list[tuple[str, "PlanePoint"]],
                         threshold: dict[str, float]) -> bool:
    """Bend the taut polyline through entities it passes too close to.

    A leg running nearer to an entity than the arcs stacked around it would
    be drawn straight through them; inserting a zero-wrap held bend gives the
    leg its own slot in that entity's nesting.  At most one bend per leg per
    call, always the nearest eligible entity, so a bend never hops the path
    over some other entity sitting between the leg and the bend point.
    """
    inserts: list[tuple[int, TautVertex]] = []
    for i in range(len(pts) - 1):
        a, b = pts[i], pts[i + 1]
        dx, dy = b.pos.x - a.pos.x, b.pos.y - a.pos.y
        L2 = dx * dx + dy * dy
        if L2 <= 1e-18:
            continue
        near: list[tuple[float, str, PlanePoint, float]] = []
        flagged = False
        for ref, p in obstacles:
            if ref in (a.ref, b.ref):
                continue
            # Loose match covering the inward nudge of boundary obstacle
            # points, so a leg never bends around its own endpoints.
            if (abs(p.x - a.pos.x) <= 1e-3 and abs(p.y - a.pos.y) <= 1e-3) or \
               (abs(p.x - b.pos.x) <= 1e-3 and abs(p.y - b.pos.y) <= 1e-3):
                continue
            t = ((p.x - a.pos.x) * dx + (p.y - a.pos.y) * dy) / L2
            if not 1e-9 < t < 1 - 1e-9:
                continue
            d = abs((p.x - a.pos.x) * dy - (p.y - a.pos.y) * dx) / math.sqrt(L2)
            lim = threshold.get(ref, 0.0)
            near.append((d, ref, p, lim))
            if d < lim:
                flagged = True
        if not flagged:
            continue
        worst = max(d for d, _, _, lim in near if d < lim)
        d, ref, p, _ = min(n for n in near if n[0] <= worst + 1e-12)
        side = 1 if (p.x - a.pos.x) * dy - (p.y - a.pos.y) * dx < 0 else -1
        # cross > 0 puts the entity left of travel (side +1); the formula
        # above is the negated cross product.
        inserts.append((i + 1, TautVertex(p, ref, side, 0.0)))
    for i, v in reversed(inserts):
        pts.insert(i, v)
    return bool(inserts)


_ANG_TOL = 1e-7


def _in_gap(blocked: tuple[float, float], x: float) -> bool:
    """True when direction x lies strictly in the complement of `blocked`."""
    start, sweep = blocked
    d = (x - start) % (2 * math.pi)
    return sweep + _ANG_TOL < d < 2 * math.pi - _ANG_TOL


def _fits_inside(q: _Pass, p_blocked: tuple[float, float]) -> bool:
    """True when q can nest inside a wrap with the given blocked sector:
    both of q's corridors must leave through the other wrap's gap."""
    c = q.center
    for d in (1, -1):
        f = q.pts[q.k + d].pos
        if not _in_gap(p_blocked, math.atan2(f.y - c.y, f.x - c.x)):
            return False
    return True


def _lane_key(v: TautVertex, d: int) -> tuple[int, float]:
    """Leftness of a strand on a shared corridor, read off its bend at the
    divergence entity when walked in direction d.

    A bend clockwise in the walk direction keeps its entity on the strand's
    right, so the strand travels in the corridor's left lane, and vice
    versa.  Within a lane the deeper wrap hugs the entity closer, which is
    the lane's entity side."""
    if v.side * d < 0:
        return (1, -v.wrap)
    return (0, v.wrap)


def _peel_order(p1: _Pass, d1: int, p2: _Pass, d2: int) -> int:
    """-1 if p1 nests inside p2, +1 otherwise, for two wraps of one entity
    sharing a corridor (same far point on p1's side d1 / p2's side d2).

    The strands are walked along the shared corridor until they diverge;
    lateral order along a shared corridor never changes, so the lane each
    strand takes past the divergence entity decides which of them sits
    closer to the original entity back at the shared wrap.
    """
    seq1 = p1.pts[p1.k:] if d1 == 1 else p1.pts[p1.k::-1]
    seq2 = p2.pts[p2.k:] if d2 == 1 else p2.pts[p2.k::-1]
    # Wrap orientation as seen in walk direction; equal for both strands
    # along a shared corridor.
    w_walk = p1.w * d1
    i = 0
    for _ in range(len(seq1) + len(seq2)):
        end1 = i + 1 >= len(seq1)
        end2 = i + 1 >= len(seq2)
        if end1 or end2:
            # One strand terminates here: it dives to the entity point and
            # is the innermost lane of all, so the other strand's lane says
            # which lateral side it passes on.
            if end1 and end2:
                raise RoutingError("parallel wraps never diverge")
            if end1:
                left_is_1 = seq2[i].side * d2 > 0
            else:
                left_is_1 = seq1[i].side * d1 < 0
            return -1 if left_is_1 == (w_walk == 1) else 1
        n1, n2 = seq1[i + 1].pos, seq2[i + 1].pos
        if abs(n1.x - n2.x) <= 1e-9 and abs(n1.y - n2.y) <= 1e-9:
            i += 1
            continue
        left_is_1 = _lane_key(seq1[i], d1) > _lane_key(seq2[i], d2)
        # At the shared wrap the inner strand is the left one exactly when
        # the wrap runs anti-clockwise in the walk direction.
        inner_is_1 = left_is_1 == (w_walk == 1)
        return -1 if inner_is_1 else 1
    # Identical all the way to a terminal: impossible for distinct nets, and
    # a net never wraps one entity twice with identical surroundings.
    raise RoutingError("parallel wraps never diverge")


def _shared_corridor(p1: _Pass, p2: _Pass) -> tuple[int, int] | None:
    """Directions (d1, d2) along which the two wraps leave their entity
    toward the same far point on the same side, or None."""
    for d1 in (1, -1):
        f1 = p1.pts[p1.k + d1].pos
        for d2 in (1, -1):
            if d1 * p1.w != d2 * p2.w:
                continue    # tangent contacts on opposite sides of the line
            f2 = p2.pts[p2.k + d2].pos
            if abs(f1.x - f2.x) <= 1e-9 and abs(f1.y - f2.y) <= 1e-9:
                return d1, d2
    return None


def _assign_heights(all_passes: list[list[_Pass]]) -> None:
    """Nesting heights per entity: 1 + the longest chain of wraps between a
    wrap and the entity.  A wrap nests inside another when both of its
    corridors leave through the other wrap's gap; strands sharing a corridor
    are ordered by where they peel apart."""
    by_entity: dict[str, list[_Pass]] = {}
    for plist in all_passes:
        for p in plist:
            by_entity.setdefault(p.entity, []).append(p)
    for plist in by_entity.values():
        n = len(plist)
        blocks = [p.blocked() for p in plist]
        preds: list[set[int]] = [set() for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                corridor = _shared_corridor(plist[i], plist[j])
                if corridor is not None:
                    if _peel_order(plist[i], corridor[0],
                                   plist[j], corridor[1]) < 0:
                        preds[j].add(i)
                    else:
                        preds[i].add(j)
                    continue
                in_ji = _fits_inside(plist[j], blocks[i])
                in_ij = _fits_inside(plist[i], blocks[j])
                if in_ji and not in_ij:
                    preds[i].add(j)
                elif in_ij and not in_ji:
                    preds[j].add(i)
                # Both: angularly disjoint, unordered.  Neither: the strands
                # do not interact at this entity.
        h = [1] * n
        for _ in range(n + 1):
            changed = False
            for i in range(n):
                want = 1 + max((h[j] for j in preds[i]), default=0)
                if h[i] < want <= n:
                    h[i] = want
                    changed = True
            if not changed:
                break
        for i, p in enumerate(plist):
            p.height = h[i]


def extract_all_classes(rf: RoutedFrame, forest: Forest,
                        nets: list[Net]) -> list[TopologicalClass]:
    """Topological classes of all routed nets.

    Each net's chord chain is traced along the cut-region boundary and pulled
    taut among the entity points; the surviving bends are the pivots, their
    turn directions the orientations.  Heights are assigned jointly so that
    wraps of a shared entity nest consistently.
    """
    frame = rf.frame
    env = frame.env
    poly, ring_to_poly = build_polygon(frame)
    obstacles = obstacle_points(env)
    # Own terminals count as obstacles too: a mid-path passage around the
    # net's own endpoint is class content, while winds directly at the
    # endpoint retract into it during shortening.
    tauts = [(net, pull_taut(_net_trace(poly, ring_to_poly, rf, net,
                                        dict(obstacles)), obstacles))
             for net in nets]
    # Alternate height assignment with clearance insertion until the drawn
    # arc stacks and the legs threading past them are mutually consistent.
    all_passes: list[list[_Pass]] = []
    for _ in range(12):
        all_passes = [_build_passes(pts) for _, pts in tauts]
        _assign_heights(all_passes)
        # Every entity repels legs out to at least one height step, so a
        # drawn tangent leg can never flip to the wrong side of an entity
        # its taut leg passes narrowly; stacked arcs push it out further.
        threshold: dict[str, float] = {
            ref: env.entity(ref).radius + _CLEARANCE_STEP
            for ref, _ in obstacles}
        for plist in all_passes:
            for p in plist:
                r = (env.entity(p.entity).radius
                     + (p.height + 1) * _CLEARANCE_STEP)
                threshold[p.entity] = max(threshold.get(p.entity, 0.0), r)
        changed = [_add_clearance_bends(pts, obstacles, threshold)
                   for _, pts in tauts]
        if not any(changed):
            break
    out = []
    for (net, _), plist in zip(tauts, all_passes):
        pivots, orients, heights, wraps = [net.start_id], [0], [0], [0.0]
        clearances = []
        for p in plist:
            if p.pts[p.k].wrap < 1e-7:
                clearances.append((len(pivots), p.entity, p.w, p.height))
            else:
                pivots.append(p.entity)
                orients.append(p.w)
                heights.append(p.height)
                wraps.append(p.pts[p.k].wrap)
        out.append(TopologicalClass(net.index,
                                    (*pivots, net.end_id),
                                    (*orients, 0),
                                    (*heights, 0),
                                    tuple(clearances),
                                    (*wraps, 0.0)))
    return out


def extract_topological_class(rf: RoutedFrame, forest: Forest,
                              net: Net) -> TopologicalClass:
    """Class of a single net.

    Heights only account for this net's own wraps; extract routed nets
    together with `extract_all_classes` when sketching several paths.
    """
    return extract_all_classes(rf, forest, [net])[0]
