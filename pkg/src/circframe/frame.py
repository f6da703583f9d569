"""The cut transformation and the Circular Frame.

Cutting the bounded plane along the forest edges turns every start disk, end
disk, tree edge and boundary anchor into points on one combined boundary.
The frame stores that cyclic order; routed paths live on it as non-crossing
chords.  Tree-edge point pairs act as tunnels between slices (the faces of
the chord arrangement), and slice orders around a tunnel decide which slices
recombine when the cut is glued shut.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .forest import Forest, ForestEdge, ForestNode
from .geometry import Environment, PlanePoint

SIDE_A = "A"
SIDE_B = "B"


class FrameError(RuntimeError):
    pass


@dataclass(frozen=True)
class FrameVertex:
    kind: str           # "start" | "end" | "tree" | "anchor"
    ref: str            # entity id / anchor id for tree: edge id as str
    ordinal: int        # copy ordinal for entities; 0 otherwise
    side: str           # SIDE_A/SIDE_B for tree points and anchors; "" otherwise
    position_hint: PlanePoint

    @property
    def is_entity(self) -> bool:
        return self.kind in ("start", "end")

    @property
    def is_tree(self) -> bool:
        return self.kind == "tree"

    def label(self) -> str:
        if self.is_entity:
            return f"{self.ref}" + ("'" * self.ordinal)
        mark = "" if self.side == SIDE_A else "'"
        return f"{'r' if self.is_tree else ''}{self.ref}{mark}"


@dataclass
class TunnelInfo:
    edge_id: int
    vertex_a: int            # ring index of the side-A tree point
    vertex_b: int            # ring index of the side-B tree point
    from_a: str              # forest node ref the side-A walk departs from
    to_a: str                # forest node ref the side-A walk arrives at
    deep_ref: str            # deeper endpoint (the pivot entity / node ref)
    shallow_ref: str


@dataclass
class Frame:
    ring: list[FrameVertex]
    tunnels: dict[int, TunnelInfo]
    anchor_pairs: dict[str, tuple[int, int]]   # anchor ref -> (ring idx A, ring idx B)
    corners: list[PlanePoint]
    env: Optional[Environment] = None
    forest: Optional[Forest] = None

    def __len__(self) -> int:
        return len(self.ring)

    def entity_copies(self, entity_id: str) -> list[int]:
        return [i for i, v in enumerate(self.ring)
                if v.is_entity and v.ref == entity_id]

    def vertex_index(self, kind: str, ref: str, ordinal: int = 0,
                     side: str = "") -> int:
        for i, v in enumerate(self.ring):
            if (v.kind, v.ref, v.ordinal, v.side) == (kind, ref, ordinal, side):
                return i
        raise KeyError((kind, ref, ordinal, side))

    def to_json(self) -> str:
        return json.dumps({"ring": [v.label() for v in self.ring]}, indent=2)


def _next_edge_clockwise(forest: Forest, node: ForestNode,
                         incoming: ForestEdge) -> ForestEdge:
    """Next edge around `node`, sweeping clockwise from the reversed incoming
    direction.  This keeps the cut region on the walk's left."""
    incident = forest.adjacency[node.ref]
    if len(incident) == 1:
        return incident[0]
    origin = node.position
    back = incoming.other(node).position
    ang_in = math.atan2(back.y - origin.y, back.x - origin.x)

    def key(e: ForestEdge) -> float:
        p = e.other(node).position
        ang = math.atan2(p.y - origin.y, p.x - origin.x)
        delta = (ang_in - ang) % (2 * math.pi)
        return delta if delta > 1e-12 else 2 * math.pi
    return min(incident, key=key)


def cut(env: Environment, forest: Forest) -> Frame:
    """Cut the plane along the forest edges and return the Circular Frame.

    The ring is the counter-clockwise boundary walk of the cut region:
    along the rectangle, detouring around each anchored tree as it is met.
    """
    for e in forest.edges:
        if e.a.ref not in forest.nodes or e.b.ref not in forest.nodes:
            raise FrameError(f"edge {e.edge_id} references unknown nodes")

    boundary = env.boundary
    events: list[tuple[float, str, object]] = []
    for ent in env.entities:
        if boundary.on_edge(ent.center):
            events.append((boundary.perimeter_parameter(ent.center), "entity", ent))
    anchor_edge: dict[str, ForestEdge] = {}
    for anchor in forest.anchors:
        incident = forest.adjacency[anchor.ref]
        if len(incident) != 1:
            raise FrameError(f"anchor {anchor.ref} must carry exactly one edge")
        anchor_edge[anchor.ref] = incident[0]
        events.append((boundary.perimeter_parameter(anchor.position), "anchor", anchor))
    events.sort(key=lambda ev: (ev[0], ev[1]))

    ring: list[FrameVertex] = []
    tunnels: dict[int, TunnelInfo] = {}
    anchor_pairs: dict[str, tuple[int, int]] = {}
    copy_counts: dict[str, int] = {}
    side_seen: dict[int, int] = {}
    side_meta: dict[tuple[int, str], tuple[int, str, str]] = {}

    def emit_tree_point(edge: ForestEdge, from_node: ForestNode) -> None:
        count = side_seen.get(edge.edge_id, 0)
        side = SIDE_A if count == 0 else SIDE_B
        if count > 1:
            raise FrameError(f"edge {edge.edge_id} traversed more than twice")
        side_seen[edge.edge_id] = count + 1
        mid = PlanePoint((edge.a.position.x + edge.b.position.x) / 2,
                         (edge.a.position.y + edge.b.position.y) / 2)
        ring.append(FrameVertex("tree", str(edge.edge_id), 0, side, mid))
        side_meta[(edge.edge_id, side)] = (
            len(ring) - 1, from_node.ref, edge.other(from_node).ref)

    def emit_entity_copy(ent_id: str) -> None:
        ordinal = copy_counts.get(ent_id, 0)
        copy_counts[ent_id] = ordinal + 1
        ent = env.entity(ent_id)
        ring.append(FrameVertex(ent.kind, ent_id, ordinal, "", ent.center))

    def walk_tree(anchor: ForestNode) -> None:
        edge = anchor_edge[anchor.ref]
        node = anchor
        while True:
            emit_tree_point(edge, node)
            node = edge.other(node)
            if node.ref == anchor.ref:
                break
            emit_entity_copy(node.ref)
            edge = _next_edge_clockwise(forest, node, edge)

    for _, kind, payload in events:
        if kind == "entity":
            ent = payload
            ring.append(FrameVertex(ent.kind, ent.id, 0, "", ent.center))
            copy_counts[ent.id] = 1
        else:
            anchor = payload
            ring.append(FrameVertex("anchor", anchor.ref, 0, SIDE_A, anchor.position))
            idx_a = len(ring) - 1
            walk_tree(anchor)
            ring.append(FrameVertex("anchor", anchor.ref, 0, SIDE_B, anchor.position))
            anchor_pairs[anchor.ref] = (idx_a, len(ring) - 1)

    for edge in forest.edges:
        if side_seen.get(edge.edge_id, 0) != 2:
            raise FrameError(f"edge {edge.edge_id} not traversed twice "
                             "(dangling forest component)")
        ia, fa, ta = side_meta[(edge.edge_id, SIDE_A)]
        ib, _, _ = side_meta[(edge.edge_id, SIDE_B)]
        deep = forest.deeper_endpoint(edge)
        shallow = edge.other(deep)
        tunnels[edge.edge_id] = TunnelInfo(
            edge.edge_id, ia, ib, fa, ta, deep.ref, shallow.ref)

    # Sanity: every entity of tree degree d got d copies.
    for ref in forest.nodes:
        node = forest.nodes[ref]
        if node.is_anchor:
            continue
        if copy_counts.get(ref, 0) != forest.tree_degree(ref):
            raise FrameError(f"entity {ref} emitted {copy_counts.get(ref, 0)} "
                             f"copies, expected {forest.tree_degree(ref)}")

    return Frame(ring=ring, tunnels=tunnels, anchor_pairs=anchor_pairs,
                 corners=list(boundary.corners), env=env, forest=forest)


def glue(frame: Frame) -> dict[str, list[tuple[str, int]]]:
    """Collapse tunnel and anchor pairs of an unrouted frame back into the
    forest's combinatorial adjacency.

    Returns, per forest node ref, the rotational list of incident edge ids
    (paired with a traversal marker) as reconstructed from the ring.  Each
    edge id appears exactly twice overall and the per-node cyclic order
    matches the forest's rotation system.
    """
    rotations: dict[str, list[tuple[str, int]]] = {}
    ring = frame.ring
    m = len(ring)
    for i, v in enumerate(ring):
        if not (v.is_entity or v.kind == "anchor"):
            continue
        ref = v.ref
        nbrs: list[tuple[str, int]] = []
        for j, step in ((i - 1) % m, -1), ((i + 1) % m, +1):
            w = ring[j]
            if w.is_tree:
                nbrs.append((w.side, int(w.ref)))
        if nbrs:
            key = ref if v.kind == "anchor" else f"{ref}#{v.ordinal}"
            rotations[key] = nbrs
    return rotations


@dataclass(frozen=True)
class ChordEnd:
    end_id: int
    vertex: int      # ring index
    chord_id: int


@dataclass
class Chord:
    chord_id: int
    net_index: int
    end_ids: tuple[int, int]
    creation_order: int


@dataclass
class Slice:
    slice_id: int
    arcs: list[tuple[int, int]]          # (end_id from, end_id to) refined arcs
    chord_ids: list[int]
    vertex_indices: list[int]            # ring vertices on the boundary walk

    def vertex_labels(self, frame: Frame) -> list[str]:
        return [frame.ring[i].label() for i in self.vertex_indices]


class _Faces:
    """Face decomposition of the current chord arrangement."""

    def __init__(self, rf: "RoutedFrame"):
        frame = rf.frame
        m = len(frame.ring)
        # Refined cyclic order of chord ends: ring order, stacks in arc order.
        seq: list[int] = []
        for v in range(m):
            seq.extend(rf.stacks[v])
        self.seq = seq
        self.pos = {eid: k for k, eid in enumerate(seq)}
        M = len(seq)
        self.slices: list[Slice] = []
        self.face_of_arc: dict[int, int] = {}       # arc k: seq[k] -> seq[k+1]
        self.face_of_vertex_piece: dict[tuple[int, int], int] = {}
        self.face_of_bare_vertex: dict[int, int] = {}

        if M == 0:
            s = Slice(0, [], [], list(range(m)))
            self.slices.append(s)
            for v in range(m):
                self.face_of_bare_vertex[v] = 0
                self.face_of_vertex_piece[(v, 0)] = 0
            return

        # Dangling ends (a path mid-hop) self-partner: they occupy a stack
        # slot but split no face.
        partner = {eid: eid for eid in seq}
        for chord in rf.chords.values():
            e1, e2 = chord.end_ids
            partner[e1] = e2
            partner[e2] = e1

        visited = [False] * M
        for k0 in range(M):
            if visited[k0]:
                continue
            face_id = len(self.slices)
            arcs = []
            chord_ids = []
            k = k0
            while not visited[k]:
                visited[k] = True
                self.face_of_arc[k] = face_id
                nxt_end = self.seq[(k + 1) % M]
                arcs.append((self.seq[k], nxt_end))
                cid = rf.end_chord.get(nxt_end)
                if cid is not None:
                    chord_ids.append(cid)
                k = self.pos[partner[nxt_end]]
            self.slices.append(Slice(face_id, arcs, sorted(set(chord_ids)), []))

        # Assign ring vertices to faces: sweep ring and arcs together.
        arc_start_vertex = [rf.end_vertex[eid] for eid in seq]
        for v in range(m):
            stack = rf.stacks[v]
            if not stack:
                continue
            first = self.pos[stack[0]]
            last = self.pos[stack[-1]]
            # piece p (0-based): before stack[p]; piece len(stack): after last.
            for p in range(len(stack) + 1):
                if p == 0:
                    arc_k = (first - 1) % M
                else:
                    arc_k = self.pos[stack[p - 1]]
                self.face_of_vertex_piece[(v, p)] = self.face_of_arc[arc_k]

        # Bare vertices live inside the arc that spans them.  An arc between
        # stack-consecutive ends at one vertex is a zero-length fan piece and
        # spans nothing; an arc from a stack's last end back around to its
        # first spans the whole rest of the ring.
        def zero_span(ea: int, eb: int) -> bool:
            va = rf.end_vertex[ea]
            if va != rf.end_vertex[eb]:
                return False
            stack = rf.stacks[va]
            return stack.index(ea) + 1 == stack.index(eb)

        if any(not rf.stacks[v] for v in range(m)):
            for k in range(M):
                ea = seq[k]
                eb = seq[(k + 1) % M]
                va = rf.end_vertex[ea]
                vb = rf.end_vertex[eb]
                if zero_span(ea, eb):
                    continue
                face = self.face_of_arc[k]
                v = (va + 1) % m
                steps = 0
                while v != vb and steps <= m:
                    if not rf.stacks[v]:
                        self.face_of_bare_vertex[v] = face
                        self.face_of_vertex_piece[(v, 0)] = face
                    v = (v + 1) % m
                    steps += 1

        # Boundary walk vertices per slice (for inspection and tests).
        for s in self.slices:
            seen: list[int] = []
            for (ea, eb) in s.arcs:
                va = rf.end_vertex[ea]
                vb = rf.end_vertex[eb]
                if not seen or seen[-1] != va:
                    seen.append(va)
                if not zero_span(ea, eb):
                    v = (va + 1) % m
                    steps = 0
                    while v != vb and steps <= m:
                        if not rf.stacks[v]:
                            seen.append(v)
                        v = (v + 1) % m
                        steps += 1
                if not seen or seen[-1] != vb:
                    seen.append(vb)
            dedup: list[int] = []
            for v in seen:
                if not dedup or dedup[-1] != v:
                    dedup.append(v)
            if len(dedup) > 1 and dedup[0] == dedup[-1]:
                dedup.pop()
            s.vertex_indices = dedup


class RoutedFrame:
    """A frame plus a growing non-crossing chord set.

    Single-writer: chords are only added, never moved.  Slice structure is
    recomputed lazily after each insertion.
    """

    def __init__(self, frame: Frame):
        self.frame = frame
        self.chords: dict[int, Chord] = {}
        self.stacks: list[list[int]] = [[] for _ in frame.ring]
        self.end_vertex: dict[int, int] = {}
        self.end_chord: dict[int, int] = {}
        self.net_chords: dict[int, list[int]] = {}
        self._next_end = 0
        self._next_chord = 0
        self._faces: Optional[_Faces] = None

    # -- construction ------------------------------------------------------

    def add_chord(self, spec_a: tuple[int, int], spec_b: tuple[int, int],
                  net_index: int) -> Chord:
        """Insert a chord; each spec is (ring vertex, fan piece index).

        The piece index is the 0-based position in the vertex's end stack at
        which the new end is inserted (piece p lies between stack entries
        p-1 and p).  Both pieces must currently border the same slice.
        """
        fa = self.face_of_piece(*spec_a)
        fb = self.face_of_piece(*spec_b)
        if fa != fb:
            raise FrameError(
                f"chord endpoints lie in different slices ({fa} vs {fb})")
        chord_id = self._next_chord
        self._next_chord += 1
        ends = []
        for vertex, piece in (spec_a, spec_b):
            eid = self._next_end
            self._next_end += 1
            self.stacks[vertex].insert(piece, eid)
            self.end_vertex[eid] = vertex
            self.end_chord[eid] = chord_id
            ends.append(eid)
        chord = Chord(chord_id, net_index, (ends[0], ends[1]), chord_id)
        self.chords[chord_id] = chord
        self.net_chords.setdefault(net_index, []).append(chord_id)
        self._faces = None
        return chord

    def place_end(self, vertex: int, piece: int) -> int:
        """Insert a dangling chord end; it occupies its stack slot (keeping
        tunnel orders in sync) but splits no face until its chord is
        finished."""
        eid = self._next_end
        self._next_end += 1
        self.stacks[vertex].insert(piece, eid)
        self.end_vertex[eid] = vertex
        self._faces = None
        return eid

    def finish_chord(self, end_a: int, spec_b: tuple[int, int],
                     net_index: int) -> Chord:
        """Complete a dangling end into a chord ending at spec_b."""
        if end_a in self.end_chord:
            raise FrameError(f"end {end_a} already belongs to a chord")
        fa = self.face_of_end(end_a)
        fb = self.face_of_piece(*spec_b)
        if fa != fb:
            raise FrameError(
                f"chord endpoints lie in different slices ({fa} vs {fb})")
        vertex, piece = spec_b
        eid = self._next_end
        self._next_end += 1
        self.stacks[vertex].insert(piece, eid)
        self.end_vertex[eid] = vertex
        chord_id = self._next_chord
        self._next_chord += 1
        chord = Chord(chord_id, net_index, (end_a, eid), chord_id)
        self.chords[chord_id] = chord
        self.end_chord[end_a] = chord_id
        self.end_chord[eid] = chord_id
        self.net_chords.setdefault(net_index, []).append(chord_id)
        self._faces = None
        return chord

    def face_of_end(self, end_id: int) -> int:
        """Slice bordering a dangling end (both sides agree)."""
        if end_id in self.end_chord:
            raise FrameError(f"end {end_id} is not dangling")
        v = self.end_vertex[end_id]
        return self.face_of_piece(v, self.stacks[v].index(end_id))

    # -- face / slice queries ---------------------------------------------

    def faces(self) -> _Faces:
        if self._faces is None:
            self._faces = _Faces(self)
        return self._faces

    def slices(self) -> list[Slice]:
        return self.faces().slices

    def face_of_piece(self, vertex: int, piece: int) -> int:
        f = self.faces()
        if not self.stacks[vertex]:
            if piece != 0:
                raise FrameError(f"vertex {vertex} has no chord ends")
            return f.face_of_bare_vertex[vertex]
        try:
            return f.face_of_vertex_piece[(vertex, piece)]
        except KeyError:
            raise FrameError(f"vertex {vertex} has no fan piece {piece}")

    def face_of_bare_vertex(self, vertex: int) -> int:
        if self.stacks[vertex]:
            raise FrameError(f"vertex {vertex} already carries chord ends")
        return self.faces().face_of_bare_vertex[vertex]

    def tunnel_side_vertex(self, edge_id: int, side: str) -> int:
        t = self.frame.tunnels[edge_id]
        return t.vertex_a if side == SIDE_A else t.vertex_b

    def piece_count(self, vertex: int) -> int:
        return len(self.stacks[vertex]) + 1

    def order_of_piece(self, vertex: int, piece: int) -> int:
        """1-based slice order of a fan piece at a tunnel-side vertex.

        Side-A points count against the arc order (anti-clockwise from the
        ring), side-B points count with it; matched orders glue correctly.
        """
        side = self.frame.ring[vertex].side
        k = len(self.stacks[vertex])
        if side == SIDE_A:
            return (k + 1) - piece
        return piece + 1

    def piece_of_order(self, vertex: int, order: int) -> int:
        side = self.frame.ring[vertex].side
        k = len(self.stacks[vertex])
        if not 1 <= order <= k + 1:
            raise FrameError(f"order {order} out of range at vertex {vertex}")
        if side == SIDE_A:
            return (k + 1) - order
        return order - 1

    def slice_order(self, slice_id: int, vertex: int) -> int:
        """o(slice, tunnel point): 1-based order of the slice around the
        tree-edge point at ring index `vertex`."""
        v = self.frame.ring[vertex]
        if not v.is_tree:
            raise FrameError(f"ring vertex {vertex} is not a tree-edge point")
        for piece in range(self.piece_count(vertex)):
            if self.face_of_piece(vertex, piece) == slice_id:
                return self.order_of_piece(vertex, piece)
        raise FrameError(f"slice {slice_id} not adjacent to vertex {vertex}")

    def tunnel_adjacency(self) -> list[tuple[int, int, int, int]]:
        """Order-matched slice adjacencies: (edge_id, order, face_A, face_B)."""
        out = []
        for edge_id in sorted(self.frame.tunnels):
            t = self.frame.tunnels[edge_id]
            ka = len(self.stacks[t.vertex_a])
            kb = len(self.stacks[t.vertex_b])
            if ka != kb:
                raise FrameError(f"tunnel {edge_id} stacks out of sync")
            for order in range(1, ka + 2):
                fa = self.face_of_piece(t.vertex_a, self.piece_of_order(t.vertex_a, order))
                fb = self.face_of_piece(t.vertex_b, self.piece_of_order(t.vertex_b, order))
                out.append((edge_id, order, fa, fb))
        return out

    # -- chord geometry on the circle ---------------------------------------

    def refined_position(self, end_id: int) -> int:
        return self.faces().pos[end_id]

    def chords_cross(self, c1: Chord, c2: Chord) -> bool:
        return chords_cross(self, c1, c2)

    def to_json(self) -> str:
        doc = {
            "ring": [v.label() for v in self.frame.ring],
            "chords": [
                {"net": c.net_index,
                 "ends": [{"vertex": self.end_vertex[e],
                           "rank": self.stacks[self.end_vertex[e]].index(e)}
                          for e in c.end_ids]}
                for c in self.chords.values()],
        }
        return json.dumps(doc, indent=2)


def chords_cross(rf: RoutedFrame, c1: Chord, c2: Chord) -> bool:
    """True iff the chords interleave in the refined cyclic order."""
    if c1.chord_id == c2.chord_id:
        return False
    a1, a2 = (rf.refined_position(e) for e in c1.end_ids)
    b1, b2 = (rf.refined_position(e) for e in c2.end_ids)
    lo, hi = min(a1, a2), max(a1, a2)
    inside_b1 = lo < b1 < hi
    inside_b2 = lo < b2 < hi
    return inside_b1 != inside_b2


def empty_routed_frame(frame: Frame) -> RoutedFrame:
    return RoutedFrame(frame)
