"""Boundary-anchored non-crossing spanning forest construction.

Interior entities are connected by a planar forest whose every tree touches
the boundary through exactly one anchor edge.  Kruskal's algorithm runs over
entity-entity candidate edges plus per-entity perpendicular projections onto
the four boundary edges; all boundary anchors unify to a single virtual node
so a second anchor edge on a tree would close a cycle and is rejected.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .geometry import (
    Environment,
    PlanePoint,
    euclidean_distance,
    point_segment_distance,
    segments_properly_interact,
)

# An edge may not pass closer than this to a non-endpoint entity center.
ENTITY_CLEARANCE = 1.0


class ForestConstructionError(RuntimeError):
    """No non-crossing anchored forest exists under the candidate policy."""


@dataclass(frozen=True)
class ForestNode:
    ref: str  # entity id, or anchor id of the form "b<k>"
    position: PlanePoint

    @property
    def is_anchor(self) -> bool:
        return self.ref.startswith("b")


@dataclass(frozen=True)
class ForestEdge:
    edge_id: int
    a: ForestNode
    b: ForestNode

    def other(self, node: ForestNode) -> ForestNode:
        if node == self.a:
            return self.b
        if node == self.b:
            return self.a
        raise KeyError(f"{node.ref} not on edge {self.edge_id}")

    @property
    def length(self) -> float:
        return euclidean_distance(self.a.position, self.b.position)


@dataclass
class Forest:
    edges: list[ForestEdge]
    adjacency: dict[str, list[ForestEdge]] = field(default_factory=dict)
    anchors: list[ForestNode] = field(default_factory=list)
    nodes: dict[str, ForestNode] = field(default_factory=dict)
    depths: dict[str, int] = field(default_factory=dict)

    def tree_degree(self, ref: str) -> int:
        if ref not in self.nodes:
            raise KeyError(f"unknown forest node {ref}")
        return len(self.adjacency.get(ref, []))

    def edge_by_id(self, edge_id: int) -> ForestEdge:
        for e in self.edges:
            if e.edge_id == edge_id:
                return e
        raise KeyError(edge_id)

    def deeper_endpoint(self, edge: ForestEdge) -> ForestNode:
        """Endpoint farther from the tree's boundary anchor along the tree."""
        da = self.depths[edge.a.ref]
        db = self.depths[edge.b.ref]
        if da == db:
            raise ValueError(f"edge {edge.edge_id} endpoints at equal depth")
        return edge.a if da > db else edge.b

    def to_json(self) -> str:
        return json.dumps({"edges": [
            {"id": e.edge_id, "a": e.a.ref, "b": e.b.ref,
             "ax": e.a.position.x, "ay": e.a.position.y,
             "bx": e.b.position.x, "by": e.b.position.y}
            for e in self.edges]}, indent=2)


class _UnionFind:
    def __init__(self):
        self.parent: dict[str, str] = {}

    def find(self, x: str) -> str:
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: str, b: str) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


_BOUNDARY = "__boundary__"


def _boundary_projections(p: PlanePoint, env: Environment) -> list[tuple[str, PlanePoint]]:
    b = env.boundary
    return [
        ("left", PlanePoint(b.x_min, p.y)),
        ("right", PlanePoint(b.x_max, p.y)),
        ("bottom", PlanePoint(p.x, b.y_min)),
        ("top", PlanePoint(p.x, b.y_max)),
    ]


def build_forest(env: Environment) -> Forest:
    """Build the anchored non-crossing forest over interior entities.

    Entities already on the boundary receive no tree edges and act as native
    boundary points.
    """
    interior = [e for e in env.entities if not env.boundary.on_edge(e.center)]
    on_boundary = [e for e in env.entities if env.boundary.on_edge(e.center)]
    all_centers = {e.id: e.center for e in env.entities}

    # Candidate edges: (weight, tiebreak key, kind, payload)
    candidates = []
    for i, a in enumerate(interior):
        for b in interior[i + 1:]:
            w = euclidean_distance(a.center, b.center)
            key = tuple(sorted((a.id, b.id)))
            candidates.append((w, 0, key, ("pair", a, b)))
        for edge_name, proj in _boundary_projections(a.center, env):
            w = euclidean_distance(a.center, proj)
            candidates.append((w, 1, (a.id, edge_name), ("anchor", a, proj)))
    candidates.sort(key=lambda c: (c[0], c[1], c[2]))

    uf = _UnionFind()
    accepted: list[tuple[PlanePoint, PlanePoint, str, str]] = []  # seg + endpoint ids
    edges_raw: list[tuple[str, PlanePoint, str | None, PlanePoint | None]] = []
    anchor_points: list[tuple[str, PlanePoint]] = []  # (entity id, anchor position)

    def clear_of_entities(p: PlanePoint, q: PlanePoint, skip: set[str]) -> bool:
        for eid, c in all_centers.items():
            if eid in skip:
                continue
            if point_segment_distance(c, p, q) < ENTITY_CLEARANCE:
                return False
        return True

    def crosses_accepted(p: PlanePoint, q: PlanePoint) -> bool:
        return any(segments_properly_interact(p, q, sp, sq) for sp, sq, _, _ in accepted)

    for w, _, _, (kind, a, other) in candidates:
        if kind == "pair":
            b = other
            if uf.find(a.id) == uf.find(b.id):
                continue
            if not clear_of_entities(a.center, b.center, {a.id, b.id}):
                continue
            if crosses_accepted(a.center, b.center):
                continue
            uf.union(a.id, b.id)
            accepted.append((a.center, b.center, a.id, b.id))
            edges_raw.append((a.id, a.center, b.id, b.center))
        else:
            proj = other
            if uf.find(a.id) == uf.find(_BOUNDARY):
                continue
            if not clear_of_entities(a.center, proj, {a.id}):
                continue
            if crosses_accepted(a.center, proj):
                continue
            uf.union(a.id, _BOUNDARY)
            accepted.append((a.center, proj, a.id, "__anchor__"))
            edges_raw.append((a.id, a.center, None, proj))
            anchor_points.append((a.id, proj))

    unconnected = [e.id for e in interior if uf.find(e.id) != uf.find(_BOUNDARY)]
    if unconnected:
        raise ForestConstructionError(
            f"entities {unconnected} cannot be anchored without crossings")

    # Anchor ids follow boundary order (counter-clockwise walk position).
    anchor_points.sort(key=lambda ap: env.boundary.perimeter_parameter(ap[1]))
    anchor_ids = {}
    for k, (eid, pos) in enumerate(anchor_points):
        anchor_ids[(eid, (pos.x, pos.y))] = f"b{k+1}"

    nodes: dict[str, ForestNode] = {}
    for e in interior:
        nodes[e.id] = ForestNode(e.id, e.center)
    edges: list[ForestEdge] = []
    for eid_a, pos_a, eid_b, pos_b in edges_raw:
        na = nodes[eid_a]
        if eid_b is None:
            ref = anchor_ids[(eid_a, (pos_b.x, pos_b.y))]
            nb = ForestNode(ref, pos_b)
            nodes[ref] = nb
        else:
            nb = nodes[eid_b]
        edges.append(ForestEdge(len(edges) + 1, na, nb))

    forest = Forest(edges=edges, nodes=nodes)
    forest.anchors = [nodes[r] for r in sorted(
        (r for r in nodes if nodes[r].is_anchor), key=lambda r: int(r[1:]))]
    adjacency: dict[str, list[ForestEdge]] = {r: [] for r in nodes}
    for e in edges:
        adjacency[e.a.ref].append(e)
        adjacency[e.b.ref].append(e)
    # Rotational order: incident edges sorted by angle of departure.
    for ref, incident in adjacency.items():
        origin = nodes[ref].position
        incident.sort(key=lambda e: math.atan2(
            e.other(nodes[ref]).position.y - origin.y,
            e.other(nodes[ref]).position.x - origin.x))
    forest.adjacency = adjacency
    forest.depths = _compute_depths(forest)

    # `on_boundary` entities are intentionally absent from the forest.
    del on_boundary
    return forest


def _compute_depths(forest: Forest) -> dict[str, int]:
    depths: dict[str, int] = {}
    for anchor in forest.anchors:
        depths[anchor.ref] = 0
        frontier = [anchor]
        while frontier:
            nxt = []
            for node in frontier:
                for e in forest.adjacency[node.ref]:
                    v = e.other(node)
                    if v.ref not in depths:
                        depths[v.ref] = depths[node.ref] + 1
                        nxt.append(v)
            frontier = nxt
    return depths


def tree_degree(forest: Forest, ref: str) -> int:
    return forest.tree_degree(ref)
