"""Planar primitives and the random routing-environment generator.

The routing environment is a square bounded plane with start disks fixed on
the right boundary edge and end disks drawn uniformly at random subject to
minimum separation constraints.  All types are immutable after construction.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

# Separation constraints (plane units) used by the environment generator.
MIN_PAIR_SEPARATION = 11.0
MIN_BOUNDARY_DISTANCE = 3.0
ENTITY_RADIUS = 0.5
MAX_REJECTION_ATTEMPTS = 10_000

# y offsets of start disks on the right boundary edge, in placement order.
START_Y_SEQUENCE = (4.0, -4.0, 12.0, -12.0, 20.0, -20.0, 28.0, -28.0, 36.0, -36.0)


class EnvironmentGenerationError(RuntimeError):
    """Raised when rejection sampling cannot place an end disk."""


@dataclass(frozen=True)
class PlanePoint:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinates ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True)
class RectBoundary:
    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("degenerate boundary rectangle")

    def contains(self, p: PlanePoint, tol: float = 0.0) -> bool:
        return (self.x_min - tol <= p.x <= self.x_max + tol
                and self.y_min - tol <= p.y <= self.y_max + tol)

    def edge_distance(self, p: PlanePoint) -> float:
        """Distance from an interior point to the nearest boundary edge."""
        return min(p.x - self.x_min, self.x_max - p.x,
                   p.y - self.y_min, self.y_max - p.y)

    def on_edge(self, p: PlanePoint, tol: float = 1e-9) -> bool:
        return self.contains(p, tol) and self.edge_distance(p) <= tol

    @property
    def corners(self) -> tuple[PlanePoint, ...]:
        return (PlanePoint(self.x_min, self.y_min),
                PlanePoint(self.x_max, self.y_min),
                PlanePoint(self.x_max, self.y_max),
                PlanePoint(self.x_min, self.y_max))

    def perimeter_parameter(self, p: PlanePoint, tol: float = 1e-9) -> float:
        """Arc-length position of a boundary point along the counter-clockwise
        walk starting at (x_min, y_min): bottom, right, top, left edges."""
        w = self.x_max - self.x_min
        h = self.y_max - self.y_min
        if abs(p.y - self.y_min) <= tol:
            return p.x - self.x_min
        if abs(p.x - self.x_max) <= tol:
            return w + (p.y - self.y_min)
        if abs(p.y - self.y_max) <= tol:
            return w + h + (self.x_max - p.x)
        if abs(p.x - self.x_min) <= tol:
            return 2 * w + h + (self.y_max - p.y)
        raise ValueError(f"point {p} not on boundary")


@dataclass(frozen=True)
class EntityDisk:
    id: str
    kind: str  # "start" | "end"
    center: PlanePoint
    radius: float = ENTITY_RADIUS

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("disk radius must be positive")
        if self.kind not in ("start", "end"):
            raise ValueError(f"unknown entity kind {self.kind!r}")


@dataclass(frozen=True)
class Net:
    index: int  # 1-based
    start_id: str
    end_id: str


@dataclass(frozen=True)
class Environment:
    boundary: RectBoundary
    starts: tuple[EntityDisk, ...]
    ends: tuple[EntityDisk, ...]
    nets: tuple[Net, ...]
    seed: int

    @property
    def n(self) -> int:
        return len(self.nets)

    @property
    def entities(self) -> tuple[EntityDisk, ...]:
        return self.starts + self.ends

    def entity(self, entity_id: str) -> EntityDisk:
        for e in self.entities:
            if e.id == entity_id:
                return e
        raise KeyError(entity_id)

    def net_for_end(self, end_id: str) -> Net:
        for net in self.nets:
            if net.end_id == end_id:
                return net
        raise KeyError(end_id)

    def to_json(self) -> str:
        doc = {
            "boundary": {"x_min": self.boundary.x_min, "x_max": self.boundary.x_max,
                         "y_min": self.boundary.y_min, "y_max": self.boundary.y_max},
            "starts": [{"id": e.id, "x": e.center.x, "y": e.center.y, "r": e.radius}
                       for e in self.starts],
            "ends": [{"id": e.id, "x": e.center.x, "y": e.center.y, "r": e.radius}
                     for e in self.ends],
            "nets": [{"i": net.index, "start": net.start_id, "end": net.end_id}
                     for net in self.nets],
            "seed": self.seed,
        }
        return json.dumps(doc, indent=2)

    @staticmethod
    def from_json(text: str) -> "Environment":
        doc = json.loads(text)
        b = doc["boundary"]
        boundary = RectBoundary(b["x_min"], b["x_max"], b["y_min"], b["y_max"])
        starts = tuple(EntityDisk(d["id"], "start", PlanePoint(d["x"], d["y"]), d["r"])
                       for d in doc["starts"])
        ends = tuple(EntityDisk(d["id"], "end", PlanePoint(d["x"], d["y"]), d["r"])
                     for d in doc["ends"])
        nets = tuple(Net(d["i"], d["start"], d["end"]) for d in doc["nets"])
        return Environment(boundary, starts, ends, nets, doc["seed"])


def euclidean_distance(a: PlanePoint, b: PlanePoint) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def manhattan_distance(a: PlanePoint, b: PlanePoint) -> float:
    return abs(a.x - b.x) + abs(a.y - b.y)


def _orient(a: PlanePoint, b: PlanePoint, c: PlanePoint) -> float:
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def _on_segment(a: PlanePoint, b: PlanePoint, p: PlanePoint) -> bool:
    """p assumed collinear with a-b; is it within the closed segment box?"""
    return (min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y))


def segments_properly_interact(p1: PlanePoint, p2: PlanePoint,
                               p3: PlanePoint, p4: PlanePoint) -> bool:
    """True iff closed segments p1-p2 and p3-p4 share any point other than a
    shared declared endpoint.  Collinear overlap counts as interaction."""
    if p1 == p2 or p3 == p4:
        raise ValueError("degenerate segment")
    shared = {p for p in (p1, p2) if p in (p3, p4)}

    d1 = _orient(p3, p4, p1)
    d2 = _orient(p3, p4, p2)
    d3 = _orient(p1, p2, p3)
    d4 = _orient(p1, p2, p4)

    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and 0 not in (d1, d2, d3, d4):
        return True

    touch_points = []
    for p, d, (a, b) in ((p1, d1, (p3, p4)), (p2, d2, (p3, p4)),
                         (p3, d3, (p1, p2)), (p4, d4, (p1, p2))):
        if d == 0 and _on_segment(a, b, p):
            touch_points.append(p)
    if not touch_points:
        return False
    # Pure shared-endpoint contact is exempt; anything else interacts.
    return any(p not in shared for p in touch_points)


def point_segment_distance(p: PlanePoint, a: PlanePoint, b: PlanePoint) -> float:
    ax, ay = a.x, a.y
    dx, dy = b.x - ax, b.y - ay
    L2 = dx * dx + dy * dy
    if L2 == 0:
        return euclidean_distance(p, a)
    t = ((p.x - ax) * dx + (p.y - ay) * dy) / L2
    t = max(0.0, min(1.0, t))
    return math.hypot(p.x - (ax + t * dx), p.y - (ay + t * dy))


def default_boundary() -> RectBoundary:
    return RectBoundary(-50.0, 50.0, -50.0, 50.0)


def start_positions(n: int) -> list[PlanePoint]:
    if n < 2 or n % 2 != 0:
        raise ValueError("net count must be even and >= 2")
    if n > len(START_Y_SEQUENCE):
        raise ValueError(f"at most {len(START_Y_SEQUENCE)} start disks supported")
    return [PlanePoint(50.0, y) for y in START_Y_SEQUENCE[:n]]


def derive_environment_seed(master_seed: int, n: int, h: int) -> int:
    """Stable per-environment seed for stream (master, n, h)."""
    ss = np.random.SeedSequence([master_seed, n, h])
    return int(ss.generate_state(1, np.uint64)[0])


def generate_environment(n: int, seed: int,
                         boundary: RectBoundary | None = None) -> Environment:
    """Generate a routing environment with n nets.

    Start disks sit on the right boundary edge at the fixed y sequence.  End
    disk centers are drawn uniformly within the boundary and accepted by
    rejection sampling against the pairwise and boundary separation minima.
    """
    boundary = boundary or default_boundary()
    rng = np.random.default_rng(seed)
    starts = [EntityDisk(f"s{i+1}", "start", p)
              for i, p in enumerate(start_positions(n))]

    placed: list[PlanePoint] = []
    for i in range(n):
        for _ in range(MAX_REJECTION_ATTEMPTS):
            x = rng.uniform(boundary.x_min, boundary.x_max)
            y = rng.uniform(boundary.y_min, boundary.y_max)
            p = PlanePoint(float(x), float(y))
            if boundary.edge_distance(p) < MIN_BOUNDARY_DISTANCE:
                continue
            if any(euclidean_distance(p, s.center) < MIN_PAIR_SEPARATION for s in starts):
                continue
            if any(euclidean_distance(p, q) < MIN_PAIR_SEPARATION for q in placed):
                continue
            placed.append(p)
            break
        else:
            raise EnvironmentGenerationError(
                f"could not place end disk {i+1} of {n} after "
                f"{MAX_REJECTION_ATTEMPTS} attempts (seed {seed})")

    ends = [EntityDisk(f"t{i+1}", "end", p) for i, p in enumerate(placed)]
    nets = tuple(Net(i + 1, f"s{i+1}", f"t{i+1}") for i in range(n))
    return Environment(boundary, tuple(starts), tuple(ends), nets, seed)
