"""Grid-based A* baseline routers.

AS1 searches the integer grid with 4-connected moves and a Manhattan
heuristic; AS2 uses 8-connected moves and a Chebyshev heuristic.  Nets are
routed sequentially in index order; entity disks and previously routed
paths block the grid, so later nets can fail for lack of clearance.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

from .geometry import Environment, PlanePoint

SQRT2 = math.sqrt(2.0)

_ORTHO = ((1, 0), (-1, 0), (0, 1), (0, -1))
_DIAG = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def heuristic_as1(p: tuple[int, int], t: tuple[int, int], d: float = 1.0) -> float:
    dx = abs(p[0] - t[0])
    dy = abs(p[1] - t[1])
    return d * (dx + dy)


def heuristic_as2(p: tuple[int, int], t: tuple[int, int],
                  d1: float = 1.0, d2: float = 1.0) -> float:
    dx = abs(p[0] - t[0])
    dy = abs(p[1] - t[1])
    return d1 * (dx + dy) + (d2 - 2 * d1) * min(dx, dy)


def snap_to_grid(p: PlanePoint) -> tuple[int, int]:
    return int(math.floor(p.x + 0.5)), int(math.floor(p.y + 0.5))


@dataclass
class GridRouteResult:
    variant: str
    paths: dict[int, list[tuple[int, int]] | None]   # net index -> node list
    lengths: dict[int, float]
    completed: bool

    def to_jsonable(self) -> dict:
        return {
            "variant": self.variant,
            "completed": self.completed,
            "paths": {str(i): (p if p is not None else None)
                      for i, p in self.paths.items()},
            "lengths": {str(i): l for i, l in self.lengths.items()},
        }


class Grid:
    """Integer lattice over the boundary with a monotone blocked set."""

    def __init__(self, env: Environment):
        b = env.boundary
        self.x0 = int(math.ceil(b.x_min))
        self.x1 = int(math.floor(b.x_max))
        self.y0 = int(math.ceil(b.y_min))
        self.y1 = int(math.floor(b.y_max))
        self.w = self.x1 - self.x0 + 1
        self.h = self.y1 - self.y0 + 1
        self.blocked = bytearray(self.w * self.h)
        self.entity_nodes: dict[str, set[tuple[int, int]]] = {}
        for ent in env.entities:
            nodes = set()
            cx, cy = ent.center.x, ent.center.y
            r = ent.radius
            for nx in range(int(math.ceil(cx - r)), int(math.floor(cx + r)) + 1):
                for ny in range(int(math.ceil(cy - r)), int(math.floor(cy + r)) + 1):
                    if (nx - cx) ** 2 + (ny - cy) ** 2 <= r * r and self.in_bounds(nx, ny):
                        nodes.add((nx, ny))
            # Guarantee at least the snapped node is associated with the disk.
            snapped = snap_to_grid(ent.center)
            if self.in_bounds(*snapped):
                nodes.add(snapped)
            self.entity_nodes[ent.id] = nodes
            for node in nodes:
                self.block(node)

    def idx(self, x: int, y: int) -> int:
        return (y - self.y0) * self.w + (x - self.x0)

    def in_bounds(self, x: int, y: int) -> bool:
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1

    def block(self, node: tuple[int, int]) -> None:
        self.blocked[self.idx(*node)] = 1

    def unblock(self, node: tuple[int, int]) -> None:
        self.blocked[self.idx(*node)] = 0

    def is_blocked(self, x: int, y: int) -> bool:
        return bool(self.blocked[self.idx(x, y)])


def _astar_single(grid: Grid, start: tuple[int, int], goal: tuple[int, int],
                  variant: str) -> list[tuple[int, int]] | None:
    if start == goal:
        return [start]
    heuristic = heuristic_as1 if variant == "AS1" else heuristic_as2
    blocked = grid.blocked
    x0, y0, x1, y1, w = grid.x0, grid.y0, grid.x1, grid.y1, grid.w

    g: dict[tuple[int, int], float] = {start: 0.0}
    came: dict[tuple[int, int], tuple[int, int]] = {}
    h0 = heuristic(start, goal)
    open_heap = [(h0, h0, start)]
    closed: set[tuple[int, int]] = set()

    while open_heap:
        f, _, node = heapq.heappop(open_heap)
        if node == goal:
            path = [node]
            while node in came:
                node = came[node]
                path.append(node)
            path.reverse()
            return path
        if node in closed:
            continue
        closed.add(node)
        nx, ny = node
        gn = g[node]

        for dx, dy in _ORTHO:
            mx, my = nx + dx, ny + dy
            if not (x0 <= mx <= x1 and y0 <= my <= y1):
                continue
            if blocked[(my - y0) * w + (mx - x0)]:
                continue
            ng = gn + 1.0
            m = (mx, my)
            if ng < g.get(m, math.inf):
                g[m] = ng
                came[m] = node
                hm = heuristic(m, goal)
                heapq.heappush(open_heap, (ng + hm, hm, m))
        if variant == "AS2":
            for dx, dy in _DIAG:
                mx, my = nx + dx, ny + dy
                if not (x0 <= mx <= x1 and y0 <= my <= y1):
                    continue
                if blocked[(my - y0) * w + (mx - x0)]:
                    continue
                # No corner cutting between diagonally adjacent blocked nodes.
                if (blocked[(ny - y0) * w + (mx - x0)]
                        and blocked[(my - y0) * w + (nx - x0)]):
                    continue
                ng = gn + SQRT2
                m = (mx, my)
                if ng < g.get(m, math.inf):
                    g[m] = ng
                    came[m] = node
                    hm = heuristic(m, goal)
                    heapq.heappush(open_heap, (ng + hm, hm, m))
    return None


def path_grid_length(path: list[tuple[int, int]]) -> float:
    total = 0.0
    for (ax, ay), (bx, by) in zip(path, path[1:]):
        total += 1.0 if (ax == bx or ay == by) else SQRT2
    return total


def route_env_astar(env: Environment, variant: str) -> GridRouteResult:
    """Route all nets sequentially on the grid; paths block later nets."""
    if variant not in ("AS1", "AS2"):
        raise ValueError(f"unknown variant {variant!r}")
    grid = Grid(env)
    paths: dict[int, list[tuple[int, int]] | None] = {}
    lengths: dict[int, float] = {}
    completed = True
    for net in env.nets:
        s = snap_to_grid(env.entity(net.start_id).center)
        t = snap_to_grid(env.entity(net.end_id).center)
        own = (grid.entity_nodes[net.start_id] | grid.entity_nodes[net.end_id])
        saved = [(node, grid.is_blocked(*node)) for node in own]
        for node in own:
            grid.unblock(node)
        path = _astar_single(grid, s, t, variant)
        if path is None:
            paths[net.index] = None
            completed = False
            for node, was in saved:
                if was:
                    grid.block(node)
            continue
        paths[net.index] = path
        lengths[net.index] = path_grid_length(path)
        for node in path:
            grid.block(node)
        for node, was in saved:
            if was and node not in path:
                grid.block(node)
    return GridRouteResult(variant, paths, lengths, completed)
