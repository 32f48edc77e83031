"""Optimal 4-connected grid planner over the inflated costmap.

Uniform-cost A* with the Manhattan heuristic (admissible on a 4-connected
unit-cost grid, so returned paths are minimal).  Ties in the open list are
broken by (f, row, col, insertion order), which makes plans deterministic
across runs and platforms.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .grid import Costmap

Cell = tuple[int, int]

# expansion order: up, left, right, down (row-major neighbors)
_NEIGHBORS = ((-1, 0), (0, -1), (0, 1), (1, 0))


class NoPath(Exception):
    def __init__(self, start: Cell, goal: Cell):
        super().__init__(f"no path from {start} to {goal}")
        self.start = start
        self.goal = goal


class NotTraversable(Exception):
    def __init__(self, cell: Cell, role: str):
        super().__init__(f"{role} cell {cell} is not traversable")
        self.cell = cell
        self.role = role


@dataclass(frozen=True)
class Plan:
    waypoints: tuple[Cell, ...]

    @property
    def cost(self) -> int:
        return len(self.waypoints) - 1


def _manhattan(a: Cell, b: Cell) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def plan(costmap: Costmap, start: Cell, goal: Cell) -> Plan:
    if not costmap.traversable(start):
        raise NotTraversable(start, "start")
    if not costmap.traversable(goal):
        raise NotTraversable(goal, "goal")
    if start == goal:
        return Plan(waypoints=(start,))

    counter = 0
    open_heap: list[tuple[int, int, int, int, Cell]] = [
        (_manhattan(start, goal), start[0], start[1], counter, start)
    ]
    g_cost: dict[Cell, int] = {start: 0}
    came_from: dict[Cell, Cell] = {}
    closed: set[Cell] = set()

    while open_heap:
        _, _, _, _, cell = heapq.heappop(open_heap)
        if cell in closed:
            continue
        if cell == goal:
            path = [cell]
            while cell in came_from:
                cell = came_from[cell]
                path.append(cell)
            path.reverse()
            return Plan(waypoints=tuple(path))
        closed.add(cell)
        base = g_cost[cell]
        for dr, dc in _NEIGHBORS:
            nxt = (cell[0] + dr, cell[1] + dc)
            if not costmap.traversable(nxt) or nxt in closed:
                continue
            tentative = base + 1
            if tentative < g_cost.get(nxt, tentative + 1):
                g_cost[nxt] = tentative
                came_from[nxt] = cell
                counter += 1
                f = tentative + _manhattan(nxt, goal)
                heapq.heappush(open_heap, (f, nxt[0], nxt[1], counter, nxt))

    raise NoPath(start, goal)
