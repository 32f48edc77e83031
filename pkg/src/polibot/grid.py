"""Occupancy-grid map with named locations and obstacle inflation.

Map files are plain text.  The first line is ``resolution=<meters>``, the
rest is one glyph per cell: ``#`` obstacle, ``.`` free, ``R``/``E``/``T``/``H``
the four departments (retail, education, tourism, healthcare), ``@`` the spawn
pose.  Rows must be equal length and the border must be closed.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np
from scipy.ndimage import binary_dilation

FREE = 0
OBSTACLE = 1

TRAVERSABLE = 0
INFLATED = 1
BLOCKED = 2

LOCATION_GLYPHS = {
    "R": "retail",
    "E": "education",
    "T": "tourism",
    "H": "healthcare",
}
SPAWN_GLYPH = "@"


class MapError(Exception):
    pass


@dataclass(frozen=True)
class OccupancyGrid:
    width: int
    height: int
    resolution: float
    cells: np.ndarray  # uint8 (height, width), FREE / OBSTACLE
    locations: dict[str, tuple[int, int]]  # name -> (row, col)
    spawn: tuple[int, int]

    def cell_center(self, cell: tuple[int, int]) -> tuple[float, float]:
        """Metric (x, y) of a cell center; x grows with column, y with row."""
        row, col = cell
        return ((col + 0.5) * self.resolution, (row + 0.5) * self.resolution)

    def cell_of(self, x: float, y: float) -> tuple[int, int]:
        return (int(y / self.resolution), int(x / self.resolution))

    def in_bounds(self, cell: tuple[int, int]) -> bool:
        row, col = cell
        return 0 <= row < self.height and 0 <= col < self.width


@dataclass(frozen=True)
class Costmap:
    base: OccupancyGrid
    inflation_radius: float
    blocked: np.ndarray  # uint8 (height, width), TRAVERSABLE / INFLATED / BLOCKED

    def traversable(self, cell: tuple[int, int]) -> bool:
        if not self.base.in_bounds(cell):
            return False
        return self.blocked[cell] == TRAVERSABLE


def parse_map(text: str) -> OccupancyGrid:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("resolution="):
        raise MapError("line 1: expected a resolution=<meters> header")
    try:
        resolution = float(lines[0].split("=", 1)[1])
    except ValueError:
        raise MapError("line 1: resolution is not a number") from None
    if resolution <= 0:
        raise MapError("line 1: resolution must be positive")

    rows = [line for line in lines[1:] if line.strip()]
    if len(rows) < 3:
        raise MapError("map needs at least 3 rows")
    width = len(rows[0])
    cells = np.zeros((len(rows), width), dtype=np.uint8)
    locations: dict[str, tuple[int, int]] = {}
    spawn: tuple[int, int] | None = None
    for r, line in enumerate(rows):
        if len(line) != width:
            raise MapError(f"row {r + 2}: ragged row, {len(line)} glyphs vs {width}")
        for c, glyph in enumerate(line):
            if glyph == "#":
                cells[r, c] = OBSTACLE
            elif glyph == ".":
                cells[r, c] = FREE
            elif glyph in LOCATION_GLYPHS:
                name = LOCATION_GLYPHS[glyph]
                if name in locations:
                    raise MapError(f"row {r + 2}, col {c + 1}: duplicate location {name}")
                locations[name] = (r, c)
                cells[r, c] = FREE
            elif glyph == SPAWN_GLYPH:
                if spawn is not None:
                    raise MapError(f"row {r + 2}, col {c + 1}: duplicate spawn")
                spawn = (r, c)
                cells[r, c] = FREE
            else:
                raise MapError(f"row {r + 2}, col {c + 1}: unknown glyph {glyph!r}")

    # closed world: the border must be obstacle
    border = np.concatenate([cells[0], cells[-1], cells[:, 0], cells[:, -1]])
    if not np.all(border == OBSTACLE):
        raise MapError("map border has free cells; the world must be closed")
    if spawn is None:
        raise MapError("map has no spawn glyph '@'")
    return OccupancyGrid(
        width=width,
        height=len(rows),
        resolution=resolution,
        cells=cells,
        locations=locations,
        spawn=spawn,
    )


def load_map(path: str | Path) -> OccupancyGrid:
    return parse_map(Path(path).read_text(encoding="utf-8"))


def bundled_map() -> OccupancyGrid:
    text = resources.files("polibot.data").joinpath("map.txt").read_text(encoding="utf-8")
    return parse_map(text)


def _disk(radius_m: float, resolution: float) -> np.ndarray:
    """Structuring element: cell offsets within radius_m, center to center."""
    reach = int(np.ceil(radius_m / resolution))
    dy, dx = np.mgrid[-reach: reach + 1, -reach: reach + 1]
    # tolerance keeps cells exactly on the circle inside the disk
    return (dy * resolution) ** 2 + (dx * resolution) ** 2 <= radius_m**2 + 1e-9


def inflate(g: OccupancyGrid, radius_m: float) -> Costmap:
    if radius_m < 0:
        raise ValueError("inflation radius must be nonnegative")
    obstacle = g.cells == OBSTACLE
    grown = binary_dilation(obstacle, structure=_disk(radius_m, g.resolution))
    blocked = np.full(g.cells.shape, TRAVERSABLE, dtype=np.uint8)
    blocked[grown] = INFLATED
    blocked[obstacle] = BLOCKED
    return Costmap(base=g, inflation_radius=radius_m, blocked=blocked)


def check_locations(costmap: Costmap) -> None:
    """Named locations and the spawn must sit outside the inflation layer."""
    g = costmap.base
    for name, cell in list(g.locations.items()) + [("spawn", g.spawn)]:
        if not costmap.traversable(cell):
            row, col = cell
            raise MapError(
                f"location {name} at row {row + 1}, col {col + 1} is inside "
                f"the {costmap.inflation_radius} m inflation layer"
            )
