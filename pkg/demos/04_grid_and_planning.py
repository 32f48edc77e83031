"""
The store map, the costmap, and A*
==================================

The floor is a glyph grid: # walls, . free space, @ the robot's spawn, and
one letter per department.  Planning happens on an inflated costmap so the
robot's body never clips a wall, and the A* heuristic is Manhattan distance,
which is admissible on a 4-connected grid.
"""

from polibot.grid import BLOCKED, INFLATED, bundled_map, inflate
from polibot.planner import plan

grid = bundled_map()
print(f"{grid.height}x{grid.width} cells at {grid.resolution} m, "
      f"locations: {', '.join(grid.locations)}")

costmap = inflate(grid, 0.3)

# Render the inflation layer: cells that look free but sit too close to a
# wall for the robot body to occupy.
rows = []
for r in range(grid.height):
    row = []
    for c in range(grid.width):
        state = costmap.blocked[r, c]
        row.append("#" if state == BLOCKED else "o" if state == INFLATED else ".")
    rows.append(row)

start = grid.spawn
for name, cell in grid.locations.items():
    p = plan(costmap, start, cell)
    print(f"{start} -> {name}: {p.cost} steps")
    for r, c in p.waypoints:
        if rows[r][c] == ".":
            rows[r][c] = "*"
    start = cell  # chain the tour legs like the robot would

for name, (r, c) in grid.locations.items():
    rows[r][c] = name[0].upper()
sr, sc = grid.spawn
rows[sr][sc] = "@"

print()
for row in rows:
    print("".join(row))
