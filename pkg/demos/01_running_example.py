"""Solve the three-person birth-year puzzle and watch the grid fill in."""

from logigrid import ExplanationOptions, load_bundled, solve
from logigrid.cli import render_grid

puzzle = load_bundled("birthyears")
result = solve(puzzle)

print(f"{puzzle.name}: {result.status.value}, {len(result.events)} cells filled\n")
print(result.explanation())

# the same run, one line per filled cell
for line in result.lines(ExplanationOptions(group_bcr=False))[:6]:
    print("  ", line)
print("   ...\n")

print(render_grid(result.grid))
for row in result.solution():
    print(" / ".join(row))
