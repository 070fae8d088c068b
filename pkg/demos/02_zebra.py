"""Who owns the zebra?  Ask the solver, then check it against brute force."""

import time

from logigrid import enumerate_solutions, load_bundled, solve

puzzle = load_bundled("zebra")
start = time.perf_counter()
result = solve(puzzle)
elapsed = (time.perf_counter() - start) * 1000

nationality = puzzle.category_index("Nationality")
owner = next(row[nationality] for row in result.solution() if "Zebra" in row)
print(f"solver: {result.status.value} in {elapsed:.1f} ms, {len(result.events)} deductions")
print(f"the zebra belongs to the {owner}")

(truth,) = enumerate_solutions(puzzle, 2)
print("oracle agrees:", tuple(result.solution()) == truth)

rules = {}
for ev in result.events:
    rules[ev.rule] = rules.get(ev.rule, 0) + 1
print("deductions by rule:", dict(sorted(rules.items(), key=str)))
