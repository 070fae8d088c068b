"""Reveal an explanation gradually, and explain a single cell."""

from logigrid import ExplanationOptions, HintStream, load_bundled, next_hint, slice_for_cell, solve

puzzle = load_bundled("birthyears")
result = solve(puzzle)

stream = HintStream(result.lines(ExplanationOptions(announce_discards=True)))
for i in range(3):
    print(f"hint {i + 1}: {next_hint(stream)}")
print(f"... {len(list(stream))} more\n")

# only the deductions that matter for Donald's country
for ev in slice_for_cell(result.events, ("Donald", "United States"), puzzle):
    print(f"[{ev.seq:2}] {ev.text}")
