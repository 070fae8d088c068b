"""Randomized properties over generated puzzles with a hidden solution."""

from itertools import combinations

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from helpers import any_puzzles, instances, replay, wide_instances
from logigrid import (
    CellState,
    Contradiction,
    ExplanationOptions,
    Grid,
    HintStream,
    Status,
    bcr_step,
    clue_rule_pass,
    count_models,
    detect_discard,
    encode,
    enumerate_solutions,
    parse_puzzle,
    serialize_puzzle,
    slice_for_cell,
    solve,
)
from logigrid.inference import elimination_applies

MANY = settings(max_examples=1000, deadline=None,
                suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
SOME = settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def truth_cells(solution):
    return {frozenset(pair) for row in solution for pair in combinations(row, 2)}


def truth_value(solution, e, f):
    return 1 if frozenset((e, f)) in truth_cells(solution) else -1


@MANY
@given(instances, st.data())
def test_monotone_writes(instance, data):
    puzzle, _ = instance
    grid = Grid(puzzle)
    cells = list(grid.cells())
    model = {}
    for _ in range(data.draw(st.integers(0, 30))):
        i, j = data.draw(st.sampled_from(cells))
        value = data.draw(st.sampled_from([1, -1]))
        before = grid.as_array().copy()
        if model.get((i, j), value) != value:
            with pytest.raises(Contradiction):
                grid.put(i, j, value)
            assert (grid.as_array() == before).all()
        else:
            assert grid.put(i, j, value) is ((i, j) not in model)
            model[i, j] = value
        assert grid.at(i, j) == grid.at(j, i) == model[i, j]
    assert grid.unknown_count() == len(cells) - len(model)


@MANY
@given(instances)
def test_soundness_against_hidden_solution(instance):
    puzzle, solution = instance
    result = solve(puzzle)
    assert result.status is not Status.CONTRADICTION, result.message
    for ev in result.events:
        assert truth_value(solution, *ev.cell) == int(ev.value), ev.text
    if result.status is Status.SOLVED:
        assert enumerate_solutions(puzzle, 2) == [tuple(result.solution())]


@MANY
@given(instances)
def test_replay_reproduces_final_grid(instance):
    puzzle, _ = instance
    result = solve(puzzle)
    assert replay(puzzle, result.events) == result.grid
    again = solve(puzzle)
    assert [e.text for e in again.events] == [e.text for e in result.events]
    assert [e.seq for e in result.events] == list(range(len(result.events)))


@MANY
@given(instances)
def test_advanced_rules_only_as_last_resort(instance):
    puzzle, _ = instance
    result = solve(puzzle)
    for ev in result.events:
        if ev.rule not in ("A1", "A2"):
            continue
        before = replay(puzzle, result.events, ev.seq)
        assert bcr_step(before.copy()) is None
        for constraint in puzzle.constraints:
            assert clue_rule_pass(before.copy(), constraint) == []


@MANY
@given(instances, st.booleans(), st.booleans())
def test_hints_concatenate_to_explanation(instance, group, discards):
    puzzle, _ = instance
    result = solve(puzzle)
    opts = ExplanationOptions(group_bcr=group, announce_discards=discards)
    stream = HintStream(result.lines(opts))
    assert "".join(line + "\n" for line in stream) == result.explanation(opts)
    assert stream.next() is None


@MANY
@given(instances, st.data())
def test_slice_replay_justifies_target(instance, data):
    puzzle, _ = instance
    result = solve(puzzle)
    if not result.events:
        return
    target = data.draw(st.sampled_from(result.events))
    sliced = slice_for_cell(result.events, target.cell, puzzle)
    grid = Grid(puzzle)
    for ev in sliced:
        for e, f, value in ev.premises:
            if {e, f} != set(ev.cell) and value != CellState.UNKNOWN:
                assert grid.get(e, f) == value, ev.text
        grid.set(*ev.cell, ev.value)
    assert grid.get(*target.cell) == target.value
    assert sliced[-1].cell == target.cell


@MANY
@given(instances)
def test_discard_is_monotone(instance):
    puzzle, _ = instance
    result = solve(puzzle)
    clues = sorted(set(puzzle.clue_ids()))
    grid = Grid(puzzle)
    discarded = set()
    for ev in [None] + result.events:
        if ev is not None:
            grid.set(*ev.cell, ev.value)
        now = {c for c in clues if detect_discard(grid, c, puzzle.constraints)}
        assert discarded <= now
        discarded = now
    if result.status is Status.SOLVED:
        assert discarded == set(clues)


@MANY
@given(any_puzzles)
def test_parse_serialize_round_trip(puzzle):
    text = serialize_puzzle(puzzle)
    assert parse_puzzle(text) == puzzle
    assert serialize_puzzle(parse_puzzle(text)) == text


def _b1_closed_grid(puzzle, solution, rng):
    grid = Grid(puzzle)
    cells = list(grid.cells())
    for i, j in rng.sample(cells, rng.randint(0, len(cells))):
        value = truth_value(solution, grid.label(i), grid.label(j))
        if value == 1 or rng.random() < 0.5:
            grid.put(i, j, value)
    # close under B1 only: a yes excludes the rest of its block row and column
    for i, j in cells:
        if grid.at(i, j) == 1:
            for a, b in ((i, j), (j, i)):
                for other in range(grid.cat(b) * grid.n, (grid.cat(b) + 1) * grid.n):
                    if other != b:
                        grid.put(a, other, -1)
    return grid


@MANY
@given(wide_instances, st.randoms(use_true_random=False))
def test_elimination_subsumes_yes_and_no(instance, rng):
    puzzle, solution = instance
    grid = _b1_closed_grid(puzzle, solution, rng)
    n, k = grid.n, grid.k
    labels = [grid.label(i) for i in range(n * k)]
    for e in range(n * k):
        for g in range(n * k):
            if grid.at(e, g) != 1:
                continue
            for f in range(n * k):
                if grid.cat(f) in (grid.cat(e), grid.cat(g)) or grid.at(g, f) != -1:
                    continue
                category = puzzle.categories[grid.cat(g)].label
                assert elimination_applies(grid, labels[e], labels[f], category)


@SOME
@given(instances)
def test_cnf_agrees_with_oracle(instance):
    puzzle, _ = instance
    assert count_models(encode(puzzle), 10) == len(enumerate_solutions(puzzle, 10))
