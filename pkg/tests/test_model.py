import numpy as np
import pytest

from helpers import replay, running
from logigrid import (
    CellState,
    Contradiction,
    Grid,
    SameCategory,
    UnknownLabel,
    cell_get,
    cell_set,
    entails_match,
    feasible_positions,
    incompatible,
    solve,
)
from logigrid.errors import EmptyDomain
from logigrid.model import display_label, normalize_label

YES, NO, UNKNOWN = CellState.YES, CellState.NO, CellState.UNKNOWN


@pytest.fixture
def puzzle():
    return running()


@pytest.fixture
def fig2(puzzle):
    """Grid after the first clue pass (four fills)."""
    return replay(puzzle, solve(puzzle).events, 4)


def test_cell_state_integers():
    assert (int(UNKNOWN), int(YES), int(NO)) == (0, 1, -1)


def test_puzzle_shape(puzzle):
    assert (puzzle.k, puzzle.n) == (3, 3)
    assert [c.clue for c in puzzle.constraints] == [1, 2, 3]
    assert puzzle.locate("Leo") == (0, 2)
    assert puzzle.category_of("1979").label == "Year_of_Birth"


def test_labels_round_trip_through_display():
    assert display_label("United_States") == "United States"
    assert normalize_label("United States") == "United_States"


def test_fresh_cell_unknown(puzzle):
    assert cell_get(Grid(puzzle), "Leo", "Germany") is UNKNOWN


def test_cells_after_first_pass(fig2):
    assert cell_get(fig2, "1946", "United States") is YES
    assert cell_get(fig2, "Germany", "1979") is NO


def test_cell_get_symmetric(fig2):
    for e, f in [("1946", "United_States"), ("Leo", "Germany"), ("Angela", "1954")]:
        assert cell_get(fig2, e, f) == cell_get(fig2, f, e)


def test_cell_get_errors(puzzle):
    grid = Grid(puzzle)
    with pytest.raises(SameCategory):
        cell_get(grid, "Leo", "Angela")
    with pytest.raises(UnknownLabel):
        cell_get(grid, "Leo", "Paris")


def test_cell_set_changed_noop_contradiction(puzzle):
    grid = Grid(puzzle)
    assert cell_set(grid, "1946", "United States", YES) is True
    assert cell_set(grid, "1946", "United States", YES) is False
    with pytest.raises(Contradiction):
        cell_set(grid, "1946", "United States", NO)
    assert cell_get(grid, "United_States", "1946") is YES


def test_cell_set_rejects_unknown(puzzle):
    with pytest.raises(ValueError):
        cell_set(Grid(puzzle), "Leo", "Germany", UNKNOWN)


def test_grid_matrix_symmetric(fig2):
    values = fig2.as_array()
    assert values.dtype == np.int8
    assert (values == values.T).all()
    n = fig2.n
    for c in range(fig2.k):
        assert not values[c * n:(c + 1) * n, c * n:(c + 1) * n].any()


def test_feasible_positions(fig2, puzzle):
    assert feasible_positions(fig2, "Leo", "Year_of_Birth") == {1, 2}
    assert feasible_positions(Grid(puzzle), "Angela", "Year_of_Birth") == {0, 1, 2}
    assert feasible_positions(Grid(puzzle), "1954", "Year_of_Birth") == {1}


def test_feasible_positions_collapse_on_yes(puzzle):
    grid = Grid(puzzle)
    grid.set("Leo", "1954", YES)
    assert feasible_positions(grid, "Leo", "Year_of_Birth") == {1}


def test_feasible_positions_empty_domain(puzzle):
    grid = Grid(puzzle)
    for year in ("1946", "1954", "1979"):
        grid.set("Leo", year, NO)
    with pytest.raises(EmptyDomain):
        feasible_positions(grid, "Leo", "Year_of_Birth")


def test_incompatible(fig2):
    assert incompatible(fig2, "1954", "1946")
    assert incompatible(fig2, "Germany", "Ireland")
    assert incompatible(fig2, "Leo", "Germany")
    assert not incompatible(fig2, "Donald", "Ireland")
    assert not incompatible(fig2, "Leo", "Leo")


def test_entails_match(fig2):
    assert entails_match(fig2, "Leo", "Leo")
    assert entails_match(fig2, "1946", "United States")
    assert not entails_match(fig2, "Donald", "Ireland")


def test_incompatible_and_match_exclusive(puzzle):
    grid = solve(puzzle).grid
    labels = [e for c in puzzle.categories for e in c.elements]
    for e in labels:
        for f in labels:
            assert not (incompatible(grid, e, f) and entails_match(grid, e, f))


def test_copy_is_independent(fig2):
    clone = fig2.copy()
    clone.set("Donald", "Ireland", YES)
    assert cell_get(fig2, "Donald", "Ireland") is UNKNOWN
    assert clone != fig2
