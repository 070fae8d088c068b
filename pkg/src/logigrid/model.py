"""Puzzle definition, the tri-state grid, and the entailment helpers the rules share.

A puzzle has ``k`` categories of ``n`` elements each. The grid holds one cell for
every pair of elements from distinct categories, stored as a symmetric
``(k*n, k*n)`` integer matrix using 0 / 1 / -1 for unknown / yes / no.
Element ``p`` of category ``c`` has global index ``c * n + p``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterator, Sequence

import numpy as np

from .errors import Contradiction, EmptyDomain, SameCategory, UnknownLabel

KINDS = (
    "yes",
    "no",
    "or",
    "xor",
    "alldiff",
    "twobytwo",
    "before",
    "after",
    "beforefixed",
    "afterfixed",
    "beforeatleast",
    "afteratleast",
    "distance",
    "disjunction",
)
POSITIONAL_KINDS = frozenset(KINDS[6:13])
# kinds whose document form starts with an integer parameter
PARAMETRIC_KINDS = frozenset({"alldiff", "beforefixed", "afterfixed", "beforeatleast",
                              "afteratleast", "distance", "disjunction"})


def normalize_label(label: str) -> str:
    """Document form of a label: spaces become underscores."""
    return label.strip().replace(" ", "_")


def display_label(label: str) -> str:
    return label.replace("_", " ")


class CellState(IntEnum):
    UNKNOWN = 0
    YES = 1
    NO = -1

    def __str__(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class Category:
    label: str
    elements: tuple[str, ...]
    ordered: bool = False

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))


@dataclass(frozen=True)
class Constraint:
    """One formal restriction belonging to clue ``clue``.

    ``labels`` follow the argument order of the document format; positional
    kinds carry the category label between the two element labels. ``n`` is
    the integer parameter (alldiff arity, offset, gap, or disjunct count) and
    is ``None`` for kinds without one.
    """

    clue: int
    kind: str
    labels: tuple[str, ...]
    n: int | None = None
    polarities: tuple[bool, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if self.polarities is not None:
            object.__setattr__(self, "polarities", tuple(bool(p) for p in self.polarities))

    @property
    def positional(self) -> bool:
        return self.kind in POSITIONAL_KINDS

    @property
    def category(self) -> str:
        if not self.positional:
            raise AttributeError(f"{self.kind} constraints have no category argument")
        return self.labels[1]

    @property
    def elements(self) -> tuple[str, ...]:
        """Element labels only (the category label of positional kinds removed)."""
        if self.positional:
            return (self.labels[0], self.labels[2])
        return self.labels

    @property
    def gap(self) -> int:
        """Offset or minimum gap for positional kinds (1 for plain before/after)."""
        return 1 if self.kind in ("before", "after") else int(self.n)

    def disjuncts(self) -> list[tuple[str, str, bool]]:
        pairs = zip(self.labels[0::2], self.labels[1::2])
        return [(x, y, pol) for (x, y), pol in zip(pairs, self.polarities)]


def _sorted_by_clue(constraints: Sequence[Constraint]) -> tuple[Constraint, ...]:
    return tuple(sorted(constraints, key=lambda c: c.clue))


@dataclass(frozen=True)
class Puzzle:
    name: str
    categories: tuple[Category, ...]
    constraints: tuple[Constraint, ...] = ()
    _where: dict = field(init=False, repr=False, compare=False)
    _category_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "categories", tuple(self.categories))
        object.__setattr__(self, "constraints", _sorted_by_clue(self.constraints))
        where: dict[str, tuple[int, int]] = {}
        for c, cat in enumerate(self.categories):
            for p, label in enumerate(cat.elements):
                where.setdefault(label, (c, p))
        object.__setattr__(self, "_where", where)
        object.__setattr__(
            self, "_category_index",
            {cat.label: c for c, cat in reversed(list(enumerate(self.categories)))},
        )

    @property
    def k(self) -> int:
        return len(self.categories)

    @property
    def n(self) -> int:
        return len(self.categories[0].elements) if self.categories else 0

    def has_label(self, label: str) -> bool:
        return normalize_label(label) in self._where

    def locate(self, label: str) -> tuple[int, int]:
        """``(category index, position)`` of an element label."""
        try:
            return self._where[normalize_label(label)]
        except KeyError:
            raise UnknownLabel(f"unknown element label {label!r}") from None

    def category_index(self, label: str) -> int:
        try:
            return self._category_index[normalize_label(label)]
        except KeyError:
            raise UnknownLabel(f"unknown category label {label!r}") from None

    def category_of(self, label: str) -> Category:
        return self.categories[self.locate(label)[0]]

    def elements(self) -> Iterator[str]:
        for cat in self.categories:
            yield from cat.elements

    def clue_ids(self) -> list[int]:
        return sorted({c.clue for c in self.constraints})

    def clue(self, clue_id: int) -> list[Constraint]:
        return [c for c in self.constraints if c.clue == clue_id]

    def without_clue(self, clue_id: int) -> "Puzzle":
        kept = [c for c in self.constraints if c.clue != clue_id]
        return Puzzle(self.name, self.categories, kept)


class Grid:
    """Tri-state cell map over cross-category element pairs.

    Cells only ever move from unknown to yes or no; writing the opposite of a
    known value raises :class:`Contradiction`. Per-line yes/no counts are kept
    so the basic consistency rules can find work without rescanning.
    """

    def __init__(self, puzzle: Puzzle):
        self.puzzle = puzzle
        self.k = puzzle.k
        self.n = puzzle.n
        size = self.k * self.n
        self.values = np.zeros((size, size), dtype=np.int8)
        # list mirror of ``values`` for fast scalar reads
        self._rows = [[0] * size for _ in range(size)]
        self._yes = [[0] * self.k for _ in range(size)]
        self._no = [[0] * self.k for _ in range(size)]
        self._labels = list(puzzle.elements())
        self._pair_rank = {}
        for a in range(self.k):
            for b in range(a + 1, self.k):
                self._pair_rank[a, b] = len(self._pair_rank)
        self._pending: list[tuple[tuple[int, int, int], int, int]] = []

    # -- indexing -------------------------------------------------------------

    def index(self, label: str) -> int:
        c, p = self.puzzle.locate(label)
        return c * self.n + p

    def label(self, i: int) -> str:
        return self._labels[i]

    def cat(self, i: int) -> int:
        return i // self.n

    def pos(self, i: int) -> int:
        return i % self.n

    def member(self, c: int, p: int) -> int:
        return c * self.n + p

    def _cross(self, e: str, f: str) -> tuple[int, int]:
        i, j = self.index(e), self.index(f)
        if i // self.n == j // self.n:
            raise SameCategory(f"{e!r} and {f!r} belong to the same category")
        return i, j

    # -- cell access ----------------------------------------------------------

    def at(self, i: int, j: int) -> int:
        return self._rows[i][j]

    def get(self, e: str, f: str) -> CellState:
        i, j = self._cross(e, f)
        return CellState(int(self.values[i, j]))

    def set(self, e: str, f: str, value: CellState | int) -> bool:
        i, j = self._cross(e, f)
        return self.put(i, j, value)

    def put(self, i: int, j: int, value: CellState | int) -> bool:
        """Write a known value; True if the cell changed, False if it already held it."""
        value = int(value)
        if value == 0:
            raise ValueError("cannot write Unknown into a cell")
        current = self._rows[i][j]
        if current == value:
            return False
        if current != 0:
            raise Contradiction(
                f"cell ({self.label(i)}, {self.label(j)}) is already "
                f"{CellState(current)}, cannot set it to {CellState(value)}"
            )
        self.values[i, j] = value
        self.values[j, i] = value
        self._rows[i][j] = value
        self._rows[j][i] = value
        counts = self._yes if value == 1 else self._no
        ci, cj = i // self.n, j // self.n
        counts[i][cj] += 1
        counts[j][ci] += 1
        self._notify(i, cj)
        self._notify(j, ci)
        return True

    def is_complete(self) -> bool:
        return int(np.count_nonzero(self.values)) == self.k * (self.k - 1) * self.n * self.n

    def unknown_count(self) -> int:
        return self.k * (self.k - 1) * self.n * self.n // 2 - int(np.count_nonzero(self.values)) // 2

    def cells(self) -> Iterator[tuple[int, int]]:
        """All cells once each, block by block in category-pair order, row-major."""
        for a in range(self.k):
            for b in range(a + 1, self.k):
                for i in range(a * self.n, (a + 1) * self.n):
                    for j in range(b * self.n, (b + 1) * self.n):
                        yield i, j

    def known_cells(self) -> dict[tuple[str, str], CellState]:
        return {
            (self.label(i), self.label(j)): CellState(self.at(i, j))
            for i, j in self.cells() if self.values[i, j]
        }

    def block(self, a: int, b: int) -> np.ndarray:
        n = self.n
        return self.values[a * n:(a + 1) * n, b * n:(b + 1) * n]

    def as_array(self) -> np.ndarray:
        return self.values.copy()

    def copy(self) -> "Grid":
        other = Grid.__new__(Grid)
        other.__dict__.update(self.__dict__)
        other.values = self.values.copy()
        other._rows = [list(row) for row in self._rows]
        other._yes = [list(row) for row in self._yes]
        other._no = [list(row) for row in self._no]
        other._pending = list(self._pending)
        return other

    def __eq__(self, other) -> bool:
        if not isinstance(other, Grid):
            return NotImplemented
        return self.puzzle == other.puzzle and np.array_equal(self.values, other.values)

    __hash__ = None

    # -- derived facts ---------------------------------------------------------

    def partner(self, i: int, c: int) -> int | None:
        """Global index of the yes partner of ``i`` in category ``c``, if known."""
        if c == i // self.n:
            return i
        if self._yes[i][c] == 0:
            return None
        start = c * self.n
        return start + self._rows[i][start:start + self.n].index(1)

    def feasible(self, i: int, c: int) -> list[int]:
        """Positions (0-based) of category ``c`` not excluded for element ``i``."""
        n = self.n
        if i // n == c:
            return [i % n]
        row = self._rows[i][c * n:(c + 1) * n]
        if 1 in row:
            return [row.index(1)]
        free = [p for p, v in enumerate(row) if v != -1]
        if not free:
            raise EmptyDomain(
                f"no position of {self.puzzle.categories[c].label!r} is left for {self.label(i)!r}"
            )
        return free

    def incompatible_idx(self, i: int, j: int) -> bool:
        if i // self.n == j // self.n:
            return i != j
        return self._rows[i][j] == -1

    def matched_idx(self, i: int, j: int) -> bool:
        if i == j:
            return True
        if i // self.n == j // self.n:
            return False
        return self._rows[i][j] == 1

    # -- basic-consistency bookkeeping -------------------------------------------

    def line_rank(self, i: int, c: int) -> tuple[int, int, int]:
        """Scan rank of the line of element ``i`` against category ``c``.

        Blocks in category-pair order; inside a block rows before columns.
        """
        ci = i // self.n
        if ci < c:
            return (self._pair_rank[ci, c], 0, i % self.n)
        return (self._pair_rank[c, ci], 1, i % self.n)

    def line_status(self, i: int, c: int) -> str | None:
        yes, no = self._yes[i][c], self._no[i][c]
        if yes > 1 or no == self.n:
            return "contradiction"
        if yes == 1 and yes + no < self.n:
            return "exclude"
        if yes == 0 and no == self.n - 1:
            return "complete"
        return None

    def _notify(self, i: int, c: int) -> None:
        if self.line_status(i, c) is not None:
            heapq.heappush(self._pending, (self.line_rank(i, c), i, c))

    def next_basic_line(self) -> tuple[int, int, str] | None:
        """First line (in scan order) where a basic consistency rule applies."""
        while self._pending:
            _, i, c = self._pending[0]
            status = self.line_status(i, c)
            if status is not None:
                return i, c, status
            heapq.heappop(self._pending)
        return None


# Operation-level helpers over labels. Rules use the index-based Grid methods.

def cell_get(grid: Grid, e: str, f: str) -> CellState:
    return grid.get(e, f)


def cell_set(grid: Grid, e: str, f: str, value: CellState) -> bool:
    """Fill a cell. Returns True when it changed, False for a repeated equal write."""
    return grid.set(e, f, value)


def feasible_positions(grid: Grid, x: str, category: str) -> frozenset[int]:
    """0-based positions of ``category`` that element ``x`` may still take."""
    return frozenset(grid.feasible(grid.index(x), grid.puzzle.category_index(category)))


def incompatible(grid: Grid, e: str, f: str) -> bool:
    """True when ``e`` and ``f`` are known to be in different solution tuples."""
    return bool(grid.incompatible_idx(grid.index(e), grid.index(f)))


def entails_match(grid: Grid, e: str, f: str) -> bool:
    return bool(grid.matched_idx(grid.index(e), grid.index(f)))
