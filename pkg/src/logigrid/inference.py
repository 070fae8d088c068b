"""Human-style inference: clue rules, basic and advanced consistency, and the scheduler.

The scheduler reads the constraints in order once per round, then applies basic
consistency until nothing changes, and only when a whole round made no progress
applies a single advanced consistency fill before starting the next round.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import Contradiction
from .explain import DeductionEvent, ExplanationOptions, group_events, render_event
from .model import CellState, Constraint, Grid, Puzzle

YES, NO = CellState.YES, CellState.NO


class Status(str, enum.Enum):
    SOLVED = "solved"
    STUCK = "stuck"
    CONTRADICTION = "contradiction"

    def __str__(self) -> str:
        return self.value


@dataclass
class SolveResult:
    grid: Grid
    events: list[DeductionEvent]
    status: Status
    message: str = ""

    @property
    def puzzle(self) -> Puzzle:
        return self.grid.puzzle

    def lines(self, opts: ExplanationOptions | None = None) -> list[str]:
        return group_events(self.events, opts, self.puzzle)

    def explanation(self, opts: ExplanationOptions | None = None) -> str:
        return "".join(line + "\n" for line in self.lines(opts))

    def solution(self) -> list[tuple[str, ...]] | None:
        """Solution tuples ordered like the first category, or None unless solved."""
        if self.status is not Status.SOLVED:
            return None
        g = self.grid
        return [
            tuple(g.label(g.partner(i, c)) for c in range(g.k))
            for i in range(g.n)
        ]


# -- clue rules --------------------------------------------------------------------------


class _ClueApplication:
    """Applies the fills of one constraint and records the ones that changed a cell."""

    def __init__(self, grid: Grid, constraint: Constraint):
        self.grid = grid
        self.c = constraint
        self.fills: list[DeductionEvent] = []

    def cell(self, i: int, j: int) -> tuple[str, str, CellState]:
        return (self.grid.label(i), self.grid.label(j), CellState(self.grid.at(i, j)))

    def put(self, i: int, j: int, value: CellState, template: str, premises=(), **args) -> None:
        recorded = tuple(self.cell(a, b) for a, b in premises)
        if self.grid.put(i, j, value):
            self.fills.append(DeductionEvent(
                cell=(self.grid.label(i), self.grid.label(j)),
                value=value,
                rule=self.c.kind,
                clue=self.c.clue,
                premises=recorded,
                template=template,
                args=args,
                constraint=self.c,
            ))

    def label(self, i: int) -> str:
        return self.grid.label(i)

    def cross(self, i: int, j: int) -> bool:
        return self.grid.cat(i) != self.grid.cat(j)


def _or_rules(app: _ClueApplication, x: int, y: int, z: int) -> None:
    g, L = app.grid, app.label
    if g.incompatible_idx(x, y):
        app.put(x, z, YES, "given_and_so", [(x, y)],
                premise=("is_not", L(x), L(y)), concl=("is", L(x), L(z)))
    if g.incompatible_idx(x, z):
        app.put(x, y, YES, "given_and_so", [(x, z)],
                premise=("is_not", L(x), L(z)), concl=("is", L(x), L(y)))
    for w in range(g.k * g.n):
        if g.cat(w) == g.cat(x) or g.at(x, w) != 0:
            continue
        if g.incompatible_idx(w, y) and g.incompatible_idx(w, z):
            cells = [(w, v) for v in (y, z) if app.cross(w, v)]
            app.put(x, w, NO, "given_and_so", cells,
                    premise=("neither", L(w), L(y), L(z)), concl=("is_not", L(x), L(w)))


def _rule_yes(app, x, y):
    app.put(x, y, YES, "given")


def _rule_no(app, x, y):
    app.put(x, y, NO, "given")


def _rule_or(app, x, y, z):
    _or_rules(app, x, y, z)


def _rule_xor(app, x, y, z):
    g, L = app.grid, app.label
    _or_rules(app, x, y, z)
    for a, b in ((y, z), (z, y)):
        if g.matched_idx(x, a):
            app.put(x, b, NO, "given_and_so", [(x, a)],
                    premise=("is", L(x), L(a)), concl=("is_not", L(x), L(b)))
    for w in range(g.k * g.n):
        if g.cat(w) == g.cat(x) or g.at(x, w) != 0:
            continue
        if g.matched_idx(w, y) and g.matched_idx(w, z):
            if w == y:
                premise = ("is", L(y), L(z))
            elif w == z:
                premise = ("is", L(z), L(y))
            else:
                premise = ("both", L(w), L(y), L(z))
            cells = [(w, v) for v in (y, z) if v != w]
            app.put(x, w, NO, "given_and_so", cells,
                    premise=premise, concl=("is_not", L(x), L(w)))


def _rule_alldiff(app, *members):
    L = app.label
    for n, a in enumerate(members):
        for b in members[n + 1:]:
            if app.cross(a, b):
                app.put(a, b, NO, "given_so", concl=("is_not", L(a), L(b)))


def _rule_twobytwo(app, x, y, w, z):
    g, L = app.grid, app.label
    _or_rules(app, x, w, z)
    _or_rules(app, y, w, z)
    # a known match fixes the whole pairing
    for a, b, other, rest in ((x, w, y, z), (x, z, y, w), (y, w, x, z), (y, z, x, w)):
        if g.matched_idx(a, b):
            app.put(other, rest, YES, "given_and_so", [(a, b)],
                    premise=("is", L(a), L(b)), concl=("is", L(other), L(rest)))
            if app.cross(b, rest):
                app.put(a, rest, NO, "given_and_so", [(a, b)],
                        premise=("is", L(a), L(b)), concl=("is_not", L(a), L(rest)))
    # a known non-match forces the other pairing
    for a, b, other, rest in ((x, w, y, z), (x, z, y, w), (y, w, x, z), (y, z, x, w)):
        if g.incompatible_idx(a, b):
            app.put(a, rest, YES, "given_and_so", [(a, b)],
                    premise=("is_not", L(a), L(b)), concl=("is", L(a), L(rest)))
            app.put(other, b, YES, "given_and_so", [(a, b)],
                    premise=("is_not", L(a), L(b)), concl=("is", L(other), L(b)))


def _rule_disjunction(app, *labels):
    g, L = app.grid, app.label
    pairs = list(zip(labels[0::2], labels[1::2], app.c.polarities))
    open_ = []
    refutations, cells = [], []
    for a, b, positive in pairs:
        if positive and g.incompatible_idx(a, b):
            refutations.append(("is_not", L(a), L(b)))
            cells.append((a, b))
        elif not positive and g.matched_idx(a, b):
            refutations.append(("is", L(a), L(b)))
            cells.append((a, b))
        else:
            open_.append((a, b, positive))
    if not open_:
        raise Contradiction(f"every disjunct of clue {app.c.clue} is refuted")
    if len(open_) > 1:
        return
    a, b, positive = open_[0]
    concl = ("is", L(a), L(b)) if positive else ("is_not", L(a), L(b))
    value = YES if positive else NO
    if refutations:
        app.put(a, b, value, "given_and_so", cells, premise=("and", refutations), concl=concl)
    else:
        app.put(a, b, value, "given_so", concl=concl)


# -- positional rules ----------------------------------------------------------------------


def _exclusion(app: _ClueApplication, v: int, c: int, pos: int):
    """Why element ``v`` cannot sit at position ``pos`` of category ``c``: (phrase, cells)."""
    g, L = app.grid, app.label
    target = g.member(c, pos)
    if g.cat(v) == c or g.at(v, target) == -1:
        cells = [] if g.cat(v) == c else [(v, target)]
        return ("is_not", L(v), L(target)), cells
    partner = g.partner(v, c)
    return ("is", L(v), L(partner)), [(v, partner)]


def _lower_bound(app, later: int, earlier: int, c: int, gap: int) -> None:
    """``later`` sits at least ``gap`` positions after ``earlier`` in category ``c``."""
    g, L = app.grid, app.label
    if g.cat(later) == c:
        return
    low = min(g.feasible(earlier, c))
    cut = low + gap
    cat_label = g.puzzle.categories[c].label
    for q in g.feasible(later, c):
        if q >= cut:
            continue
        target = g.member(c, q)
        concl = ("is_not", L(later), L(target))
        if low == 0 or g.cat(earlier) == c:
            app.put(later, target, NO, "bound",
                    rank=("rank", L(later), "first", cut, None, False), concl=concl)
        else:
            cells = [(earlier, g.member(c, p)) for p in range(low) if g.at(earlier, g.member(c, p)) == -1]
            if len(cells) < low:
                cells.append((earlier, g.partner(earlier, c)))
            app.put(later, target, NO, "bound_premise", cells,
                    premise=("rank", L(earlier), "first", low, cat_label, True),
                    rank=("rank", L(later), "first", cut, cat_label, True), concl=concl)


def _upper_bound(app, earlier: int, later: int, c: int, gap: int) -> None:
    g, L = app.grid, app.label
    if g.cat(earlier) == c:
        return
    high = max(g.feasible(later, c))
    cut = high - gap
    size = g.n
    count = size - 1 - cut
    cat_label = g.puzzle.categories[c].label
    for p in g.feasible(earlier, c):
        if p <= cut:
            continue
        target = g.member(c, p)
        concl = ("is_not", L(earlier), L(target))
        if high == size - 1 or g.cat(later) == c:
            app.put(earlier, target, NO, "bound",
                    rank=("rank", L(earlier), "last", count, None, False), concl=concl)
        else:
            above = range(high + 1, size)
            cells = [(later, g.member(c, q)) for q in above if g.at(later, g.member(c, q)) == -1]
            if len(cells) < len(above):
                cells.append((later, g.partner(later, c)))
            app.put(earlier, target, NO, "bound_premise", cells,
                    premise=("rank", L(later), "last", size - 1 - high, cat_label, True),
                    rank=("rank", L(earlier), "last", count, cat_label, True), concl=concl)


def _identity(app, x, y):
    if app.cross(x, y):
        app.put(x, y, NO, "given_so", concl=("is_not", app.label(x), app.label(y)))


def _rule_order(app, x, c, y):
    """before/after and their at-least forms: bounds reasoning on feasible positions."""
    gap = app.c.gap
    _identity(app, x, y)
    if app.c.kind in ("before", "beforeatleast"):
        _upper_bound(app, x, y, c, gap)
        _lower_bound(app, y, x, c, gap)
    else:
        _lower_bound(app, x, y, c, gap)
        _upper_bound(app, y, x, c, gap)


def _known_position(g: Grid, v: int, c: int) -> int | None:
    if g.cat(v) == c:
        return g.pos(v)
    partner = g.partner(v, c)
    return None if partner is None else g.pos(partner)


def _force_partner(app, known: int, other: int, c: int, p: int, q: int, extra=()) -> None:
    """``known`` sits at ``p``, so ``other`` must sit at ``q``."""
    g, L = app.grid, app.label
    if g.cat(other) == c:
        return
    target = g.member(c, q)
    premises, cells = [], []
    if g.cat(known) != c:
        premises.append(("is", L(known), L(g.member(c, p))))
        cells.append((known, g.member(c, p)))
    for phrase, why in extra:
        premises.append(phrase)
        cells.extend(why)
    concl = ("is", L(other), L(target))
    if premises:
        app.put(other, target, YES, "given_and_so", cells, premise=("and", premises), concl=concl)
    else:
        app.put(other, target, YES, "given_so", concl=concl)


def _rule_fixed(app, x, c, y):
    """Exact offset: pos(y) = pos(x) + shift."""
    g, L = app.grid, app.label
    n = app.c.n
    shift = n if app.c.kind == "beforefixed" else -n
    size = g.n
    _identity(app, x, y)
    for v, w, d in ((x, y, shift), (y, x, -shift)):
        if g.cat(v) == c:
            continue
        for p in g.feasible(v, c):
            q = p + d
            target = g.member(c, p)
            concl = ("is_not", L(v), L(target))
            if not 0 <= q < size:
                side = "last" if d > 0 else "first"
                app.put(v, target, NO, "bound", rank=("rank", L(v), side, n, None, False), concl=concl)
            elif q not in g.feasible(w, c):
                phrase, cells = _exclusion(app, w, c, q)
                app.put(v, target, NO, "given_and_so", cells, premise=phrase, concl=concl)
    for v, w, d in ((x, y, shift), (y, x, -shift)):
        p = _known_position(g, v, c)
        if p is not None and 0 <= p + d < size:
            _force_partner(app, v, w, c, p, p + d)


def _rule_distance(app, x, c, y):
    g, L = app.grid, app.label
    n = app.c.n
    size = g.n
    _identity(app, x, y)
    for v, w in ((x, y), (y, x)):
        if g.cat(v) == c:
            continue
        for p in g.feasible(v, c):
            around = [q for q in (p - n, p + n) if 0 <= q < size]
            feasible_w = g.feasible(w, c)
            if any(q in feasible_w for q in around):
                continue
            target = g.member(c, p)
            concl = ("is_not", L(v), L(target))
            if not around:
                app.put(v, target, NO, "given_so", concl=concl)
                continue
            reasons = [_exclusion(app, w, c, q) for q in around]
            cells = [cell for _, why in reasons for cell in why]
            if len(reasons) == 2 and all(r[0][0] == "is_not" for r in reasons):
                premise = ("neither", L(w), L(g.member(c, around[0])), L(g.member(c, around[1])))
            else:
                premise = ("and", [r[0] for r in reasons])
            app.put(v, target, NO, "given_and_so", cells, premise=premise, concl=concl)
    for v, w in ((x, y), (y, x)):
        p = _known_position(g, v, c)
        if p is None:
            continue
        feasible_w = g.feasible(w, c)
        around = [q for q in (p - n, p + n) if 0 <= q < size]
        options = [q for q in around if q in feasible_w]
        if len(options) != 1:
            continue
        extra = [_exclusion(app, w, c, q) for q in around if q not in feasible_w]
        _force_partner(app, v, w, c, p, options[0], extra)


_CLUE_RULES: dict[str, Callable] = {
    "yes": _rule_yes,
    "no": _rule_no,
    "or": _rule_or,
    "xor": _rule_xor,
    "alldiff": _rule_alldiff,
    "twobytwo": _rule_twobytwo,
    "before": _rule_order,
    "after": _rule_order,
    "beforeatleast": _rule_order,
    "afteratleast": _rule_order,
    "beforefixed": _rule_fixed,
    "afterfixed": _rule_fixed,
    "distance": _rule_distance,
    "disjunction": _rule_disjunction,
}


def clue_rule_pass(grid: Grid, constraint: Constraint) -> list[DeductionEvent]:
    """Apply each currently applicable rule of ``constraint`` once, in the fixed per-kind order.

    The grid is updated as the rules fire; the returned events are the fills that
    changed a cell (unnumbered, unrendered).
    """
    app = _ClueApplication(grid, constraint)
    _CLUE_RULES[constraint.kind](app, *_indices(grid, constraint))
    return app.fills


def _indices(grid: Grid, constraint: Constraint) -> tuple[int, ...]:
    if constraint.positional:
        x, cat, y = constraint.labels
        return (grid.index(x), grid.puzzle.category_index(cat), grid.index(y))
    return tuple(grid.index(label) for label in constraint.labels)


# -- consistency rules -------------------------------------------------------------------------


def _cell(g: Grid, i: int, j: int) -> tuple[str, str, CellState]:
    return (g.label(i), g.label(j), CellState(g.at(i, j)))


def bcr_step(grid: Grid) -> DeductionEvent | None:
    """Apply the first basic consistency fill in block scan order, if any.

    B1: a yes in a block row or column makes its other cells no.
    B2: n-1 noes in a block row or column make the last cell yes.
    """
    found = grid.next_basic_line()
    if found is None:
        return None
    i, c, status = found
    n = grid.n
    span = range(c * n, (c + 1) * n)
    if status == "contradiction":
        raise Contradiction(
            f"{grid.label(i)!r} has no consistent match in {grid.puzzle.categories[c].label!r}"
        )
    if status == "exclude":
        g = grid.partner(i, c)
        j = next(j for j in span if grid.at(i, j) == 0)
        premises = (_cell(grid, i, g),)
        grid.put(i, j, NO)
        return DeductionEvent((grid.label(i), grid.label(j)), NO, "B1", None, premises,
                              "exclusion", {"e": grid.label(i), "g": grid.label(g), "f": grid.label(j)})
    j = next(j for j in span if grid.at(i, j) == 0)
    others = [o for o in span if o != j]
    premises = tuple(_cell(grid, i, o) for o in others)
    grid.put(i, j, YES)
    return DeductionEvent((grid.label(i), grid.label(j)), YES, "B2", None, premises, "last_option",
                          {"premise": ("not_any", grid.label(i), [grid.label(o) for o in others]),
                           "e": grid.label(i), "f": grid.label(j)})


@lru_cache(maxsize=None)
def _layout(k: int, n: int):
    """Upper cross-category cells in scan order, and per-category membership masks."""
    cats = np.arange(k * n) // n
    rank = {}
    for a in range(k):
        for b in range(a + 1, k):
            rank[a, b] = len(rank)
    cells = [(rank[cats[i], cats[j]], i, j)
             for i in range(k * n) for j in range(k * n) if cats[i] < cats[j]]
    order = np.array([i * k * n + j for _, i, j in sorted(cells)], dtype=np.intp)
    outside = [cats != c for c in range(k)]
    return order, outside


def _first_in_scan(mask: np.ndarray, order: np.ndarray) -> tuple[int, int] | None:
    hits = mask.ravel()[order]
    if not hits.any():
        return None
    return divmod(int(order[int(np.argmax(hits))]), mask.shape[1])


def _transitivity(grid: Grid) -> DeductionEvent | None:
    values, n = grid.values, grid.n
    order, _ = _layout(grid.k, n)
    yes = (values == 1).astype(np.int32)
    # same-category entries are 0, so two-step paths only go through third categories
    forced = (yes @ yes) > 0
    clash = _first_in_scan(forced & (values == -1), order)
    if clash is not None:
        e, f = clash
        raise Contradiction(
            f"transitivity forces ({grid.label(e)}, {grid.label(f)}) to yes but it is no")
    found = _first_in_scan(forced & (values == 0), order)
    if found is None:
        return None
    e, f = found
    g = next(g for g in range(grid.k * n) if values[e, g] == 1 and values[g, f] == 1)
    premises = (_cell(grid, e, g), _cell(grid, g, f))
    grid.put(e, f, YES)
    return DeductionEvent(
        (grid.label(e), grid.label(f)), YES, "A1", None, premises, "transitivity",
        {"e": grid.label(e), "g": grid.label(g), "f": grid.label(f)})


def _elimination(grid: Grid) -> DeductionEvent | None:
    values, n, k = grid.values, grid.n, grid.k
    order, outside = _layout(k, n)
    open_cells = (values != -1).astype(np.int32)
    hits = []
    for c in range(k):
        mid = slice(c * n, (c + 1) * n)
        shared = open_cells[:, mid] @ open_cells[mid, :]
        hits.append((shared == 0) & outside[c][:, None] & outside[c][None, :])
    excluded = np.logical_or.reduce(hits)
    if _first_in_scan(excluded & (values == 1), order) is not None:
        raise Contradiction("a matched pair has no common partner in some category")
    found = _first_in_scan(excluded & (values == 0), order)
    if found is None:
        return None
    e, f = found
    c = next(c for c in range(k) if hits[c][e, f])
    premises = tuple(
        _cell(grid, e, g) if values[e, g] == -1 else _cell(grid, g, f)
        for g in range(c * n, (c + 1) * n)
    )
    grid.put(e, f, NO)
    return DeductionEvent(
        (grid.label(e), grid.label(f)), NO, "A2", None, premises, "elimination",
        {"cat": grid.puzzle.categories[c].label, "e": grid.label(e), "f": grid.label(f)})


def acr_step(grid: Grid) -> DeductionEvent | None:
    """Apply one advanced consistency fill: transitivity first, then pairwise elimination.

    A1: (e,g) yes and (g,f) yes make (e,f) yes.
    A2: if every element of a third category is excluded for e or for f, (e,f) is no.
    """
    return _transitivity(grid) or _elimination(grid)


def elimination_applies(grid: Grid, e: str, f: str, category: str) -> bool:
    """Whether pairwise elimination through ``category`` rules out the pair (e, f)."""
    i, j = grid.index(e), grid.index(f)
    c = grid.puzzle.category_index(category)
    return all(
        grid.incompatible_idx(i, g) or grid.incompatible_idx(g, j)
        for g in range(c * grid.n, (c + 1) * grid.n)
    )


# -- scheduler ------------------------------------------------------------------------------------


def solve(puzzle: Puzzle) -> SolveResult:
    """Run the human-order schedule until solved, stuck, or contradictory."""
    grid = Grid(puzzle)
    events: list[DeductionEvent] = []

    def record(fills) -> bool:
        for ev in fills:
            # events are fresh and unshared here, so numbering them in place is safe
            object.__setattr__(ev, "seq", len(events))
            object.__setattr__(ev, "text", render_event(ev))
            events.append(ev)
        return bool(fills)

    try:
        while True:
            if grid.is_complete():
                _verify_complete(grid)
                return SolveResult(grid, events, Status.SOLVED)
            progress = False
            for constraint in puzzle.constraints:
                progress |= record(clue_rule_pass(grid, constraint))
            while (ev := bcr_step(grid)) is not None:
                progress = record([ev])
            if progress or grid.is_complete():
                continue
            ev = acr_step(grid)
            if ev is None:
                return SolveResult(grid, events, Status.STUCK,
                                   f"{grid.unknown_count()} cells remain unknown and no rule applies")
            record([ev])
    except Contradiction as exc:
        return SolveResult(grid, events, Status.CONTRADICTION, str(exc))


def _verify_complete(grid: Grid) -> None:
    """A full grid must still satisfy every rule; violations raise Contradiction."""
    for constraint in grid.puzzle.constraints:
        if clue_rule_pass(grid, constraint):
            raise AssertionError("a complete grid cannot gain fills")
    if bcr_step(grid) is not None:
        raise AssertionError("a complete grid cannot gain fills")
    _transitivity(grid)
