"""Ground truth independent of the inference rules.

``enumerate_solutions`` backtracks over matchings and checks each constraint by
its plain meaning; ``count_models`` is an exhaustive DPLL over a CNF. Neither
uses anything from the rule engine.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterator

from .cnf import Cnf
from .model import Constraint, Grid, Puzzle

Solution = tuple[tuple[str, ...], ...]


class _Matching:
    """Partial assignment: ``perm[c][t]`` is the position in category c of tuple t."""

    def __init__(self, puzzle: Puzzle):
        self.p = puzzle
        n = puzzle.n
        self.perm: list[tuple[int, ...] | None] = [None] * puzzle.k
        self.inverse: list[list[int] | None] = [None] * puzzle.k
        self.assign(0, tuple(range(n)))

    def assign(self, c: int, perm: tuple[int, ...]) -> None:
        self.perm[c] = perm
        inverse = [0] * len(perm)
        for t, pos in enumerate(perm):
            inverse[pos] = t
        self.inverse[c] = inverse

    def tuple_of(self, label: str) -> int:
        c, pos = self.p.locate(label)
        return self.inverse[c][pos]

    def position(self, label: str, category: str) -> int:
        return self.perm[self.p.category_index(category)][self.tuple_of(label)]

    def solution(self) -> Solution:
        cats = self.p.categories
        return tuple(
            tuple(cat.elements[self.perm[c][t]] for c, cat in enumerate(cats))
            for t in range(self.p.n)
        )


def holds(m: _Matching, c: Constraint) -> bool:
    """Direct reading of a constraint on a (sufficiently assigned) matching."""
    same = lambda a, b: m.tuple_of(a) == m.tuple_of(b)  # noqa: E731
    if c.kind == "yes":
        return same(*c.labels)
    if c.kind == "no":
        return not same(*c.labels)
    if c.kind == "or":
        x, y, z = c.labels
        return same(x, y) or same(x, z)
    if c.kind == "xor":
        x, y, z = c.labels
        return same(x, y) != same(x, z)
    if c.kind == "alldiff":
        tuples = [m.tuple_of(label) for label in c.labels]
        return len(set(tuples)) == len(tuples)
    if c.kind == "twobytwo":
        x, y, w, z = c.labels
        first = same(x, w) and same(y, z) and not same(x, z) and not same(y, w)
        second = same(x, z) and same(y, w) and not same(x, w) and not same(y, z)
        return first or second
    if c.kind == "disjunction":
        return any(same(x, y) == pol for x, y, pol in c.disjuncts())
    x, cat, y = c.labels
    px, py = m.position(x, cat), m.position(y, cat)
    if c.kind == "before":
        return px < py
    if c.kind == "after":
        return px > py
    if c.kind == "beforefixed":
        return py - px == c.n
    if c.kind == "afterfixed":
        return px - py == c.n
    if c.kind == "beforeatleast":
        return py - px >= c.n
    if c.kind == "afteratleast":
        return px - py >= c.n
    return abs(px - py) == c.n


def _from_solution(p: Puzzle, solution: Solution) -> _Matching:
    m = _Matching(p)
    rows = sorted(solution, key=lambda row: p.locate(row[0])[1])
    for c in range(1, p.k):
        m.assign(c, tuple(p.locate(row[c])[1] for row in rows))
    return m


def satisfies(p: Puzzle, solution: Solution, c: Constraint | None = None) -> bool:
    """Whether ``solution`` meets constraint ``c`` (or every constraint of ``p``)."""
    m = _from_solution(p, solution)
    constraints = p.constraints if c is None else [c]
    return all(holds(m, x) for x in constraints)


def _categories_used(p: Puzzle, c: Constraint) -> set[int]:
    used = {p.locate(label)[0] for label in c.elements}
    if c.positional:
        used.add(p.category_index(c.category))
    return used


def _assignment_order(p: Puzzle, used: list[set[int]]) -> list[int]:
    """Categories after the first, greedily picking whichever completes most constraints."""
    done, order = {0}, []
    rest = list(range(1, p.k))
    while rest:
        best = max(rest, key=lambda c: (sum(u <= done | {c} for u in used), -c))
        order.append(best)
        rest.remove(best)
        done.add(best)
    return order


def iter_solutions(p: Puzzle) -> Iterator[Solution]:
    """All solutions; category 1 keeps its order so each solution appears once.

    A constraint is checked as soon as every category it mentions is assigned.
    """
    k, n = p.k, p.n
    used = [_categories_used(p, c) for c in p.constraints]
    order = _assignment_order(p, used)
    step = {0: 0} | {c: depth + 1 for depth, c in enumerate(order)}
    ready: list[list[Constraint]] = [[] for _ in range(k)]
    for c, cats in zip(p.constraints, used):
        ready[max(step[x] for x in cats)].append(c)
    m = _Matching(p)
    if not all(holds(m, c) for c in ready[0]):
        return

    def extend(depth: int):
        if depth == k:
            yield m.solution()
            return
        cat = order[depth - 1]
        for perm in permutations(range(n)):
            m.assign(cat, perm)
            if all(holds(m, c) for c in ready[depth]):
                yield from extend(depth + 1)
        m.perm[cat] = None

    yield from extend(1)


def enumerate_solutions(p: Puzzle, limit: int = 2) -> list[Solution]:
    found = []
    for solution in iter_solutions(p):
        found.append(solution)
        if len(found) >= limit:
            break
    return found


def solution_from_grid(grid: Grid) -> Solution | None:
    """Read a completed grid as solution tuples (None if some match is missing)."""
    rows = []
    for i in range(grid.n):
        row = []
        for c in range(grid.k):
            partner = grid.partner(i, c)
            if partner is None:
                return None
            row.append(grid.label(partner))
        rows.append(tuple(row))
    return tuple(rows)


# -- model counting ------------------------------------------------------------------------


class _Dpll:
    def __init__(self, cnf: Cnf):
        self.num_vars = cnf.num_vars
        self.value = [0] * (cnf.num_vars + 1)
        self.trail: list[int] = []
        self.watches: dict[int, list[list[int]]] = {}
        self.clauses: list[list[int]] = []
        self.units: list[int] = []
        self.empty = False
        for raw in cnf.clauses:
            clause = list(dict.fromkeys(raw))
            if any(-lit in clause for lit in clause):
                continue
            if not clause:
                self.empty = True
            elif len(clause) == 1:
                self.units.append(clause[0])
            else:
                self.clauses.append(clause)
                self.watches.setdefault(clause[0], []).append(clause)
                self.watches.setdefault(clause[1], []).append(clause)

    def lit_value(self, lit: int) -> int:
        v = self.value[abs(lit)]
        return v if lit > 0 else -v

    def enqueue(self, lit: int) -> bool:
        v = self.lit_value(lit)
        if v:
            return v > 0
        self.value[abs(lit)] = 1 if lit > 0 else -1
        self.trail.append(lit)
        return True

    def propagate(self, head: int) -> bool:
        while head < len(self.trail):
            false_lit = -self.trail[head]
            head += 1
            watching = self.watches.get(false_lit, [])
            keep = []
            for n, clause in enumerate(watching):
                if clause[0] == false_lit:
                    clause[0], clause[1] = clause[1], clause[0]
                if self.lit_value(clause[0]) > 0:
                    keep.append(clause)
                    continue
                for j in range(2, len(clause)):
                    if self.lit_value(clause[j]) >= 0:
                        clause[1], clause[j] = clause[j], clause[1]
                        self.watches.setdefault(clause[1], []).append(clause)
                        break
                else:
                    keep.append(clause)
                    if not self.enqueue(clause[0]):
                        keep.extend(watching[n + 1:])
                        self.watches[false_lit] = keep
                        return False
            self.watches[false_lit] = keep
        return True

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            self.value[abs(self.trail.pop())] = 0

    def pick(self) -> int | None:
        """An unassigned variable from the tightest unsatisfied clause."""
        best, best_free = None, None
        for clause in self.clauses:
            free = None
            count = 0
            for lit in clause:
                v = self.lit_value(lit)
                if v > 0:
                    break
                if v == 0:
                    count += 1
                    free = free or lit
            else:
                if count and (best_free is None or count < best_free):
                    best, best_free = abs(free), count
                    if count == 2:
                        break
        if best is not None:
            return best
        for var in range(1, self.num_vars + 1):
            if self.value[var] == 0:
                return var
        return None

    def count(self, limit: int, models: list | None) -> int:
        if self.empty or not all(self.enqueue(lit) for lit in self.units):
            return 0
        if not self.propagate(0):
            return 0
        return self._search(limit, models)

    def _search(self, limit: int, models: list | None) -> int:
        var = self.pick()
        if var is None:
            if models is not None:
                models.append(list(self.trail))
            return 1
        total = 0
        for lit in (var, -var):
            mark = len(self.trail)
            self.enqueue(lit)
            if self.propagate(mark):
                total += self._search(limit - total, models)
            self.undo(mark)
            if total >= limit:
                break
        return total


def count_models(cnf: Cnf, limit: int = 2) -> int:
    """Number of satisfying assignments, capped at ``limit``."""
    return min(_Dpll(cnf).count(limit, None), limit)


def find_models(cnf: Cnf, limit: int = 2) -> list[list[int]]:
    """Up to ``limit`` satisfying assignments, each as the list of true/false literals."""
    models: list[list[int]] = []
    _Dpll(cnf).count(limit, models)
    return [sorted(model, key=abs) for model in models[:limit]]
