"""CNF encoding of a puzzle over its grid cells, and DIMACS output.

Variable layout: the block of categories ``(a, b)``, ``a < b``, has rank ``r``
in lexicographic pair order; the cell of element ``i`` of ``a`` and element
``j`` of ``b`` (positions 0-based) is variable ``r * n * n + i * n + j + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import SameCategory, UnorderedCategory
from .model import Constraint, Puzzle


@dataclass
class Cnf:
    num_vars: int
    clauses: list[list[int]] = field(default_factory=list)
    var_map: dict[int, tuple[str, str]] = field(default_factory=dict)

    def cell_var(self) -> dict[tuple[str, str], int]:
        return {cell: var for var, cell in self.var_map.items()}


def _pair_rank(k: int, a: int, b: int) -> int:
    return sum(k - 1 - x for x in range(a)) + (b - a - 1)


def var_index(p: Puzzle, e: str, f: str) -> int:
    """DIMACS variable of cell (e, f); symmetric in its arguments."""
    (a, i), (b, j) = p.locate(e), p.locate(f)
    if a == b:
        raise SameCategory(f"{e!r} and {f!r} belong to the same category")
    if a > b:
        a, b, i, j = b, a, j, i
    n = p.n
    return _pair_rank(p.k, a, b) * n * n + i * n + j + 1


_RELATIONS = {
    "before": lambda p, q, n: p < q,
    "after": lambda p, q, n: p > q,
    "beforefixed": lambda p, q, n: q - p == n,
    "afterfixed": lambda p, q, n: p - q == n,
    "beforeatleast": lambda p, q, n: q - p >= n,
    "afteratleast": lambda p, q, n: p - q >= n,
    "distance": lambda p, q, n: abs(p - q) == n,
}


def _constraint_clauses(p: Puzzle, c: Constraint) -> list[list[int]]:
    v = lambda e, f: var_index(p, e, f)  # noqa: E731
    if c.kind == "yes":
        return [[v(*c.labels)]]
    if c.kind == "no":
        return [[-v(*c.labels)]]
    if c.kind in ("or", "xor"):
        x, y, z = c.labels
        clauses = [[v(x, y), v(x, z)]]
        if c.kind == "xor":
            clauses.append([-v(x, y), -v(x, z)])
        return clauses
    if c.kind == "alldiff":
        return [[-v(a, b)] for a, b in combinations(c.labels, 2)
                if p.locate(a)[0] != p.locate(b)[0]]
    if c.kind == "twobytwo":
        x, y, w, z = c.labels
        return [
            [v(x, w), v(x, z)],
            [v(y, w), v(y, z)],
            [-v(x, w), v(y, z)],
            [-v(x, z), v(y, w)],
            [-v(x, w), -v(x, z)],
        ]
    if c.kind == "disjunction":
        return [[v(x, y) if pol else -v(x, y) for x, y, pol in c.disjuncts()]]

    x, cat_label, y = c.labels
    cat = p.categories[p.category_index(cat_label)]
    if not cat.ordered:
        raise UnorderedCategory(f"{c.kind} needs an ordered category, {cat_label!r} is not")
    holds = _RELATIONS[c.kind]
    size = len(cat.elements)

    def places(label):
        # (position, literal or None when the label is itself in the category)
        if label in cat.elements:
            return [(cat.elements.index(label), None)]
        return [(pos, -v(label, cat.elements[pos])) for pos in range(size)]

    clauses = []
    for px, lx in places(x):
        for py, ly in places(y):
            if not holds(px, py, c.n):
                clauses.append([lit for lit in (lx, ly) if lit is not None])
    return clauses


def encode(p: Puzzle) -> Cnf:
    """Bijection clauses per block, transitivity channeling, then one group per constraint."""
    k, n = p.k, p.n
    cnf = Cnf(n * n * k * (k - 1) // 2)
    cats = p.categories
    for a in range(k):
        for b in range(a + 1, k):
            for i, e in enumerate(cats[a].elements):
                for j, f in enumerate(cats[b].elements):
                    cnf.var_map[var_index(p, e, f)] = (e, f)
    cnf.var_map = dict(sorted(cnf.var_map.items()))

    for a in range(k):
        for b in range(a + 1, k):
            rows = [[var_index(p, e, f) for f in cats[b].elements] for e in cats[a].elements]
            columns = [list(col) for col in zip(*rows)]
            for line in rows + columns:
                cnf.clauses.append(list(line))
                cnf.clauses.extend([-u, -w] for u, w in combinations(line, 2))

    # without channeling, per-block bijections admit non-transitive assignments
    for a in range(k):
        for b in range(a + 1, k):
            for c in range(k):
                if c in (a, b):
                    continue
                for e in cats[a].elements:
                    for f in cats[b].elements:
                        ef = var_index(p, e, f)
                        for g in cats[c].elements:
                            cnf.clauses.append([-var_index(p, e, g), -var_index(p, g, f), ef])

    for constraint in p.constraints:
        cnf.clauses.extend(_constraint_clauses(p, constraint))
    return cnf


def write_dimacs(cnf: Cnf) -> str:
    lines = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    lines.extend(f"c cell {var} = {e}|{f}" for var, (e, f) in cnf.var_map.items())
    lines.extend(" ".join(map(str, clause + [0])) for clause in cnf.clauses)
    return "\n".join(lines) + "\n"


def read_dimacs(text: str) -> Cnf:
    """Inverse of :func:`write_dimacs` (cell comments restore the variable map)."""
    cnf = Cnf(0)
    pending: list[int] = []
    for line in text.splitlines():
        tokens = line.split()
        if not tokens:
            continue
        if tokens[0] == "p":
            cnf.num_vars = int(tokens[2])
        elif tokens[0] == "c":
            if len(tokens) == 5 and tokens[1] == "cell":
                e, f = tokens[4].split("|")
                cnf.var_map[int(tokens[2])] = (e, f)
        else:
            for lit in map(int, tokens):
                if lit == 0:
                    cnf.clauses.append(pending)
                    pending = []
                else:
                    pending.append(lit)
    return cnf


def decode_model(cnf: Cnf, model) -> set[tuple[str, str]]:
    """Cells set to yes by a model given as a collection of true literals."""
    return {cnf.var_map[lit] for lit in model if lit > 0 and lit in cnf.var_map}
