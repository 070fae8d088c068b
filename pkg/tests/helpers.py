import random

from hypothesis import strategies as st

from logigrid import Category, Constraint, Grid, Puzzle, load_bundled, satisfies
from logigrid.model import KINDS, POSITIONAL_KINDS
from logigrid.puzzle_io import constraint_issues

ROUNDS = [4, 7, 3, 9, 1, 3]  # clue fills, BCR, clue fills, BCR, A1, BCR


def running():
    return load_bundled("birthyears")


def replay(puzzle, events, upto=None):
    """Fresh grid with the first ``upto`` event fills applied."""
    grid = Grid(puzzle)
    for ev in events[:upto]:
        grid.set(*ev.cell, ev.value)
    return grid


def cells_of(grid):
    """{frozenset({e, f}): value} over every known cell."""
    return {frozenset(cell): int(v) for cell, v in grid.known_cells().items()}


def _candidate(rng, p, kind, clue):
    labels = [e for cat in p.categories for e in cat.elements]
    pick = lambda: rng.choice(labels)  # noqa: E731
    if kind in ("yes", "no"):
        return Constraint(clue, kind, (pick(), pick()))
    if kind in ("or", "xor"):
        return Constraint(clue, kind, (pick(), pick(), pick()))
    if kind == "alldiff":
        size = rng.randint(2, min(4, len(labels)))
        return Constraint(clue, kind, tuple(rng.sample(labels, size)), size)
    if kind == "twobytwo":
        return Constraint(clue, kind, tuple(pick() for _ in range(4)))
    if kind == "disjunction":
        d = rng.randint(1, 3)
        polarities = tuple(rng.random() < 0.6 for _ in range(d))
        return Constraint(clue, kind, tuple(pick() for _ in range(2 * d)), d, polarities)
    cat = rng.choice([c for c in p.categories if c.ordered])
    x = pick()
    y = rng.choice(cat.elements) if rng.random() < 0.2 else pick()
    n = None if kind in ("before", "after") else rng.randint(1, p.n - 1)
    return Constraint(clue, kind, (x, cat.label, y), n)


def random_instance(rng: random.Random, min_k=2, max_k=4, max_n=4, max_clues=10, truthful=True):
    """A valid puzzle together with a hidden solution.

    With ``truthful`` every constraint holds in the hidden solution, so that
    solution is always among the puzzle's solutions.
    """
    k = rng.randint(min_k, max_k)
    n = rng.randint(2, max_n)
    cats = []
    for c in range(k):
        name = "Cat_" + "ABCDEF"[c]
        cats.append(Category(name, tuple(f"{'abcdef'[c]}{i}" for i in range(n)), rng.random() < 0.5))
    if not any(c.ordered for c in cats) and rng.random() < 0.7:
        cats[-1] = Category(cats[-1].label, cats[-1].elements, True)
    shuffled = [list(c.elements) for c in cats]
    for column in shuffled[1:]:
        rng.shuffle(column)
    solution = tuple(tuple(column[t] for column in shuffled) for t in range(n))

    base = Puzzle("Random", cats, [])
    kinds = [kd for kd in KINDS if kd not in POSITIONAL_KINDS or any(c.ordered for c in cats)]
    constraints = []
    clue = rng.randint(0, 1)
    for _ in range(rng.randint(0, max_clues)):
        kind = rng.choice(kinds)
        for _ in range(50):
            c = _candidate(rng, base, kind, clue)
            if constraint_issues(base, c):
                continue
            if truthful and not satisfies(base, solution, c):
                continue
            constraints.append(c)
            break
        if rng.random() < 0.8:
            clue += 1
    return Puzzle("Random", cats, constraints), solution


instances = st.randoms(use_true_random=False).map(random_instance)
wide_instances = st.randoms(use_true_random=False).map(lambda rng: random_instance(rng, min_k=3))
any_puzzles = st.randoms(use_true_random=False).map(
    lambda rng: random_instance(rng, truthful=False)[0])
