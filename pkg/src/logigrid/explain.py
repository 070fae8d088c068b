"""Deduction events and their human-readable rendering.

Every rule application produces a :class:`DeductionEvent` that names the cell
it fills, the rule, the cells it read, and a template with arguments. Rendering
is plain placeholder substitution into frozen English templates; labels are
quoted and underscores shown as spaces.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import EmptyDomain, SameCategory, TargetNeverFilled
from .model import CellState, Constraint, Grid, Puzzle, display_label, normalize_label

BASIC_RULES = frozenset({"B1", "B2"})
ADVANCED_RULES = frozenset({"A1", "A2"})

TEMPLATES = {
    "given": "{stmt} (Clue {clue}).",
    "given_so": "{stmt} (Clue {clue}), so {concl}.",
    "given_and_so": "{stmt} (Clue {clue}), and {premise}, so {concl}.",
    "bound": "{stmt} (Clue {clue}), so {rank}, so {concl}.",
    "bound_premise": "{premise}, and {stmt_that} (Clue {clue}), so {rank}, so {concl}.",
    "exclusion": "{e} is {g}, so {e} is not {f}.",
    "last_option": "{premise}, so {e} is {f}.",
    "transitivity": "{e} is {g} and {g} is {f}, so {e} is {f}.",
    # no rendered line for this rule exists in the literature; wording is ours
    "elimination": "No element of {cat} can be matched with both {e} and {f}, so {e} is not {f}.",
}
GROUP_TEMPLATE = "{count} cells can be filled from basic consistency."
DISCARD_TEMPLATE = "Clue {clue} can now be discarded."


@dataclass(frozen=True)
class DeductionEvent:
    """One cell fill with the rule that justified it.

    ``premises`` lists the cells (with their values) the rule read; unconditional
    clue fills have none. ``rule`` is the constraint kind for clue rules, or one
    of B1, B2, A1, A2.
    """

    cell: tuple[str, str]
    value: CellState
    rule: str
    clue: int | None = None
    premises: tuple[tuple[str, str, CellState], ...] = ()
    template: str = "given"
    args: dict = field(default_factory=dict, compare=False)
    constraint: Constraint | None = None
    seq: int = -1
    text: str = ""

    @property
    def basic(self) -> bool:
        return self.rule in BASIC_RULES


@dataclass
class ExplanationOptions:
    group_bcr: bool = True
    stepwise: bool = False
    announce_discards: bool = False
    target_cell: tuple[str, str] | None = None


# -- rendering -----------------------------------------------------------------------


def quote(label: str) -> str:
    return f'"{display_label(label)}"'


def plural(count: int, word: str = "element") -> str:
    return f"{count} {word}" if count == 1 else f"{count} {word}s"


def _join(items: Sequence[str], last: str) -> str:
    if len(items) == 1:
        return items[0]
    return ", ".join(items[:-1]) + f" {last} " + items[-1]


def phrase(spec) -> str:
    """Render a phrase tuple such as ``("is_not", "Leo", "Germany")``."""
    if isinstance(spec, str):
        return quote(spec)
    op, *rest = spec
    if op == "is":
        return f"{quote(rest[0])} is {quote(rest[1])}"
    if op == "is_not":
        return f"{quote(rest[0])} is not {quote(rest[1])}"
    if op == "neither":
        w, y, z = rest
        return f"{quote(w)} is neither {quote(y)} nor {quote(z)}"
    if op == "both":
        w, y, z = rest
        return f"{quote(w)} is both {quote(y)} and {quote(z)}"
    if op == "not_any":
        subject, others = rest
        return f"{quote(subject)} is not " + _join([quote(o) for o in others], "or")
    if op == "rank":
        subject, side, count, category, one_of = rest
        if count == 1 and not one_of:
            where = f"the {side} element"
        else:
            where = f"one of the {side} {plural(count)}"
        scope = "that category" if category is None else f"the {quote(category)} category"
        return f"{quote(subject)} is not {where} in {scope}"
    if op == "and":
        return ", and ".join(phrase(p) for p in rest[0])
    raise ValueError(f"unknown phrase {op!r}")


_POSITIONAL_WORDS = {
    "before": "before",
    "after": "after",
    "beforefixed": "exactly {n} before",
    "afterfixed": "exactly {n} after",
    "beforeatleast": "at least {n} before",
    "afteratleast": "at least {n} after",
    "distance": "exactly {n} from",
}


def statement(c: Constraint, that: bool = False) -> str:
    """The constraint restated in words, as it appears at the head of a line."""
    q = [quote(label) for label in c.labels]
    if c.kind == "yes":
        return f"{q[0]} is {q[1]}"
    if c.kind == "no":
        return f"{q[0]} is not {q[1]}"
    if c.kind == "or":
        return f"{q[0]} is {q[1]} or {q[2]}"
    if c.kind == "xor":
        return f"{q[0]} is either {q[1]} or {q[2]}"
    if c.kind == "alldiff":
        return _join(q, "and") + " are all different"
    if c.kind == "twobytwo":
        return f"Out of {q[0]} and {q[1]}, one is {q[2]} and the other is {q[3]}"
    if c.kind == "disjunction":
        parts = [
            f"{quote(x)} is {quote(y)}" if pol else f"{quote(x)} is not {quote(y)}"
            for x, y, pol in c.disjuncts()
        ]
        return " or ".join(parts)
    relation = _POSITIONAL_WORDS[c.kind]
    if "{n}" in relation:
        relation = relation.replace("{n}", plural(c.n))
    scope = "that category" if that else f"the {q[1]} category"
    return f"{q[0]} is {relation} {q[2]} in {scope}"


def render_event(ev: DeductionEvent) -> str:
    values = {}
    for key, value in ev.args.items():
        values[key] = str(value) if isinstance(value, int) else phrase(value)
    if ev.constraint is not None:
        values["stmt"] = statement(ev.constraint)
        values["stmt_that"] = statement(ev.constraint, that=True)
        values["clue"] = ev.constraint.clue
    return TEMPLATES[ev.template].format(**values)


# -- discards --------------------------------------------------------------------------


def _feasible_or_none(grid: Grid, i: int, c: int):
    try:
        return grid.feasible(i, c)
    except EmptyDomain:
        return None


def constraint_entailed(grid: Grid, c: Constraint) -> bool:
    """Whether the filled cells alone show ``c`` to be satisfied."""
    idx = [grid.index(label) for label in c.elements]
    match, apart = grid.matched_idx, grid.incompatible_idx
    if c.kind == "yes":
        return bool(match(*idx))
    if c.kind == "no":
        return bool(apart(*idx))
    if c.kind == "or":
        x, y, z = idx
        return bool(match(x, y) or match(x, z))
    if c.kind == "xor":
        x, y, z = idx
        return bool((match(x, y) and apart(x, z)) or (match(x, z) and apart(x, y)))
    if c.kind == "alldiff":
        return all(apart(a, b) for n, a in enumerate(idx) for b in idx[n + 1:])
    if c.kind == "twobytwo":
        x, y, w, z = idx
        return bool(
            (match(x, w) and match(y, z) and apart(x, z) and apart(y, w))
            or (match(x, z) and match(y, w) and apart(x, w) and apart(y, z))
        )
    if c.kind == "disjunction":
        pairs = zip(idx[0::2], idx[1::2])
        return any(bool(match(a, b) if pol else apart(a, b))
                   for (a, b), pol in zip(pairs, c.polarities))
    cat = grid.puzzle.category_index(c.category)
    xs, ys = _feasible_or_none(grid, idx[0], cat), _feasible_or_none(grid, idx[1], cat)
    if xs is None or ys is None:
        return False
    if c.kind in ("before", "beforeatleast"):
        return max(xs) + c.gap <= min(ys)
    if c.kind in ("after", "afteratleast"):
        return max(ys) + c.gap <= min(xs)
    if len(xs) != 1 or len(ys) != 1:
        return False
    offset = xs[0] - ys[0]
    if c.kind == "beforefixed":
        return -offset == c.n
    if c.kind == "afterfixed":
        return offset == c.n
    return abs(offset) == c.n


def detect_discard(grid: Grid, clue_id: int, constraints: Iterable[Constraint]) -> bool:
    """True once every constraint of clue ``clue_id`` is visibly satisfied by the grid."""
    own = [c for c in constraints if c.clue == clue_id]
    return bool(own) and all(constraint_entailed(grid, c) for c in own)


def discard_points(puzzle: Puzzle, events: Sequence[DeductionEvent]) -> dict[int, list[int]]:
    """Map event position (-1 for the start) to the clues that become discardable there."""
    grid = Grid(puzzle)
    pending = puzzle.clue_ids()
    points: dict[int, list[int]] = {}

    def check(position):
        nonlocal pending
        done = [cid for cid in pending if detect_discard(grid, cid, puzzle.constraints)]
        if done:
            points[position] = done
            pending = [cid for cid in pending if cid not in done]

    check(-1)
    for position, ev in enumerate(events):
        grid.set(*ev.cell, ev.value)
        check(position)
    return points


# -- grouping, hints, slicing ---------------------------------------------------------------


def group_events(
    events: Sequence[DeductionEvent],
    opts: ExplanationOptions | None = None,
    puzzle: Puzzle | None = None,
) -> list[str]:
    """Output lines for ``events``; runs of basic consistency fills collapse to one line."""
    opts = opts or ExplanationOptions()
    if opts.target_cell is not None:
        events = slice_for_cell(events, opts.target_cell, puzzle)
    discards: dict[int, list[int]] = {}
    if opts.announce_discards:
        if puzzle is None:
            raise ValueError("announcing discards needs the puzzle")
        discards = discard_points(puzzle, events)

    lines = [DISCARD_TEMPLATE.format(clue=cid) for cid in discards.get(-1, [])]
    i = 0
    while i < len(events):
        if opts.group_bcr and events[i].basic:
            j = i
            while j < len(events) and events[j].basic:
                j += 1
            lines.append(GROUP_TEMPLATE.format(count=j - i))
        else:
            j = i + 1
            lines.append(events[i].text or render_event(events[i]))
        for position in range(i, j):
            lines.extend(DISCARD_TEMPLATE.format(clue=cid) for cid in discards.get(position, []))
        i = j
    return lines


class HintStream:
    """Hands out explanation lines one at a time."""

    def __init__(self, lines: Sequence[str], position: int = 0):
        self.lines = list(lines)
        self.position = position

    def next(self) -> str | None:
        if self.position >= len(self.lines):
            return None
        line = self.lines[self.position]
        self.position += 1
        return line

    @property
    def exhausted(self) -> bool:
        return self.position >= len(self.lines)

    def __iter__(self):
        while (line := self.next()) is not None:
            yield line


def next_hint(stream: HintStream) -> str | None:
    return stream.next()


def _cell_key(e: str, f: str) -> frozenset:
    return frozenset((normalize_label(e), normalize_label(f)))


def slice_for_cell(
    events: Sequence[DeductionEvent],
    target: tuple[str, str],
    puzzle: Puzzle | None = None,
) -> list[DeductionEvent]:
    """The events needed to justify ``target``: its own fill plus, transitively,
    the fills of every premise cell. Order is preserved."""
    e, f = target
    if normalize_label(e) == normalize_label(f):
        raise SameCategory(f"{e!r} cannot be paired with itself")
    if puzzle is not None and puzzle.locate(e)[0] == puzzle.locate(f)[0]:
        raise SameCategory(f"{e!r} and {f!r} belong to the same category")
    filled_by = {_cell_key(*ev.cell): n for n, ev in enumerate(events)}
    start = filled_by.get(_cell_key(e, f))
    if start is None:
        raise TargetNeverFilled(f"the solve never determined cell ({e}, {f})")
    kept = {start}
    todo = [start]
    while todo:
        ev = events[todo.pop()]
        for a, b, _ in ev.premises:
            n = filled_by.get(_cell_key(a, b))
            if n is not None and n not in kept:
                kept.add(n)
                todo.append(n)
    return [events[n] for n in sorted(kept)]


# -- structured log -----------------------------------------------------------------------


def event_record(ev: DeductionEvent) -> dict:
    return {
        "seq": ev.seq,
        "cell": list(ev.cell),
        "value": str(ev.value),
        "rule": ev.rule,
        "clue": ev.clue,
        "premises": [[a, b, str(v)] for a, b, v in ev.premises],
        "text": ev.text,
    }


def event_log(events: Iterable[DeductionEvent]) -> str:
    """Line-delimited JSON, one record per event."""
    return "".join(json.dumps(event_record(ev), ensure_ascii=False) + "\n" for ev in events)
