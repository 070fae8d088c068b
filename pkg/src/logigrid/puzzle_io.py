"""Puzzle documents, validation, and interactive clue acquisition.

Document format (UTF-8, line oriented, ``#`` starts a comment)::

    puzzle Birth years
    category First_Name: Angela Donald Leo
    category Country: Germany Ireland United_States
    category Year_of_Birth ordered: 1946 1954 1979
    clue 1: yes United_States 1946
    clue 2: after Leo Year_of_Birth Germany
    clue 3: or Donald 1946 Ireland

Labels are single tokens; underscores stand for spaces when explanations are
rendered.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from . import errors
from .model import (
    KINDS,
    PARAMETRIC_KINDS,
    POSITIONAL_KINDS,
    Category,
    Constraint,
    Puzzle,
    normalize_label,
)

# element-label count for kinds with fixed arity
_FIXED_ARITY = {"yes": 2, "no": 2, "or": 3, "xor": 3, "twobytwo": 4}

_ERROR_CLASSES = {
    "SyntaxError": errors.PuzzleSyntaxError,
    "UnknownLabel": errors.UnknownLabel,
    "SameCategoryPair": errors.SameCategory,
    "UnorderedCategory": errors.UnorderedCategory,
    "DuplicateLabel": errors.DuplicateLabel,
    "ArityError": errors.ArityError,
}

_POLARITY_TOKENS = {"+": True, "-": False, "−": False}


@dataclass(frozen=True)
class Issue:
    code: str
    message: str
    line: int | None = None

    def __str__(self) -> str:
        where = f"line {self.line}: " if self.line is not None else ""
        return f"{where}{self.code}: {self.message}"

    def to_error(self) -> errors.LogigridError:
        cls = _ERROR_CLASSES.get(self.code, errors.InvalidPuzzle)
        return cls(f"{self.code}: {self.message}", line=self.line)


# -- validation --------------------------------------------------------------------


def _structure_issues(p: Puzzle) -> list[Issue]:
    issues = []
    if p.k < 2:
        issues.append(Issue("TooFewCategories", f"need at least 2 categories, got {p.k}"))
    sizes = {len(cat.elements) for cat in p.categories}
    if len(sizes) > 1:
        issues.append(Issue("UnequalSizes", f"categories have different sizes {sorted(sizes)}"))
    if p.categories and min(sizes) < 2:
        issues.append(Issue("TooFewElements", "every category needs at least 2 elements"))
    seen: set[str] = set()
    for cat in p.categories:
        for label in cat.elements:
            if label in seen:
                issues.append(Issue("DuplicateLabel", f"element label {label!r} is used twice"))
            seen.add(label)
    cat_labels = [cat.label for cat in p.categories]
    for label in sorted({x for x in cat_labels if cat_labels.count(x) > 1}):
        issues.append(Issue("DuplicateLabel", f"category label {label!r} is used twice"))
    return issues


def constraint_issues(p: Puzzle, c: Constraint) -> list[Issue]:
    """Problems with one constraint against the puzzle's categories."""
    if c.kind not in KINDS:
        return [Issue("SyntaxError", f"unknown constraint kind {c.kind!r}")]
    if c.clue < 0:
        return [Issue("BadClueId", f"clue ids are non-negative, got {c.clue}")]

    labels = c.labels
    if c.kind in _FIXED_ARITY:
        want = _FIXED_ARITY[c.kind]
    elif c.positional:
        want = 3
    elif c.kind == "alldiff":
        want = c.n if c.n is not None else -1
    else:  # disjunction
        want = 2 * c.n if c.n is not None else -1
    if len(labels) != want:
        return [Issue("ArityError", f"{c.kind} expects {want} labels, got {len(labels)}")]
    if c.kind in PARAMETRIC_KINDS:
        least = 2 if c.kind == "alldiff" else 1
        if c.n is None or c.n < least:
            return [Issue("BadParameter", f"{c.kind} needs n >= {least}, got {c.n}")]
    elif c.n is not None:
        return [Issue("BadParameter", f"{c.kind} takes no numeric parameter")]
    if c.kind == "disjunction":
        if c.polarities is None or len(c.polarities) != c.n:
            return [Issue("ArityError", f"disjunction needs {c.n} polarities")]
    elif c.polarities is not None:
        return [Issue("ArityError", f"{c.kind} takes no polarities")]

    issues = []
    element_labels = c.elements
    for label in element_labels:
        if not p.has_label(label):
            issues.append(Issue("UnknownLabel", f"{label!r} is not an element of any category"))
    if c.positional:
        cat_label = labels[1]
        try:
            cat = p.categories[p.category_index(cat_label)]
        except errors.UnknownLabel:
            issues.append(Issue("UnknownLabel", f"{cat_label!r} is not a category"))
        else:
            if not cat.ordered:
                issues.append(Issue("UnorderedCategory",
                                    f"{c.kind} needs an ordered category, {cat_label!r} is not"))
    if issues:
        return issues

    def cat_of(label):
        return p.locate(label)[0]

    def cross(a, b):
        if cat_of(a) == cat_of(b):
            issues.append(Issue("SameCategoryPair", f"{a!r} and {b!r} are in the same category"))

    def distinct(*group):
        if len(set(group)) != len(group):
            issues.append(Issue("RepeatedLabel", f"{c.kind} labels must be distinct: {group}"))

    if c.kind in ("yes", "no"):
        cross(*labels)
    elif c.kind in ("or", "xor"):
        x, y, z = labels
        distinct(y, z)
        cross(x, y)
        cross(x, z)
    elif c.kind == "alldiff":
        distinct(*labels)
    elif c.kind == "twobytwo":
        x, y, w, z = labels
        distinct(x, y)
        distinct(w, z)
        for a in (x, y):
            for b in (w, z):
                cross(a, b)
    elif c.positional:
        distinct(labels[0], labels[2])
    else:
        for x, y, _ in c.disjuncts():
            cross(x, y)
    return issues


def validate_puzzle(p: Puzzle) -> list[Issue]:
    """Every defect of ``p``; an empty list means the puzzle is well formed."""
    issues = _structure_issues(p)
    if any(i.code == "DuplicateLabel" for i in issues):
        return issues
    for c in p.constraints:
        issues.extend(constraint_issues(p, c))
    return issues


# -- parsing -----------------------------------------------------------------------


def _int(token: str, what: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise errors.PuzzleSyntaxError(f"{what} must be an integer, got {token!r}", line) from None


def _parse_clue(head: str, body: str, line: int) -> Constraint:
    parts = head.split()
    if len(parts) != 2:
        raise errors.PuzzleSyntaxError("expected 'clue <id>: <kind> <args...>'", line)
    clue = _int(parts[1], "clue id", line)
    tokens = body.split()
    if not tokens:
        raise errors.PuzzleSyntaxError("missing constraint kind", line)
    kind, args = tokens[0].lower(), tokens[1:]
    if kind not in KINDS:
        raise errors.PuzzleSyntaxError(f"unknown constraint kind {tokens[0]!r}", line)
    if kind not in PARAMETRIC_KINDS:
        return Constraint(clue, kind, tuple(args))
    if not args:
        raise errors.ArityError(f"{kind} needs a numeric parameter", line)
    n = _int(args[0], f"{kind} parameter", line)
    rest = args[1:]
    if kind != "disjunction":
        return Constraint(clue, kind, tuple(rest), n)
    if n < 1 or len(rest) < n:
        raise errors.ArityError(f"disjunction expects {max(n, 1)} polarities", line)
    polarities = []
    for token in rest[:n]:
        if token not in _POLARITY_TOKENS:
            raise errors.PuzzleSyntaxError(f"polarity must be + or -, got {token!r}", line)
        polarities.append(_POLARITY_TOKENS[token])
    return Constraint(clue, kind, tuple(rest[n:]), n, tuple(polarities))


def parse_document(text: str) -> tuple[Puzzle, list[int]]:
    """Parse without validating. Returns the puzzle and each constraint's line number."""
    name = ""
    categories: list[Category] = []
    constraints: list[tuple[Constraint, int]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword = line.split(None, 1)[0]
        if keyword == "puzzle":
            name = line[len("puzzle"):].strip()
        elif keyword in ("category", "clue"):
            head, sep, body = line.partition(":")
            if not sep:
                raise errors.PuzzleSyntaxError(f"missing ':' after {keyword}", number)
            if keyword == "clue":
                constraints.append((_parse_clue(head, body, number), number))
                continue
            parts = head.split()
            ordered = len(parts) == 3 and parts[2] == "ordered"
            if len(parts) != 2 and not ordered:
                raise errors.PuzzleSyntaxError(
                    "expected 'category <Label> [ordered]: <elements...>'", number)
            categories.append(Category(parts[1], tuple(body.split()), ordered))
        else:
            raise errors.PuzzleSyntaxError(f"unknown directive {keyword!r}", number)
    # stable sort by clue id keeps input order inside a clue
    constraints.sort(key=lambda item: item[0].clue)
    puzzle = Puzzle(name, categories, [c for c, _ in constraints])
    return puzzle, [line for _, line in constraints]


def parse_puzzle(text: str) -> Puzzle:
    """Parse and validate a puzzle document, raising on the first defect."""
    puzzle, lines = parse_document(text)
    problems = _structure_issues(puzzle)
    if problems:
        raise problems[0].to_error()
    for c, line in zip(puzzle.constraints, lines):
        problems = constraint_issues(puzzle, c)
        if problems:
            first = problems[0]
            raise Issue(first.code, first.message, line).to_error()
    return puzzle


def load_puzzle(path) -> Puzzle:
    with open(path, encoding="utf-8") as fh:
        return parse_puzzle(fh.read())


def format_constraint(c: Constraint) -> str:
    args = [c.kind]
    if c.n is not None:
        args.append(str(c.n))
    if c.polarities is not None:
        args.extend("+" if pol else "-" for pol in c.polarities)
    args.extend(c.labels)
    return f"clue {c.clue}: " + " ".join(args)


def serialize_puzzle(p: Puzzle) -> str:
    lines = []
    if p.name:
        lines.append(f"puzzle {p.name}")
    for cat in p.categories:
        flag = " ordered" if cat.ordered else ""
        lines.append(f"category {cat.label}{flag}: " + " ".join(cat.elements))
    lines.extend(format_constraint(c) for c in p.constraints)
    return "\n".join(lines) + "\n"


# -- interactive acquisition ---------------------------------------------------------


_KIND_MENU = ", ".join(KINDS)


class ScriptedPrompter:
    """Answers prompts from a fixed list; raises EOFError once exhausted."""

    def __init__(self, answers: Iterable[str]):
        self.answers = list(answers)
        self.prompts: list[str] = []
        self.messages: list[str] = []

    def __call__(self, prompt: str) -> str:
        self.prompts.append(prompt)
        if not self.answers:
            raise EOFError(prompt)
        return self.answers.pop(0)

    def tell(self, message: str) -> None:
        self.messages.append(message)


def acquire_interactive(
    ask: Callable[[str], str],
    tell: Callable[[str], None] | None = None,
    transcript: list[str] | None = None,
) -> Puzzle:
    """Build a puzzle by question and answer, categories first, then constraints.

    Every raw answer is appended to ``transcript`` so that feeding it back through
    :class:`ScriptedPrompter` replays the session. Bad answers are re-asked.
    Ending the input (blank clue number or EOF) finishes the puzzle.
    """
    if tell is None:
        tell = getattr(ask, "tell", lambda message: None)

    def answer(prompt: str) -> str:
        reply = ask(prompt)
        if transcript is not None:
            transcript.append(reply)
        return reply.strip()

    def number(prompt: str, least: int) -> int:
        while True:
            reply = answer(prompt)
            try:
                value = int(reply)
            except ValueError:
                tell(f"{reply!r} is not a whole number")
                continue
            if value >= least:
                return value
            tell(f"the value must be at least {least}")

    name = answer("Puzzle name: ")
    k = number("Number of categories: ", 2)
    categories: list[Category] = []
    used: set[str] = set()
    for index in range(1, k + 1):
        while True:
            label = normalize_label(answer(f"Label of category {index}: "))
            if label and " " not in label and label not in {c.label for c in categories}:
                break
            tell("category labels must be non-empty and distinct")
        ordered = answer(f"Is {label} ordered? [y/n]: ").lower().startswith("y")
        while True:
            elements = answer(f"Elements of {label}, separated by spaces: ").split()
            size = len(categories[0].elements) if categories else None
            if len(elements) < 2 or (size is not None and len(elements) != size):
                tell(f"enter {size or 'at least 2'} elements")
            elif len(set(elements)) != len(elements) or used & set(elements):
                tell("element labels must be unique across the whole puzzle")
            else:
                break
        used.update(elements)
        categories.append(Category(label, tuple(elements), ordered))

    puzzle = Puzzle(name, categories)
    constraints: list[Constraint] = []

    def element(prompt: str) -> str:
        while True:
            label = normalize_label(answer(prompt))
            if puzzle.has_label(label):
                return label
            tell(f"{label!r} is not an element of this puzzle")

    def category(prompt: str) -> str:
        while True:
            label = normalize_label(answer(prompt))
            try:
                puzzle.category_index(label)
                return label
            except errors.UnknownLabel:
                tell(f"{label!r} is not a category of this puzzle")

    while True:
        try:
            reply = answer("Clue of the next constraint (blank to finish): ")
        except EOFError:
            break
        if not reply:
            break
        try:
            clue = int(reply)
        except ValueError:
            tell(f"{reply!r} is not a clue number")
            continue
        if clue < 0:
            tell("clue numbers are non-negative")
            continue
        kind = answer(f"Constraint type ({_KIND_MENU}): ").lower()
        if kind not in KINDS:
            tell(f"unknown constraint type {kind!r}")
            continue
        n = polarities = None
        if kind == "alldiff":
            n = number("How many labels are all distinct? ", 2)
            labels = [element(f"Label X{i}: ") for i in range(1, n + 1)]
        elif kind == "disjunction":
            n = number("Number of disjuncts: ", 1)
            polarities = []
            for i in range(1, n + 1):
                while True:
                    word = answer(f"Polarity of disjunct {i} (is / is not): ").lower()
                    if word in ("is", "+", "positive"):
                        polarities.append(True)
                        break
                    if word in ("is not", "not", "-", "negative"):
                        polarities.append(False)
                        break
                    tell("answer 'is' or 'is not'")
            labels = []
            for i in range(1, n + 1):
                labels.append(element(f"Label X{i}: "))
                labels.append(element(f"Label Y{i}: "))
        elif kind in POSITIONAL_KINDS:
            if kind in PARAMETRIC_KINDS:
                n = number("Value of n: ", 1)
            labels = [element("Label X: "), category("Category label C: "), element("Label Y: ")]
        else:
            names = "XYZ" if kind in ("or", "xor") else ("XYWZ" if kind == "twobytwo" else "XY")
            labels = [element(f"Label {v}: ") for v in names]
        c = Constraint(clue, kind, tuple(labels), n, tuple(polarities) if polarities else None)
        problems = constraint_issues(puzzle, c)
        if problems:
            tell(f"constraint rejected: {problems[0]}; please enter it again")
            continue
        constraints.append(c)
    return Puzzle(name, categories, constraints)
