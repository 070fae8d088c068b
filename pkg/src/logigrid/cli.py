"""Command line entry point: ``logigrid <subcommand> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import cnf as cnf_export
from .corpus import bundled_path
from .errors import LogigridError
from .explain import ExplanationOptions, HintStream, event_log
from .inference import SolveResult, Status, solve
from .model import Grid, Puzzle, display_label, normalize_label
from .oracle import count_models, enumerate_solutions, solution_from_grid
from .puzzle_io import (
    ScriptedPrompter,
    acquire_interactive,
    parse_puzzle,
    serialize_puzzle,
    validate_puzzle,
)

OK, DEFECT, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def resolve(name: str) -> Path:
    """A path on disk, or failing that the bundled puzzle of that name."""
    path = Path(name)
    if path.is_file():
        return path
    bundled = bundled_path(name)
    if bundled is None:
        raise UsageError(f"no such puzzle file: {name}")
    return bundled


def read_puzzle(name: str) -> tuple[Path, Puzzle]:
    path = resolve(name)
    return path, parse_puzzle(path.read_text(encoding="utf-8"))


def render_grid(grid: Grid) -> str:
    """ASCII version of the usual staircase layout.

    Columns hold categories 2..k; the first row band is category 1, followed by
    categories k down to 3, each band spanning only the columns to its left.
    Cells show ``Y`` for yes, ``.`` for no and a blank while unknown.
    """
    p = grid.puzzle
    k, n = p.k, p.n
    symbol = {1: "Y", -1: ".", 0: " "}
    columns = list(range(1, k))
    bands = [0] + list(range(k - 1, 1, -1))
    heads = {c: display_label(p.categories[c].label) for c in columns}
    wide = {c: max(2 * n - 1, len(heads[c])) for c in columns}
    left = max(len(display_label(e)) for c in bands for e in p.categories[c].elements) + 1
    tall = max(len(display_label(e)) for c in columns for e in p.categories[c].elements)

    def row(first, parts):
        return first.ljust(left) + "|" + "|".join(parts) + "|"

    lines = [row("", [heads[c].center(wide[c]) for c in columns])]
    for r in range(tall):
        lines.append(row("", [
            " ".join(display_label(e).rjust(tall)[r] for e in p.categories[c].elements).center(wide[c])
            for c in columns]))
    for band, row_cat in enumerate(bands):
        span = columns[: len(columns) - band]
        lines.append("-" * left + "+" + "+".join("-" * wide[c] for c in span) + "+")
        for pos in range(n):
            i = grid.member(row_cat, pos)
            lines.append(row(display_label(grid.label(i)), [
                " ".join(symbol[grid.at(i, grid.member(c, q))] for q in range(n)).center(wide[c])
                for c in span]))
    lines.append("-" * left + "+" + "+".join("-" * wide[c] for c in columns[:1]) + "+")
    return "\n".join(lines) + "\n"


def _options(args) -> ExplanationOptions:
    return ExplanationOptions(
        group_bcr=not args.no_group,
        announce_discards=args.discards,
    )


def _solve_and_log(puzzle: Puzzle, args) -> SolveResult:
    result = solve(puzzle)
    if getattr(args, "log", None):
        Path(args.log).write_text(event_log(result.events), encoding="utf-8")
    return result


def cmd_solve(args, out) -> int:
    _, puzzle = read_puzzle(args.file)
    result = _solve_and_log(puzzle, args)
    out.write(result.explanation(_options(args)))
    out.write("\n")
    out.write(render_grid(result.grid))
    if result.status is not Status.SOLVED:
        out.write(f"\n{result.status}: {result.message}\n")
        return DEFECT
    return OK


def hint_state_path(name: str, path: Path) -> Path:
    # bundled puzzles may live somewhere read-only, so their progress stays local
    if Path(name).is_file():
        return Path(str(path) + ".hintstate")
    return Path(path.name + ".hintstate")


def cmd_hint(args, out) -> int:
    path, puzzle = read_puzzle(args.file)
    state = hint_state_path(args.file, path)
    if args.reset:
        state.unlink(missing_ok=True)
        return OK
    position = 0
    if state.is_file():
        try:
            position = int(state.read_text(encoding="utf-8").strip() or 0)
        except ValueError:
            position = 0
    stream = HintStream(solve(puzzle).lines(_options(args)), position)
    line = stream.next()
    if line is not None:
        out.write(line + "\n")
    state.write_text(f"{stream.position}\n", encoding="utf-8")
    return OK


def cmd_explain_cell(args, out) -> int:
    _, puzzle = read_puzzle(args.file)
    result = _solve_and_log(puzzle, args)
    opts = _options(args)
    opts = ExplanationOptions(
        group_bcr=opts.group_bcr,
        announce_discards=opts.announce_discards,
        target_cell=(normalize_label(args.e), normalize_label(args.f)),
    )
    out.write(result.explanation(opts))
    return OK


def cmd_export_cnf(args, out) -> int:
    _, puzzle = read_puzzle(args.file)
    text = cnf_export.write_dimacs(cnf_export.encode(puzzle))
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return OK


def verdict(puzzle: Puzzle, limit: int) -> tuple[bool, str]:
    """(ok, text) for one puzzle: oracle uniqueness, CNF count and solver agreement."""
    issues = validate_puzzle(puzzle)
    if issues:
        return False, f"invalid ({issues[0]})"
    solutions = enumerate_solutions(puzzle, limit)
    models = count_models(cnf_export.encode(puzzle), limit)
    result = solve(puzzle)
    count = len(solutions)
    detail = f"solver {result.status}, oracle {count}, cnf {models}"
    if models != count:
        return False, f"cnf-mismatch ({detail})"
    if count == 0:
        return False, f"unsat ({detail})"
    if count >= limit and limit > 1:
        return False, f"ambiguous(≥{count}) ({detail})"
    if count > 1:
        return False, f"ambiguous({count}) ({detail})"
    if result.status is Status.STUCK:
        return False, f"stuck ({detail})"
    if result.status is Status.CONTRADICTION:
        return False, f"contradiction ({detail})"
    if solution_from_grid(result.grid) != solutions[0]:
        return False, f"disagreement ({detail})"
    return True, "ok"


def cmd_validate(args, out) -> int:
    status = OK
    for name in args.files:
        try:
            _, puzzle = read_puzzle(name)
        except LogigridError as exc:
            out.write(f"{name}: invalid ({exc})\n")
            status = DEFECT
            continue
        ok, text = verdict(puzzle, args.limit)
        out.write(f"{name}: {text}\n")
        if not ok:
            status = DEFECT
    return status


def cmd_acquire(args, out) -> int:
    transcript: list[str] = []
    if args.answers:
        lines = Path(args.answers).read_text(encoding="utf-8").splitlines()
        ask = ScriptedPrompter(lines)
    else:
        def ask(prompt: str) -> str:
            return input(prompt)
        ask.tell = lambda message: print(message, file=sys.stderr)
    puzzle = acquire_interactive(ask, transcript=transcript)
    Path(args.out).write_text(serialize_puzzle(puzzle), encoding="utf-8")
    if args.transcript:
        Path(args.transcript).write_text("".join(a + "\n" for a in transcript), encoding="utf-8")
    out.write(f"wrote {args.out}\n")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="logigrid", description="Explainable logic grid puzzle solver.")
    sub = parser.add_subparsers(dest="command", required=True)

    def explanation_flags(p):
        p.add_argument("--no-group", action="store_true", help="one line per basic consistency fill")
        p.add_argument("--discards", action="store_true", help="announce clues that can be discarded")

    p = sub.add_parser("solve", help="solve and explain")
    p.add_argument("file")
    explanation_flags(p)
    p.add_argument("--log", metavar="FILE", help="write the deduction events as JSON lines")
    p.set_defaults(run=cmd_solve)

    p = sub.add_parser("hint", help="print the next explanation line")
    p.add_argument("file")
    explanation_flags(p)
    p.add_argument("--reset", action="store_true", help="forget the saved progress")
    p.set_defaults(run=cmd_hint)

    p = sub.add_parser("explain-cell", help="explain only what one cell needs")
    p.add_argument("file")
    p.add_argument("e")
    p.add_argument("f")
    explanation_flags(p)
    p.add_argument("--log", metavar="FILE")
    p.set_defaults(run=cmd_explain_cell)

    p = sub.add_parser("export-cnf", help="write the puzzle as DIMACS CNF")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_export_cnf)

    p = sub.add_parser("validate", help="check puzzles for a unique, derivable solution")
    p.add_argument("files", nargs="+")
    p.add_argument("--limit", type=int, default=2, help="stop counting solutions here (default 2)")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("acquire", help="enter a puzzle by answering questions")
    p.add_argument("out")
    p.add_argument("--answers", metavar="FILE", help="read the answers from a file")
    p.add_argument("--transcript", metavar="FILE", help="save the raw answers")
    p.set_defaults(run=cmd_acquire)
    return parser


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if getattr(args, "limit", 2) < 1:
        print("logigrid: --limit must be at least 1", file=sys.stderr)
        return USAGE
    try:
        return args.run(args, out)
    except UsageError as exc:
        print(f"logigrid: {exc}", file=sys.stderr)
        return USAGE
    except (LogigridError, KeyError) as exc:
        print(f"logigrid: {exc}", file=sys.stderr)
        return DEFECT
    except EOFError:
        print("logigrid: input ended before the puzzle was complete", file=sys.stderr)
        return DEFECT


def main() -> None:
    sys.exit(run())
