"""Explainable solver for logic grid puzzles."""

from .cnf import Cnf, decode_model, encode, read_dimacs, var_index, write_dimacs
from .corpus import bundled_names, bundled_path, defective_names, load_bundled
from .errors import (
    ArityError,
    Contradiction,
    DuplicateLabel,
    EmptyDomain,
    InvalidPuzzle,
    LogigridError,
    PuzzleSyntaxError,
    SameCategory,
    TargetNeverFilled,
    UnknownLabel,
    UnorderedCategory,
)
from .explain import (
    DeductionEvent,
    ExplanationOptions,
    HintStream,
    detect_discard,
    event_log,
    group_events,
    next_hint,
    render_event,
    slice_for_cell,
)
from .inference import SolveResult, Status, acr_step, bcr_step, clue_rule_pass, solve
from .model import (
    KINDS,
    Category,
    CellState,
    Constraint,
    Grid,
    Puzzle,
    cell_get,
    cell_set,
    entails_match,
    feasible_positions,
    incompatible,
)
from .oracle import (
    count_models,
    enumerate_solutions,
    find_models,
    satisfies,
    solution_from_grid,
)
from .puzzle_io import (
    ScriptedPrompter,
    acquire_interactive,
    load_puzzle,
    parse_puzzle,
    serialize_puzzle,
    validate_puzzle,
)

__version__ = "0.1.0"
