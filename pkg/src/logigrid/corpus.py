"""The puzzles shipped with the package."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .model import Puzzle
from .puzzle_io import parse_puzzle

_SUFFIX = ".puzzle"


def _folder():
    return resources.files(__package__).joinpath("puzzles")


def bundled_names() -> list[str]:
    """Names of the well-formed, uniquely solvable puzzles."""
    return sorted(
        entry.name[: -len(_SUFFIX)]
        for entry in _folder().iterdir()
        if entry.name.endswith(_SUFFIX)
    )


def bundled_path(name: str) -> Path | None:
    """Path of a bundled puzzle given its name, with or without the suffix.

    Defective examples are reached as ``defective/<name>``.
    """
    parts = Path(name).parts[-2:]
    if len(parts) == 2 and parts[0] != "defective":
        parts = parts[1:]
    stem = parts[-1]
    if stem.endswith(_SUFFIX):
        stem = stem[: -len(_SUFFIX)]
    entry = _folder().joinpath(*parts[:-1], stem + _SUFFIX)
    return Path(str(entry)) if entry.is_file() else None


def load_bundled(name: str) -> Puzzle:
    path = bundled_path(name)
    if path is None:
        raise FileNotFoundError(f"no bundled puzzle named {name!r}")
    return parse_puzzle(path.read_text(encoding="utf-8"))


def defective_names() -> list[str]:
    return sorted(
        "defective/" + entry.name[: -len(_SUFFIX)]
        for entry in _folder().joinpath("defective").iterdir()
        if entry.name.endswith(_SUFFIX)
    )
