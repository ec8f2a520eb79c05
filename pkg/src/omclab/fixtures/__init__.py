"""Bundled input files for the command-line front end and the test suite."""

from pathlib import Path

__all__ = ["path", "names"]


def path(name: str) -> Path:
    """Absolute path of a bundled fixture file."""
    p = Path(__file__).resolve().parent / name
    if not p.exists():
        raise FileNotFoundError(f"no bundled fixture named {name!r}")
    return p


def names() -> list[str]:
    return sorted(p.name for p in Path(__file__).resolve().parent.glob("*.json"))
