"""Bundled Coxeter polyhedra, loaded by name."""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..coxeter import CoxeterMatrix, parse_coxeter_input


def fixture_names() -> list[str]:
    return sorted(p.name[:-5] for p in resources.files(__name__).iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> CoxeterMatrix:
    path = resources.files(__name__) / f"{name}.json"
    if not path.is_file():
        raise KeyError(f"no fixture {name!r}; available: {', '.join(fixture_names())}")
    return parse_coxeter_input(path.read_text())


def load_input(arg: str) -> CoxeterMatrix:
    """Read a JSON file, or a bundled fixture when ``arg`` names one and no such file exists."""
    p = Path(arg)
    if p.is_file():
        return parse_coxeter_input(p.read_text())
    if arg in fixture_names():
        return load_fixture(arg)
    raise FileNotFoundError(f"{arg!r} is neither a file nor a bundled fixture ({', '.join(fixture_names())})")
