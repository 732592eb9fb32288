from __future__ import annotations

import sys
from importlib import resources

import pytest

from em1.laws import world
from em1.program import load_program


def corpus_path(name: str) -> str:
    return str(resources.files("em1") / "corpus" / name)


@pytest.fixture(scope="session")
def w():
    return world()


@pytest.fixture(scope="session")
def sq():
    return load_program(corpus_path("sq.em1"))


@pytest.fixture(scope="session")
def core():
    return load_program(corpus_path("core.em1"))


def pytest_terminal_summary(terminalreporter):
    lines = []
    for mod in list(sys.modules.values()):
        lines = getattr(mod, "ACCEPTANCE_LINES", None) or lines
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for key in sorted(lines):
            terminalreporter.write_line(lines[key])
