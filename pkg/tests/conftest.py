from __future__ import annotations

from functools import lru_cache
from pathlib import Path

import pytest

from psublab.groupdef import build, read_grp
from psublab.lattice import enumerate_lattice

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# criterion number -> (passed, message); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def corpus_names() -> list[str]:
    return sorted(p.stem for p in FIXTURES.glob("*.grp"))


@lru_cache(maxsize=None)
def entry(name: str):
    return read_grp(FIXTURES / f"{name}.grp")


@lru_cache(maxsize=None)
def group(name: str):
    return build(entry(name).spec)


@lru_cache(maxsize=None)
def lattice(name: str):
    return enumerate_lattice(group(name), cap=entry(name).lattice_cap)


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {msg}")
