from pathlib import Path

import pytest

from vers.config import VersConfig

DATA = Path(__file__).parent / "data"
CONFIGS = Path(__file__).parent.parent / "configs"

# criterion id -> (passed, detail), filled by test_acceptance
ACCEPTANCE: dict = {}


@pytest.fixture
def example1():
    return VersConfig.create(10007, 3, 3, adversaries=[1, 2], v=2, f=(0, 0, 1))


@pytest.fixture
def small_adv():
    """d=2, K=3, beta=1, v=2, N=10 over GF(97)."""
    return VersConfig.create(97, 3, 10, adversaries=[1], v=2, f=(0, 0, 1))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE, key=lambda c: int(c.split()[0])):
        ok, detail = ACCEPTANCE[cid]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {cid}: {detail}")
