import pathlib

import numpy as np
import pytest

from lamspace import specfile

ROOT = pathlib.Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def one_leaf():
    return specfile.load_lamination(FIXTURES / "one_leaf.json")


@pytest.fixture(scope="session")
def five_leaves():
    return specfile.load_lamination(FIXTURES / "five_leaves.json")


@pytest.fixture(scope="session")
def empty_dom():
    return specfile.load_lamination(FIXTURES / "empty.json")


@pytest.fixture(scope="session")
def half_plane():
    return specfile.load_lamination(FIXTURES / "half_plane.json")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# acceptance criteria lines, echoed in the terminal summary


def pytest_configure(config):
    config.acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def record(request):
    """Print and keep one PASS/FAIL line for an acceptance criterion."""
    def emit(number, title, checks):
        ok = all(c.passed for c in checks)
        detail = "; ".join(f"{c.name} = {c.value:.3g} ({'<=' if c.upper else '>='} {c.bound:g})" for c in checks)
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}: {detail}"
        print(line)
        request.config.acceptance_lines.append(line)
        return ok
    return emit
