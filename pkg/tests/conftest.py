import functools

import pytest

from resorder.census import CensusSpec, census_run

SAMPLE_G = ("2", "3", "4", "5", "8", "9", "-2", "-3", "-196", "25", "2048", "6^9")


@functools.lru_cache(maxsize=None)
def cached_census(g: str, n: int, pairs=((1, 2), (4, 4), (3, 3)), index_moduli=(3,)):
    return census_run(g, n, CensusSpec(pairs, index_moduli))


@pytest.fixture(scope="session")
def census_g2_small():
    return cached_census("2", 10**5)


# one line per acceptance criterion, shown again at the end of the run
ACCEPTANCE_LINES: list[str] = []


def record(label: str, ok: bool, detail: str) -> bool:
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
