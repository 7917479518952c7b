"""Shared oracles and the acceptance-line reporter.

The brute-force counters here are deliberately naive (nested loops over
itertools.product); they are the reference the fast implementations are
judged against, so they must stay obviously correct.
"""

from itertools import product

import pytest

from zpcount import Subset

_ACCEPTANCE_LINES: list[str] = []


def record_acceptance(number: int, passed: bool, text: str) -> None:
    line = f"[criterion {number:2d}] {'PASS' if passed else 'FAIL'} - {text}"
    _ACCEPTANCE_LINES.append(line)
    print(line, flush=True)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(line)


def brute_s_count(a0: Subset, sets) -> int:
    """#{(x_0,...,x_k): x_0 = x_1 + ... + x_k}, one loop per coordinate."""
    p = a0.p
    hits = 0
    for tail in product(*(s.members() for s in sets)):
        if sum(tail) % p in a0:
            hits += 1
    return hits


def brute_s_k(a: Subset, k: int) -> int:
    return brute_s_count(a, [a] * k)


def brute_sigma(sets) -> list[int]:
    p = sets[0].p
    vec = [0] * p
    for tail in product(*(s.members() for s in sets)):
        vec[sum(tail) % p] += 1
    return vec


@pytest.fixture
def rng():
    import random

    return random.Random(0xC0FFEE)
