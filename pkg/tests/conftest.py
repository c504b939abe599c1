import pytest

from cyclo.criteria import Workspace
from cyclo.modarith import DLog, make_ctx


@pytest.fixture(scope="session")
def ctx511():
    return make_ctx(5, 11)


@pytest.fixture(scope="session")
def d511(ctx511):
    return DLog(ctx511)


@pytest.fixture(scope="session")
def workspaces():
    cache = {}

    def get(p, N, g=None):
        key = (p, N, g)
        if key not in cache:
            cache[key] = Workspace.build(p, N, g=g)
        return cache[key]
    return get


def trial_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def primes_1_mod(p, lo, hi):
    return [N for N in range(max(lo, 5), hi + 1) if N % p == 1 and trial_prime(N)]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
