import itertools
from pathlib import Path

import pytest

from pchains.catalog import catalog

FIXTURES = Path(__file__).parent / "fixtures"


def naive_closure(G, gens):
    """Square the element set until it stops growing."""
    mul = G.rows
    S = {0, *gens}
    while True:
        T = {mul[a][b] for a in S for b in S}
        if T == S:
            return frozenset(S)
        S = T | S


def naive_subgroups(G, max_gens=3):
    """Every subgroup generated by at most ``max_gens`` elements."""
    out = set()
    for k in range(max_gens + 1):
        for gens in itertools.combinations(range(G.order), k):
            out.add(naive_closure(G, gens))
    return out


def naive_normalizer(G, H):
    Hs = set(H)
    return frozenset(
        g for g in range(G.order)
        if {G.rows[G.rows[g][h]][int(G.inv[g])] for h in Hs} == Hs
    )


@pytest.fixture(scope="session")
def group():
    cache = {}

    def get(spec):
        if spec not in cache:
            cache[spec] = catalog(spec)
        return cache[spec]

    return get


ACCEPTANCE_LINES = []


def record_criterion(number, text, passed, detail=""):
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {text}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
