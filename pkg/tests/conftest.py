import itertools
import os

import pytest
from hypothesis import settings

from nestohedra.buildset import BuildingSet
from nestohedra.gamma_engine import GammaEngine

settings.register_profile("ci", max_examples=200, deadline=None)
settings.register_profile("dev", max_examples=40, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "dev"))


@pytest.fixture(scope="session")
def engine():
    return GammaEngine()


def brute_force_census(b: BuildingSet) -> list[int]:
    """Count nested sets by testing every subfamily of B minus B_max against the definition."""
    cands = [e for e in b.elements if e not in set(b.b_max)]
    counts = [0] * (b.dimension + 1)
    for k in range(len(cands) + 1):
        for fam in itertools.combinations(cands, k):
            if _nested(b, fam):
                counts[k] += 1
    return counts


def _nested(b, fam):
    for x, y in itertools.combinations(fam, 2):
        if x & y and x & ~y and y & ~x:
            return False
    for k in range(2, len(fam) + 1):
        for sub in itertools.combinations(fam, k):
            u = 0
            for s in sub:
                if u & s:
                    break
                u |= s
            else:
                if u in b.members:
                    return False
    return True


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("]", 1)[1].split(".", 1)[0])):
            terminalreporter.write_line(line)
