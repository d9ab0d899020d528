import os
import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.register_profile("ci", parent=settings.get_profile("default"), max_examples=300)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def random_triple(rng: random.Random, a_max: int = 60, m_max: int = 40, grow: int = 2):
    """A D(4)-triple {a, b, c}: b = m(am + 4) gives ab + 4 = (am + 2)^2,
    c = a + b + 2r is the smallest extension, then optionally lifted by d_plus."""
    from d4ext.tuples import d_plus

    a = rng.randint(1, a_max)
    m = rng.randint(1, m_max)
    b = m * (a * m + 4)
    r = a * m + 2
    c = a + b + 2 * r
    for _ in range(rng.randint(0, grow)):
        c = d_plus((a, b, c))
    return tuple(sorted((a, b, c)))


@pytest.fixture
def rng():
    return random.Random(20240611)


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
