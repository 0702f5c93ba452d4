import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from enriq.lattice import DivisorClass

settings.register_profile(
    "default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

sys.path.insert(0, os.path.dirname(__file__))


@st.composite
def classes(draw, bound=12):
    """Random valid class: a common residue mod 3 plus multiples of 3."""
    r = draw(st.integers(0, 2))
    ks = draw(st.lists(st.integers(-bound, bound), min_size=10, max_size=10))
    return DivisorClass(tuple(3 * k + r for k in ks))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
