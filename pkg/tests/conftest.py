import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from phigamma.field import field_of_degree
from phigamma.series import SeriesRing

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

PRIMES = (2, 3, 5)

fields = st.sampled_from([(p, m) for p in PRIMES for m in (1, 2)]).map(lambda pm: field_of_degree(*pm))


@st.composite
def series(draw, ring=None, min_val=-4, max_val=4, length=24, unit=True):
    """A random Laurent series with a nonzero leading coefficient."""
    if ring is None:
        ring = SeriesRing(draw(fields), 1)
    F = ring.field
    val = draw(st.integers(min_val, max_val))
    codes = draw(st.lists(st.integers(0, F.q - 1), min_size=length, max_size=length))
    if unit:
        codes[0] = draw(st.integers(1, F.q - 1))
    return ring.from_codes(np.array(codes, dtype=np.int64), val, val + length)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
