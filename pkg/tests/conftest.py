import random

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from rpsalg.field import OmegaExtension, PrimeField, Rationals

settings.register_profile("default", deadline=None)
settings.load_profile("default")

Q = Rationals()
QW = OmegaExtension(Q)
F2, F3, F5, F7 = (PrimeField(p) for p in (2, 3, 5, 7))
F25 = OmegaExtension(PrimeField(5))

FIELDS = [Q, QW, F2, F3, F5, F7, F25]
FIELD_IDS = [str(F) for F in FIELDS]


@pytest.fixture(params=FIELDS, ids=FIELD_IDS)
def field(request):
    return request.param


def raw_elements(F):
    """Hypothesis strategy of raw values of ``F`` built from small integers."""
    from fractions import Fraction

    ints = st.integers(-50, 50)
    if isinstance(F, Rationals):
        return st.builds(lambda a, b: F.from_fraction(Fraction(a, b)), ints, st.integers(1, 30))
    if isinstance(F, PrimeField):
        return st.integers(0, F.p - 1)
    base = F.base
    inner = raw_elements(base)
    return st.tuples(inner, inner)


def seeded(seed=0):
    return random.Random(seed)


# one line per acceptance criterion, shown at the end of every run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
