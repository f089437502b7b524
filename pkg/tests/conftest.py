from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_line():
    def record(number: int, title: str, ok: bool, detail: str = ""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)


small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def polys(draw, ring, max_terms=4, max_degree=3):
    """Random polynomial of total degree at most ``max_degree`` in the ring's variables."""
    out = ring.zero
    for _ in range(draw(st.integers(0, max_terms))):
        exps = [0] * ring.ngens
        for _ in range(draw(st.integers(0, max_degree))):
            exps[draw(st.integers(0, ring.nvars - 1))] += 1
        out = out + ring.monomial(exps, draw(small_rationals))
    return out


@st.composite
def nonzero_polys(draw, ring, max_terms=3, max_degree=2):
    f = draw(polys(ring, max_terms, max_degree))
    return f if not f.is_zero else ring.one + ring.gen(0)
