from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
unit_fracs = st.fractions(min_value=Fraction(1, 50), max_value=Fraction(49, 50), max_denominator=50)

ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
