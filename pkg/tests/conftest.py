import os

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: list[str] = []


@st.composite
def reduced_words(draw, max_len=10, min_len=0):
    n = draw(st.integers(min_len, max_len))
    letters, prev = [], 0
    for _ in range(n):
        prev = draw(st.sampled_from([i for i in (1, 2, 3, 4) if i != prev]))
        letters.append(prev)
    return tuple(letters)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
