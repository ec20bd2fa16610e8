from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("repo")

small_int = st.integers(min_value=-6, max_value=6)
rationals = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 6))
polys = st.lists(rationals, max_size=6)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
