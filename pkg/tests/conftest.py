from fractions import Fraction

from hypothesis import strategies as st

import pytest

_acceptance: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    if "test_acceptance.py" not in report.nodeid:
        return
    _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")


def rationals(lo=1, hi=12, max_den=7):
    """Positive rationals p/q with lo <= p/q <= hi."""
    return (
        st.tuples(st.integers(1, max_den), st.integers(1, hi * max_den))
        .map(lambda t: Fraction(t[1], t[0]))
        .filter(lambda q: lo <= q <= hi)
    )


@st.composite
def ellipsoid_params(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    return tuple(draw(rationals(1, 8, 5)) for _ in range(n))


@pytest.fixture
def tmp_json(tmp_path):
    import json

    def write(obj, name="input.json"):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)

    return write
