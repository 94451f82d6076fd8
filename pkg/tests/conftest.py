import functools
import re

import pytest
from hypothesis import HealthCheck, settings

from liepoisson.algebra import build_classical, cartan_splitting, lower_right_sl2, make_splitting, trace_form
from liepoisson.invariants import trace_power_invariants

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@functools.lru_cache(maxsize=None)
def algebra(name: str):
    return build_classical(name[:2], int(name[2:]))


@functools.lru_cache(maxsize=None)
def invariants(name: str):
    return trace_power_invariants(algebra(name))


@functools.lru_cache(maxsize=None)
def cartan(name: str):
    return cartan_splitting(algebra(name))


@functools.lru_cache(maxsize=None)
def corner_sl2(name: str):
    g = algebra(name)
    return make_splitting(g, trace_form(g), lower_right_sl2(g))


@pytest.fixture
def get_algebra():
    return algebra


# -- one summary line per acceptance criterion ------------------------------------

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    number, name = int(m.group(1)), m.group(2).replace("_", " ")
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        outcome = "PASS" if report.passed else "FAIL"
        if _ACCEPTANCE.get(number, (name, "PASS"))[1] == "FAIL":
            outcome = "FAIL"
        _ACCEPTANCE[number] = (name, outcome)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        name, outcome = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {outcome}  {name}")
