import re

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_RESULTS = {}


@pytest.fixture
def record_acceptance():
    def record(label, title, passed, detail=""):
        ACCEPTANCE_RESULTS[str(label)] = (title, bool(passed), detail)
        print(_line(str(label), title, passed, detail))
    return record


def _line(label, title, passed, detail):
    return f"[{'PASS' if passed else 'FAIL'}] criterion {label:>3}: {title}" + (f" ({detail})" if detail else "")


def _natural(label):
    m = re.match(r"(\d+)(.*)", label)
    return (int(m.group(1)), m.group(2)) if m else (10**6, label)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE_RESULTS, key=_natural):
        terminalreporter.write_line(_line(label, *ACCEPTANCE_RESULTS[label]))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def ref_lens():
    from faberkit.geometry import Lens

    return Lens(0.5, 1.0, 3.0, 2.0)
