import math

import pytest

from annulus_energy import Annulus

# shared reference configuration: (r, R, r_*, R_*) = (1, 2, 1, e)
REF = (1.0, 2.0, 1.0, math.e)


def annuli(n, r=REF[0], R=REF[1], r_star=REF[2], R_star=REF[3]):
    return Annulus(n, r, R), Annulus(n, r_star, R_star)


@pytest.fixture
def ref3():
    return annuli(3)


@pytest.fixture
def ref4():
    return annuli(4)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        passed, line = RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  criterion {key:>2}: {line}")
