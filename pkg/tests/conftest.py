import numpy as np
import pytest

from thinlayer import MaterialParams, SphereGeometry, manufactured_forcing

# fixture parameter set used by the convergence experiments
ACCEPT = dict(rho_s=1.0, lam=2.0, mu=1.0, rho_f=0.5, c=1.0, omega=1.3)
ACCEPT_L = (0, 1, 2, 5)
ACCEPT_EPS = 0.2 * 0.5 ** np.arange(6)


@pytest.fixture
def mat():
    return MaterialParams(**ACCEPT)


@pytest.fixture
def unit_sphere():
    return SphereGeometry(1.0)


@pytest.fixture
def forcing_for(mat):
    def make(l, amplitude=1.0, material=None):
        return manufactured_forcing(material or mat, l, amplitude)
    return make


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
