import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import helmholtz_residual_fd
from thinlayer import DomainError, build_fluid_field, dirichlet_deficit, sph_j, sph_y


def test_zero_field():
    fld = build_fluid_field(2, 1.0, 0.0, 0.0)
    r = np.linspace(1, 1.2, 5)
    assert not np.any(fld.p(r)) and not np.any(fld.dp(r))
    assert dirichlet_deficit(fld, 1.2) == 0.0


def test_j0_root():
    fld = build_fluid_field(0, 1.0, 1.0, 0.0)
    assert abs(fld.p(math.pi)) < 1e-15
    assert abs(dirichlet_deficit(fld, math.pi)) < 1e-15


def test_rejects_nonpositive_kappa():
    with pytest.raises(DomainError):
        build_fluid_field(1, 0.0, 1.0, 0.0)


def test_helmholtz_fd_oracle():
    fld = build_fluid_field(3, 2.2, 1.3, -0.4)
    for r in np.linspace(1.0, 1.2, 5):
        assert helmholtz_residual_fd(fld.p, 3, 2.2, r) < 1e-8


def test_dirichlet_choice_of_b():
    l, kappa, a, R, eps = 4, 1.7, 0.8, 1.0, 0.15
    x = kappa * (R + eps)
    b = -a * sph_j(l, x) / sph_y(l, x)
    fld = build_fluid_field(l, kappa, a, b)
    assert abs(dirichlet_deficit(fld, R + eps)) < 1e-15 * abs(a * sph_j(l, x)) + 1e-300


@settings(max_examples=40, deadline=None)
@given(l=st.integers(0, 8), kappa=st.floats(0.2, 5), a=st.floats(-2, 2), b=st.floats(-2, 2),
       s=st.floats(0, 1))
def test_random_draws(l, kappa, a, b, s):
    if max(abs(a), abs(b)) < 1e-3:
        return
    fld = build_fluid_field(l, kappa, a, b)
    r = 1.0 + 0.4 * s
    assert helmholtz_residual_fd(fld.p, l, kappa, r) < 1e-8
    # linearity
    other = build_fluid_field(l, kappa, b, a)
    comb = 2.0 * fld + other
    for ev in ("p", "dp", "d2p"):
        lhs = getattr(comb, ev)(r)
        rhs = 2.0 * getattr(fld, ev)(r) + getattr(other, ev)(r)
        assert abs(lhs - rhs) <= 1e-13 * (abs(lhs) + abs(rhs) + 1e-300) + 1e-14
