"""Per-mode symbols of the equivalent-condition operators.

On the sphere every equivalent condition is diagonal in spherical
harmonics, so the surface operator B_{k,eps} acts on the degree-l mode of
u.n as multiplication by a real number beta. The elastic problem with
condition of order k+1 is then

    tau_rr(R) + beta * u_r(R) = 0,  tau_rt(R) = 0.

The acoustic thin-coating impedances N_{eps,k} of the scalar
Dirichlet-to-Neumann setting are provided for comparison, with the
coefficient alpha = 1/(rho_f omega^2) and refractive index 1.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .geometry import lb_symbol
from .rates import RateFit, fit_rate

ELASTO = "elasto_acoustic"
ACOUSTIC = "acoustic"


@dataclass(frozen=True)
class OperatorSymbol:
    family: str
    order: int
    eps: float
    degree: int
    value: float


def elasto_symbol(k, eps, geom, mat, l):
    """beta_{k,eps,l}: action of B_{k,eps} on a degree-l mode of u.n."""
    if k not in (0, 1, 2, 3):
        raise DomainError(f"elasto-acoustic order must be 0..3, got {k}")
    if eps < 0:
        raise DomainError("eps must be >= 0")
    if k == 0:
        return 0.0
    H = geom.mean_curvature()
    K = geom.gaussian_curvature()
    bracket = 1.0
    if k >= 2:
        bracket -= eps * H
    if k == 3:
        bracket += eps**2 / 3 * (lb_symbol(geom, l) + mat.kappa**2 + 4 * H**2 - K)
    return -eps * mat.coupling * bracket


def acoustic_symbol(k, eps, geom, mat, l, sign_flag=1):
    """Action of N_{eps,k} on a degree-l mode; ``sign_flag`` multiplies H."""
    if k not in (1, 2, 3):
        raise DomainError(f"acoustic order must be 1..3, got {k}")
    if not eps > 0:
        raise DomainError("acoustic impedance is singular at eps = 0")
    if sign_flag not in (1, -1):
        raise DomainError("sign_flag must be +1 or -1")
    if mat.coupling == 0:
        raise DomainError("acoustic impedance needs rho_f * omega^2 > 0")
    alpha = 1.0 / mat.coupling
    H = sign_flag * geom.mean_curvature()
    K = geom.gaussian_curvature()
    bracket = 1.0
    if k >= 2:
        bracket += eps * H
    if k == 3:
        bracket += eps**2 / 3 * (-lb_symbol(geom, l) - mat.kappa**2 + K - geom.mean_curvature() ** 2)
    return alpha / eps * bracket


def symbol(family, k, eps, geom, mat, l, sign_flag=1):
    if family == ELASTO:
        value = elasto_symbol(k, eps, geom, mat, l)
    elif family == ACOUSTIC:
        value = acoustic_symbol(k, eps, geom, mat, l, sign_flag)
    else:
        raise DomainError(f"unknown family {family!r}")
    return OperatorSymbol(family, k, eps, l, value)


def operator_gap(k, eps, geom, mat, l, sign_flag=1):
    """|1/N_{eps,k} + B_{eps,k}| on mode l."""
    return abs(1.0 / acoustic_symbol(k, eps, geom, mat, l, sign_flag)
               + elasto_symbol(k, eps, geom, mat, l))


def compare_operators(k, geom, mat, l, eps_grid, sign_flag=1):
    """Rate at which 1/N_{eps,k} + B_{eps,k} vanishes as eps -> 0.

    Gaps at rounding level relative to |B| count as an exact match.
    """
    eps_grid = np.asarray(eps_grid, dtype=float)
    if eps_grid.size < 5:
        raise DomainError("operator comparison needs at least 5 eps values")
    gaps = np.array([operator_gap(k, e, geom, mat, l, sign_flag) for e in eps_grid])
    scale = np.array([abs(elasto_symbol(k, e, geom, mat, l)) for e in eps_grid])
    if np.all(gaps <= 8 * np.finfo(float).eps * scale):
        return RateFit(tuple(eps_grid), tuple(gaps), float("nan"), float("nan"), float("nan"), exact=True)
    return fit_rate(eps_grid, gaps)
