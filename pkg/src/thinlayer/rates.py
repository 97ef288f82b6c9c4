"""Least-squares convergence rates on log-log data."""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class RateFit:
    eps_grid: tuple
    errors: tuple
    slope: float
    intercept: float
    r_squared: float
    exact: bool = False

    def within(self, low, high=np.inf, r2_min=0.0):
        return (not self.exact) and low <= self.slope <= high and self.r_squared >= r2_min

    def __str__(self):
        if self.exact:
            return "exact (errors vanish)"
        return f"slope={self.slope:.4f} r2={self.r_squared:.5f}"


def fit_rate(eps_grid, errors):
    """Fit log(error) = slope * log(eps) + intercept.

    Nonpositive errors mean the two quantities coincide exactly; such data
    is flagged ``exact`` instead of being fitted.
    """
    eps = np.asarray(eps_grid, dtype=float)
    err = np.asarray(errors, dtype=float)
    if eps.shape != err.shape or eps.ndim != 1:
        raise DomainError("eps_grid and errors must be 1-D arrays of equal length")
    if eps.size < 3:
        raise DomainError("at least 3 points are needed for a rate fit")
    if np.any(eps <= 0):
        raise DomainError("eps values must be positive")
    if np.any(err <= 0):
        return RateFit(tuple(eps), tuple(err), float("nan"), float("nan"), float("nan"), exact=True)
    x, y = np.log(eps), np.log(err)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - float(np.sum(resid**2)) / ss_tot
    return RateFit(tuple(eps), tuple(err), float(slope), float(intercept), r2)


def local_slopes(eps_grid, errors):
    """Pairwise slopes between consecutive points; first entry is nan."""
    eps = np.asarray(eps_grid, dtype=float)
    err = np.asarray(errors, dtype=float)
    out = np.full(eps.shape, np.nan)
    with np.errstate(divide="ignore", invalid="ignore"):
        out[1:] = np.log(err[1:] / err[:-1]) / np.log(eps[1:] / eps[:-1])
    return out


def geometric_grid(start, ratio, count):
    return start * ratio ** np.arange(count)
