"""Real spherical Bessel functions j_l, y_l and their first derivatives.

j_l is evaluated by a downward ratio (Miller-type) recurrence normalized on
j_0 or j_1 when x < l, and by forward recurrence otherwise. y_l is always
evaluated by forward recurrence, which is stable for the second kind.
All array routines broadcast over ``x``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

L_MAX = 64


@dataclass(frozen=True)
class BesselEval:
    degree: int
    argument: float
    j: float
    y: float
    j_prime: float
    y_prime: float

    @property
    def wronskian(self):
        return self.j * self.y_prime - self.j_prime * self.y


def _check(l, x):
    if int(l) != l or not 0 <= l <= L_MAX:
        raise DomainError(f"degree must be an integer in [0, {L_MAX}], got {l!r}")
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x <= 0.0):
        raise DomainError("spherical Bessel argument must be finite and > 0")
    return int(l), x


def _j_upward(l, x):
    """Return (j_{l-1}, j_l) by forward recurrence; j_{-1} = cos(x)/x."""
    s, c = np.sin(x), np.cos(x)
    prev = c / x
    cur = s / x
    for k in range(l):
        prev, cur = cur, (2 * k + 1) / x * cur - prev
    return prev, cur


def _j_downward(l, x):
    """Return (j_{l-1}, j_l) from downward ratios r_k = j_k / j_{k-1}.

    The ratios come from the continued fraction r_k = 1 / ((2k+1)/x - r_{k+1})
    seeded far above both l and x, then the chain is anchored on whichever
    of j_0, j_1 is larger in magnitude (j_0 alone vanishes at x = n*pi).
    """
    s, c = np.sin(x), np.cos(x)
    j0 = s / x
    j1 = s / x**2 - c / x
    if l == 0:
        return c / x, j0
    top = max(l, int(np.max(x))) + 20 + int(np.sqrt(40.0 * (max(l, float(np.max(x))) + 1)))
    ratios = {}
    r = np.zeros_like(x)
    for k in range(top, 0, -1):
        r = 1.0 / ((2 * k + 1) / x - r)
        if k <= l:
            ratios[k] = r
    # Anchor on j_0 where |j_0| >= |j_1|, otherwise on j_1.
    use_j0 = np.abs(j0) >= np.abs(j1)
    cur = np.where(use_j0, j0 * ratios[1], j1)
    prev = np.where(use_j0, j0, j1 / ratios[1])
    for k in range(2, l + 1):
        prev, cur = cur, cur * ratios[k]
    return prev, cur


def _y_upward(l, x):
    """Return (y_{l-1}, y_l); y_{-1} = sin(x)/x."""
    s, c = np.sin(x), np.cos(x)
    prev = s / x
    cur = -c / x
    for k in range(l):
        prev, cur = cur, (2 * k + 1) / x * cur - prev
    return prev, cur


def _pair_j(l, x, method):
    if method == "upward":
        return _j_upward(l, x)
    if method == "downward":
        return _j_downward(l, x)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    small = x < l
    if not np.any(small):
        return _j_upward(l, x)
    if np.all(small):
        return _j_downward(l, x)
    up_prev, up = _j_upward(l, x)
    dn_prev, dn = _j_downward(l, np.where(small, x, 1.0))
    return np.where(small, dn_prev, up_prev), np.where(small, dn, up)


def sph_j(l, x, derivative=False, method="auto"):
    """j_l(x), or (j_l(x), j_l'(x)) when ``derivative`` is set.

    ``method`` forces the recurrence direction ("upward", "downward");
    the default picks downward for x < l.
    """
    l, x = _check(l, x)
    prev, cur = _pair_j(l, x, method)
    if not derivative:
        return cur
    return cur, prev - (l + 1) / x * cur


def sph_y(l, x, derivative=False):
    """y_l(x), or (y_l(x), y_l'(x)) when ``derivative`` is set."""
    l, x = _check(l, x)
    prev, cur = _y_upward(l, x)
    if not derivative:
        return cur
    return cur, prev - (l + 1) / x * cur


def sph_second_derivative(l, x, f, fp):
    """f'' from the spherical Bessel ODE, valid for either kind."""
    return -2.0 / x * fp - (1.0 - l * (l + 1) / x**2) * f


def bessel_eval(l, x):
    """Evaluate j_l, y_l and first derivatives at a single positive argument."""
    l, xa = _check(l, x)
    if xa.ndim != 0:
        raise DomainError("bessel_eval takes a scalar argument; use sph_j/sph_y for arrays")
    j, jp = sph_j(l, xa, derivative=True)
    y, yp = sph_y(l, xa, derivative=True)
    return BesselEval(l, float(xa), float(j), float(y), float(jp), float(yp))
