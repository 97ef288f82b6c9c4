"""Curvature data of the spherical interface and the per-mode surface symbols.

The unit normal points from the solid ball into the fluid shell, so on a
sphere of radius R the mean curvature is H = +1/R and the Gaussian
curvature K = +1/R**2. That orientation is the one for which the first
order term of the stretched shell Laplacian reads 2*H*d/dY.
"""

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class SphereGeometry:
    """Interface radius ``R`` and layer thickness ``eps``."""

    R: float
    eps: float = 0.0

    def __post_init__(self):
        if not self.R > 0:
            raise DomainError(f"radius must be positive, got {self.R}")
        if self.eps < 0:
            raise DomainError(f"layer thickness must be >= 0, got {self.eps}")

    def with_eps(self, eps):
        return SphereGeometry(self.R, eps)

    def mean_curvature(self):
        return 1.0 / self.R

    def gaussian_curvature(self):
        return 1.0 / self.R**2

    def lb_symbol(self, l):
        return lb_symbol(self, l)

    def check_thin(self):
        """Raise unless 0 < eps < R/2."""
        if not 0 < self.eps < self.R / 2:
            raise DomainError(f"thin-layer regime needs 0 < eps < R/2, got eps={self.eps}, R={self.R}")


def lb_symbol(geom, l):
    """Eigenvalue of the Laplace-Beltrami operator on degree-``l`` harmonics."""
    if l < 0:
        raise DomainError("degree must be >= 0")
    return -l * (l + 1) / geom.R**2


def scaled_laplacian_symbols(geom, l, kappa):
    """First three operators of the stretched Helmholtz expansion on mode ``l``.

    Each returned callable takes ``(Y, q, dq, d2q)``: the stretched normal
    coordinate and the values of q and its first two Y-derivatives. The
    arguments may be numpy arrays or ``numpy.polynomial.Polynomial``
    objects (with ``Y = Polynomial([0, 1])``), so the same actions drive
    both pointwise residual checks and exact profile integration.
    """
    H = geom.mean_curvature()
    K = geom.gaussian_curvature()
    shift = lb_symbol(geom, l) + kappa**2
    drift = 2.0 * (2.0 * H**2 - K)

    def L0(Y, q, dq, d2q):
        return d2q

    def L1(Y, q, dq, d2q):
        return 2.0 * H * dq

    def L2(Y, q, dq, d2q):
        return shift * q - drift * Y * dq

    return L0, L1, L2


def expansion_residual(geom, l, kappa, v, eps, Y):
    """Sup-norm gap between eps^2*(Laplacian + kappa^2) and L0 + eps*L1 + eps^2*L2.

    ``v(r)`` must return ``(v, v', v'')`` for the radial profile of a
    degree-``l`` field. The exact spherical Laplacian acts as the oracle.
    """
    r = geom.R + eps * Y
    f, fp, fpp = v(r)
    exact = eps**2 * (fpp + 2.0 / r * fp + (kappa**2 - l * (l + 1) / r**2) * f)
    # Y-derivatives of q(Y) = v(R + eps*Y)
    q, dq, d2q = f, eps * fp, eps**2 * fpp
    L0, L1, L2 = scaled_laplacian_symbols(geom, l, kappa)
    approx = L0(Y, q, dq, d2q) + eps * L1(Y, q, dq, d2q) + eps**2 * L2(Y, q, dq, d2q)
    return float(abs(exact - approx).max())
