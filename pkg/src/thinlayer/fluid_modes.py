"""Per-mode Helmholtz solutions p(r) = a j_l(kappa r) + b y_l(kappa r) in the shell."""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .special_functions import sph_j, sph_second_derivative, sph_y


@dataclass(frozen=True)
class ModalFluidField:
    degree: int
    a: float
    b: float
    kappa: float

    def __post_init__(self):
        if not self.kappa > 0:
            raise DomainError(f"wave number must be positive, got {self.kappa}")

    def _jets(self, r):
        x = self.kappa * np.asarray(r, dtype=float)
        j, dj = sph_j(self.degree, x, derivative=True)
        y, dy = sph_y(self.degree, x, derivative=True)
        return x, j, dj, y, dy

    def p(self, r):
        _, j, _, y, _ = self._jets(r)
        return self.a * j + self.b * y

    def dp(self, r):
        _, _, dj, _, dy = self._jets(r)
        return self.kappa * (self.a * dj + self.b * dy)

    def d2p(self, r):
        x, j, dj, y, dy = self._jets(r)
        l = self.degree
        return self.kappa**2 * (self.a * sph_second_derivative(l, x, j, dj)
                                + self.b * sph_second_derivative(l, x, y, dy))

    def __add__(self, other):
        if (self.degree, self.kappa) != (other.degree, other.kappa):
            raise DomainError("fluid fields of different degree or wave number")
        return ModalFluidField(self.degree, self.a + other.a, self.b + other.b, self.kappa)

    def __mul__(self, scale):
        return ModalFluidField(self.degree, scale * self.a, scale * self.b, self.kappa)

    __rmul__ = __mul__


def build_fluid_field(l, kappa, a, b):
    if l < 0:
        raise DomainError("degree must be >= 0")
    return ModalFluidField(int(l), float(a), float(b), float(kappa))


def dirichlet_deficit(field, r_out):
    """Pressure left on the outer sphere r_out = R + eps; zero for a solution."""
    return float(field.p(r_out))

