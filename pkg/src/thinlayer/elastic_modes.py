"""Modal solutions of the isotropic Navier equation in a solid ball.

A degree-``l`` displacement is written as

    u(r) = f(r) Y_l e_r + g(r) grad_1 Y_l,

with ``grad_1`` the surface gradient on the unit sphere, so that
``|grad_1 Y_l|^2`` integrates to ``l(l+1)`` over the sphere. Homogeneous
solutions come from the potentials

    u = grad(phi) + curl curl(chi x),
    phi = A j_l(k_p r) Y_l,  chi = B j_l(k_s r) Y_l,

(the torsional branch does not couple to the fluid and is left out).
The traction on a sphere of radius r is tau_rr Y_l e_r + tau_rt grad_1 Y_l.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .special_functions import sph_j, sph_second_derivative


@dataclass(frozen=True)
class MaterialParams:
    rho_s: float
    lam: float
    mu: float
    rho_f: float
    c: float
    omega: float

    def __post_init__(self):
        for name in ("rho_s", "mu", "c", "omega"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)}")
        if self.rho_f < 0:
            raise DomainError(f"rho_f must be >= 0, got {self.rho_f}")
        if not self.lam + 2 * self.mu > 0:
            raise DomainError("lambda + 2 mu must be positive")

    @property
    def kappa(self):
        return self.omega / self.c

    @property
    def k_p(self):
        return self.omega * np.sqrt(self.rho_s / (self.lam + 2 * self.mu))

    @property
    def k_s(self):
        return self.omega * np.sqrt(self.rho_s / self.mu)

    @property
    def coupling(self):
        """rho_f * omega^2, the factor linking normal displacement and pressure flux."""
        return self.rho_f * self.omega**2

    def replace(self, **changes):
        values = dict(rho_s=self.rho_s, lam=self.lam, mu=self.mu,
                      rho_f=self.rho_f, c=self.c, omega=self.omega)
        values.update(changes)
        return MaterialParams(**values)


def _basis(material, l, r):
    """Radial/tangential profiles of the two potential solutions and derivatives.

    Returns arrays of shape (2, 3, ...) indexed [potential, order] for f and
    g, where potential 0 is the P wave (A) and 1 the SV wave (B), and order
    is value, first, second derivative.
    """
    r = np.asarray(r, dtype=float)
    L = l * (l + 1)
    kp, ks = material.k_p, material.k_s
    xp, xs = kp * r, ks * r
    jp, djp = sph_j(l, xp, derivative=True)
    js, djs = sph_j(l, xs, derivative=True)
    d2jp = sph_second_derivative(l, xp, jp, djp)
    d2js = sph_second_derivative(l, xs, js, djs)
    # third derivative from differentiating the Bessel ODE once
    d3jp = (2 / xp**2 * djp - 2 / xp * d2jp - 2 * L / xp**3 * jp
            - (1 - L / xp**2) * djp)
    d3js = (2 / xs**2 * djs - 2 / xs * d2js - 2 * L / xs**3 * js
            - (1 - L / xs**2) * djs)

    f = np.empty((2, 3) + r.shape)
    g = np.empty((2, 3) + r.shape)

    # P potential: f = phi', g = phi / r with phi = j_l(kp r)
    f[0, 0] = kp * djp
    f[0, 1] = kp**2 * d2jp
    f[0, 2] = kp**3 * d3jp
    g[0, 0] = jp / r
    g[0, 1] = kp * djp / r - jp / r**2
    g[0, 2] = kp**2 * d2jp / r - 2 * kp * djp / r**2 + 2 * jp / r**3

    # SV potential: f = L h / r, g = (r h)' / r = h / r + h'
    f[1, 0] = L * js / r
    f[1, 1] = L * (ks * djs / r - js / r**2)
    f[1, 2] = L * (ks**2 * d2js / r - 2 * ks * djs / r**2 + 2 * js / r**3)
    g[1, 0] = js / r + ks * djs
    g[1, 1] = ks * djs / r - js / r**2 + ks**2 * d2js
    g[1, 2] = ks**2 * d2js / r - 2 * ks * djs / r**2 + 2 * js / r**3 + ks**3 * d3js
    if l == 0:
        f[1] = 0.0
        g[:] = 0.0
    return f, g


def traction_from_profiles(material, l, r, f, fp, g, gp):
    """(tau_rr, tau_rt) of u = f Y e_r + g grad_1 Y on the sphere of radius r."""
    L = l * (l + 1)
    div = fp + 2 * f / r - L * g / r
    tau_rr = material.lam * div + 2 * material.mu * fp
    tau_rt = material.mu * (gp - g / r + f / r)
    if l == 0:
        tau_rt = np.zeros_like(np.asarray(tau_rr, dtype=float))
    return tau_rr, tau_rt


def navier_from_profiles(material, l, r, f, fp, fpp, g, gp, gpp):
    """Radial and tangential coefficients of div(sigma(u)) + omega^2 rho_s u."""
    L = l * (l + 1)
    lam2mu = material.lam + 2 * material.mu
    w2 = material.omega**2 * material.rho_s
    div = fp + 2 * f / r - L * g / r
    ddiv = fpp + 2 * fp / r - 2 * f / r**2 - L * gp / r + L * g / r**2
    t = (f - g - r * gp) / r          # curl u = -t e_r x grad_1 Y
    drt = fp - 2 * gp - r * gpp       # (r t)'
    radial = lam2mu * ddiv - material.mu * L * t / r + w2 * f
    tangential = lam2mu * div / r - material.mu * drt / r + w2 * g
    if l == 0:
        tangential = np.zeros_like(np.asarray(radial, dtype=float))
    return radial, tangential


def quintic_step(s):
    """Smoothstep s^3 (10 - 15 s + 6 s^2) and its first two derivatives, clipped to [0, 1]."""
    s = np.clip(np.asarray(s, dtype=float), 0.0, 1.0)
    v = s**3 * (10 - 15 * s + 6 * s**2)
    dv = 30 * s**2 * (1 - s) ** 2
    d2v = 60 * s * (1 - s) * (1 - 2 * s)
    return v, dv, d2v


@dataclass(frozen=True)
class ManufacturedForcing:
    """Particular field u_p = amplitude * chi(r) * Y_l * e_r supported in r >= R/2.

    The body force it generates, div(sigma(u_p)) + omega^2 rho_s u_p, is the
    datum of every problem built on this object and does not depend on the
    layer thickness.
    """

    material: MaterialParams
    degree: int
    amplitude: float
    R: float = 1.0

    def chi(self, r):
        """chi and its first two r-derivatives."""
        s = 2 * np.asarray(r, dtype=float) / self.R - 1
        v, dv, d2v = quintic_step(s)
        return v, dv * 2 / self.R, d2v * 4 / self.R**2

    def profiles(self, r):
        """(f, f', f'', g, g', g'') of u_p."""
        v, dv, d2v = self.chi(r)
        a = self.amplitude
        zero = np.zeros_like(v)
        return a * v, a * dv, a * d2v, zero, zero, zero

    def body_force(self, r):
        f, fp, fpp, g, gp, gpp = self.profiles(r)
        return navier_from_profiles(self.material, self.degree, np.asarray(r, dtype=float),
                                    f, fp, fpp, g, gp, gpp)

    @property
    def un_trace(self):
        return self.amplitude

    @property
    def trr_trace(self):
        # chi'(R) = 0, chi(R) = 1
        return 2 * self.material.lam * self.amplitude / self.R

    @property
    def trt_trace(self):
        if self.degree == 0:
            return 0.0
        return self.material.mu * self.amplitude / self.R


def manufactured_forcing(material, l, amplitude, R=1.0):
    if l < 0:
        raise DomainError("degree must be >= 0")
    return ManufacturedForcing(material, int(l), float(amplitude), float(R))


@dataclass(frozen=True)
class ModalSolidField:
    """Degree-``l`` solid displacement: potential amplitudes plus a share of u_p.

    ``forcing_weight`` multiplies the particular field of ``forcing``; it is
    1 for fields that solve the forced Navier equation and 0 for
    homogeneous ones, which keeps linear combinations exact.
    """

    degree: int
    A: float
    B: float
    material: MaterialParams
    forcing: ManufacturedForcing = field(default=None, compare=False)
    forcing_weight: float = 0.0

    def __post_init__(self):
        if self.degree < 0:
            raise DomainError("degree must be >= 0")
        if self.degree == 0 and self.B != 0:
            raise DomainError("the SV potential does not exist for l = 0; B must be 0")
        if self.forcing_weight != 0 and self.forcing is None:
            raise DomainError("forcing_weight set without a forcing")

    # linear structure
    def _compatible(self, other):
        if self.degree != other.degree or self.material != other.material:
            raise DomainError("fields of different degree or material cannot be combined")
        if self.forcing is not None and other.forcing is not None and self.forcing != other.forcing:
            raise DomainError("fields carry different forcings")
        return self.forcing if self.forcing is not None else other.forcing

    def __add__(self, other):
        forcing = self._compatible(other)
        return ModalSolidField(self.degree, self.A + other.A, self.B + other.B, self.material,
                               forcing, self.forcing_weight + other.forcing_weight)

    def __mul__(self, scale):
        return ModalSolidField(self.degree, scale * self.A, scale * self.B, self.material,
                               self.forcing, scale * self.forcing_weight)

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + (-1.0) * other

    @property
    def coefficients(self):
        return np.array([self.A, self.B, self.forcing_weight])

    def profiles(self, r):
        """(f, f', f'', g, g', g'') at radii ``r``."""
        r = np.asarray(r, dtype=float)
        fb, gb = _basis(self.material, self.degree, r)
        f = self.A * fb[0] + self.B * fb[1]
        g = self.A * gb[0] + self.B * gb[1]
        out = [f[0], f[1], f[2], g[0], g[1], g[2]]
        if self.forcing_weight != 0:
            extra = self.forcing.profiles(r)
            out = [a + self.forcing_weight * b for a, b in zip(out, extra)]
        return tuple(out)

    def radial_part(self, r):
        return self.profiles(r)[0]

    def tangential_part(self, r):
        return self.profiles(r)[3]

    def normal_trace(self, R):
        """u . n on the sphere of radius R (coefficient of Y_l)."""
        return float(self.radial_part(R))

    def navier_residual(self, r):
        f, fp, fpp, g, gp, gpp = self.profiles(r)
        return navier_from_profiles(self.material, self.degree, np.asarray(r, dtype=float),
                                    f, fp, fpp, g, gp, gpp)


def build_modal_field(material, l, A, B=0.0):
    return ModalSolidField(int(l), float(A), float(B), material)


def traction(field, r):
    """(tau_rr, tau_rt) of ``field`` on the sphere of radius r, 0 < r <= R."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("traction needs r > 0")
    f, fp, _, g, gp, _ = field.profiles(r)
    return traction_from_profiles(field.material, field.degree, r, f, fp, g, gp)


def traction_matrix(material, l, r):
    """2x2 map (A, B) -> (tau_rr, tau_rt) at radius r."""
    fb, gb = _basis(material, l, np.asarray(float(r)))
    M = np.empty((2, 2))
    for col in range(2):
        M[:, col] = traction_from_profiles(material, l, r, fb[col, 0], fb[col, 1],
                                           gb[col, 0], gb[col, 1])
    if l == 0:
        M[:, 1] = 0.0
        M[1, :] = 0.0
    return M


def normal_trace_row(material, l, r):
    """Row (f_A(r), f_B(r)) giving u . n at radius r from (A, B)."""
    fb, _ = _basis(material, l, np.asarray(float(r)))
    return np.array([float(fb[0, 0]), float(fb[1, 0])])
