"""Modal H^1-equivalent norms evaluated by radial quadrature.

At fixed degree l these are equivalent to the Sobolev norms of the full
vector or scalar fields; only convergence exponents are compared, and
exponents do not change under norm equivalence.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

SOLID_H1 = "solid_H1_equiv"
FLUID_H1_SCALED = "fluid_H1_scaled"
TRACE_L2 = "trace_L2"


@dataclass(frozen=True)
class ModalNorm:
    kind: str
    value: float

    def __float__(self):
        return self.value


def _gauss_panels(a, b, panels, nodes):
    """Composite Gauss-Legendre nodes/weights: ``panels`` equal pieces of [a, b]."""
    per = nodes // panels
    x, w = np.polynomial.legendre.leggauss(per)
    edges = np.linspace(a, b, panels + 1)
    rs, ws = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = 0.5 * (hi - lo)
        rs.append(lo + half * (x + 1))
        ws.append(half * w)
    return np.concatenate(rs), np.concatenate(ws)


def radial_rule(a, b, nodes=64, rule="gauss", panels=2):
    """Quadrature on [a, b]. The solid rule uses two panels so that the
    kink of the forcing cutoff at R/2 falls on a panel edge."""
    if rule == "gauss":
        return _gauss_panels(a, b, panels, nodes)
    if rule == "trapezoid":
        r = np.linspace(a, b, nodes)
        w = np.full(nodes, r[1] - r[0])
        w[0] = w[-1] = 0.5 * (r[1] - r[0])
        return r, w
    raise DomainError(f"unknown quadrature rule {rule!r}")


def solid_error_norm(field1, field2, l=None, R=1.0, nodes=64, rule="gauss"):
    """H^1-equivalent norm of field1 - field2 over the ball of radius R.

    (int_0^R [df^2 + df'^2 + l(l+1)(dg^2 + dg'^2)] r^2 dr)^(1/2)
    """
    if l is not None and (field1.degree != l or field2.degree != l):
        raise DomainError("mode mismatch in solid_error_norm")
    diff = field1 - field2
    return ModalNorm(SOLID_H1, solid_norm(diff, R, nodes, rule))


def solid_norm(field, R=1.0, nodes=64, rule="gauss"):
    l = field.degree
    r, w = radial_rule(0.0, R, nodes, rule)
    keep = r > 0
    integrand = np.zeros_like(r)
    f, fp, _, g, gp, _ = field.profiles(r[keep])
    integrand[keep] = (f**2 + fp**2 + l * (l + 1) * (g**2 + gp**2)) * r[keep] ** 2
    return float(np.sqrt(np.sum(w * integrand)))


def shell_norm(q, dq, r, w, l):
    """(int [q^2 + q'^2 + l(l+1) q^2 / r^2] r^2 dr)^(1/2) on a shell rule."""
    integrand = (q**2 + dq**2 + l * (l + 1) * q**2 / r**2) * r**2
    return float(np.sqrt(np.sum(w * integrand)))


def fluid_error_norm(exact, expansion, eps, N, l=None, R=1.0, nodes=64, rule="gauss",
                     weighted=True):
    """sqrt(eps)-weighted H^1-equivalent norm of p - sum_{n<=N} eps^n P_n((r-R)/eps)."""
    if l is not None and (exact.degree != l or expansion.degree != l):
        raise DomainError("mode mismatch in fluid_error_norm")
    if exact.degree != expansion.degree:
        raise DomainError("mode mismatch in fluid_error_norm")
    r, w = radial_rule(R, R + eps, nodes, rule, panels=1)
    q = exact.p(r) - expansion.pressure(N, eps, r, R)
    dq = exact.dp(r) - expansion.pressure_derivative(N, eps, r, R)
    value = shell_norm(q, dq, r, w, exact.degree)
    if weighted:
        value *= np.sqrt(eps)
    return ModalNorm(FLUID_H1_SCALED, value)


def fluid_scaled_norm(fluid, eps, R=1.0, nodes=64):
    """Stretched-layer norm of the pressure used in the uniform a priori estimate:

    sqrt(eps)|grad_G P| + |d_S P|/sqrt(eps) + |P| + |P(S=0)|_G,
    with P(S) = p(R + eps S) on Gamma x (0, 1).
    """
    S, w = radial_rule(0.0, 1.0, nodes, "gauss", panels=1)
    r = R + eps * S
    P = fluid.p(r)
    dP = eps * fluid.dp(r)
    L = fluid.degree * (fluid.degree + 1)
    area = R**2
    grad_t = np.sqrt(L * np.sum(w * P**2))
    d_s = np.sqrt(area * np.sum(w * dP**2))
    l2 = np.sqrt(area * np.sum(w * P**2))
    trace = np.sqrt(area) * abs(float(fluid.p(R)))
    return ModalNorm(FLUID_H1_SCALED,
                     float(np.sqrt(eps) * grad_t + d_s / np.sqrt(eps) + l2 + trace))


def trace_norm(values, R=1.0):
    """L^2(Gamma) norm of a single degree-l coefficient on the sphere of radius R."""
    return ModalNorm(TRACE_L2, float(R * abs(values)))
