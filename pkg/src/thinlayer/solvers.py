"""Per-mode solvers: exact transmission problem, equivalent conditions, multiscale terms.

Everything reduces to small dense systems in the potential amplitudes
(A, B) of the solid and (a, b) of the fluid. Degree 0 has no shear row and
no SV column and is solved as an explicitly reduced system.
"""

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Polynomial

from .ec_operators import elasto_symbol
from .elastic_modes import (ModalSolidField, normal_trace_row, traction_from_profiles,
                            traction_matrix)
from .errors import DomainError, NumericalError, ResonanceError
from .fluid_modes import ModalFluidField
from .geometry import SphereGeometry, lb_symbol, scaled_laplacian_symbols
from .norms import fluid_error_norm, solid_error_norm
from .special_functions import sph_j, sph_y

COND_LIMIT = 1e12
SINGULAR_TOL = 1e-10
MARGIN_TOL = 1e-6


def _normalized_det(matrix, l, terms=None):
    """Scale-free distance of a traction-type system from singularity.

    For l >= 1 this is |det| / (|m00 m11| + |m01 m10|): the fraction of the
    determinant that survives cancellation. It is unchanged by scaling any
    row or column, which matters because the Bessel columns differ by
    orders of magnitude at low frequency. The l = 0 system is a single
    number, compared in the same spirit with the sum of the magnitudes of
    the terms that make it up.
    """
    if l == 0:
        total = np.sum(np.abs(terms))
        return 0.0 if total == 0 else abs(matrix[0, 0]) / total
    perm = abs(matrix[0, 0] * matrix[1, 1]) + abs(matrix[0, 1] * matrix[1, 0])
    if perm == 0:
        return 0.0
    return abs(matrix[0, 0] * matrix[1, 1] - matrix[0, 1] * matrix[1, 0]) / perm


def _l0_terms(mat, R, beta=0.0):
    """Additive pieces of the l = 0 traction(+impedance) entry: lam*div, 2mu*f', beta*f."""
    kp = mat.k_p
    j, dj = sph_j(0, kp * R, derivative=True)
    f = kp * dj
    fp = -kp**2 * j - 2 * f / R     # j0'' from the Bessel ODE, times kp^2
    div = fp + 2 * f / R
    return np.array([mat.lam * div, 2 * mat.mu * fp, beta * f])


def resonance_margin(mat, l, R=1.0):
    """Normalized determinant of the traction-free system of degree l.

    Vanishes when omega is an eigenfrequency of the traction-free ball.
    """
    M = traction_matrix(mat, l, R)
    return float(_normalized_det(M, l, _l0_terms(mat, R) if l == 0 else None))


def ec_matrix(k, mat, R, eps, l):
    """Matrix of the order-(k+1) equivalent condition acting on (A, B), and beta."""
    geom = SphereGeometry(R, eps)
    beta = elasto_symbol(k, eps, geom, mat, l)
    E = traction_matrix(mat, l, R)
    E[0, :] += beta * normal_trace_row(mat, l, R)
    if l == 0:
        E[0, 1] = 0.0
    return E, beta


def _solve_traction_system(E, rhs, l, terms, what):
    margin = _normalized_det(E, l, terms)
    if margin < SINGULAR_TOL:
        raise ResonanceError(
            f"{what} is singular for l={l} (normalized determinant {margin:.3e}); "
            "omega is at or next to an eigenfrequency", degree=l, measure=margin)
    if l == 0:
        return np.array([rhs[0] / E[0, 0], 0.0])
    return np.linalg.solve(E, rhs)


def solve_ec(k, mat, R, eps, l, forcing):
    """Solid field under the order-(k+1) condition, forced by ``forcing``.

    Solves tau_rr + beta u_r = 0, tau_rt = 0 for the total field u_h + u_p.
    """
    if eps < 0:
        raise DomainError("eps must be >= 0")
    _check_forcing(mat, l, forcing, R)
    E, beta = ec_matrix(k, mat, R, eps, l)
    rhs = -np.array([forcing.trr_trace + beta * forcing.un_trace, forcing.trt_trace])
    terms = _l0_terms(mat, R, beta) if l == 0 else None
    A, B = _solve_traction_system(E, rhs, l, terms, f"equivalent condition k={k}, eps={eps}")
    return ModalSolidField(l, float(A), float(B), mat, forcing, 1.0)


def ec_conditioning(k, mat, R, eps, l):
    E, _ = ec_matrix(k, mat, R, eps, l)
    if l == 0:
        return 1.0
    return float(np.linalg.cond(E))


def solve_traction_data(mat, l, R, tau_rr, tau_rt=0.0):
    """Homogeneous solid field with prescribed traction on the sphere r = R."""
    E = traction_matrix(mat, l, R)
    terms = _l0_terms(mat, R) if l == 0 else None
    A, B = _solve_traction_system(E, np.array([tau_rr, tau_rt]), l, terms,
                                  "traction problem")
    return ModalSolidField(l, float(A), float(B), mat)


def _check_forcing(mat, l, forcing, R):
    if forcing.degree != l or forcing.material != mat:
        raise DomainError("forcing was built for another mode or material")
    if forcing.R != R:
        raise DomainError("forcing was built for another radius")


# ---------------------------------------------------------------------------
# exact transmission problem


@dataclass(frozen=True)
class TransmissionSolution:
    solid: ModalSolidField
    fluid: ModalFluidField
    forcing: object
    conditioning: float
    geom: SphereGeometry
    matrix: np.ndarray = field(repr=False, compare=False, default=None)
    rhs: np.ndarray = field(repr=False, compare=False, default=None)

    def boundary_residuals(self):
        """Defects of the four interface/boundary conditions, using total fields.

        Order: tau_rr + p, tau_rt, p' - rho_f omega^2 u_r, p(R + eps).
        """
        R, eps = self.geom.R, self.geom.eps
        mat = self.solid.material
        f, fp, _, g, gp, _ = self.solid.profiles(R)
        trr, trt = traction_from_profiles(mat, self.solid.degree, R, f, fp, g, gp)
        p = float(self.fluid.p(R))
        return np.array([
            float(trr) + p,
            float(trt),
            float(self.fluid.dp(R)) - mat.coupling * float(f),
            float(self.fluid.p(R + eps)),
        ])


def transmission_system(mat, geom, l, forcing):
    """Assemble the coupled per-mode system in (A, B, a, b) (no B for l = 0)."""
    R, eps = geom.R, geom.eps
    kappa = mat.kappa
    M = traction_matrix(mat, l, R)
    un_row = normal_trace_row(mat, l, R)
    j, dj = sph_j(l, kappa * R, derivative=True)
    y, dy = sph_y(l, kappa * R, derivative=True)
    jo = sph_j(l, kappa * (R + eps))
    yo = sph_y(l, kappa * (R + eps))
    w = mat.coupling
    S = np.array([
        [M[0, 0], M[0, 1], j, y],
        [M[1, 0], M[1, 1], 0.0, 0.0],
        [-w * un_row[0], -w * un_row[1], kappa * dj, kappa * dy],
        [0.0, 0.0, jo, yo],
    ])
    rhs = np.array([-forcing.trr_trace, -forcing.trt_trace, w * forcing.un_trace, 0.0])
    if l == 0:
        keep = [0, 2, 3]
        S = S[np.ix_(keep, keep)]
        rhs = rhs[keep]
    return S, rhs


def _equilibrate(S):
    col = np.max(np.abs(S), axis=0)
    col[col == 0] = 1.0
    Sc = S / col
    row = np.max(np.abs(Sc), axis=1)
    row[row == 0] = 1.0
    return Sc / row[:, None], row, col


def solve_transmission(mat, geom, l, forcing):
    """Exact coupled solid/fluid solution of degree l for the given forcing."""
    if not geom.eps > 0:
        raise DomainError("solve_transmission needs eps > 0")
    _check_forcing(mat, l, forcing, geom.R)
    S, rhs = transmission_system(mat, geom, l, forcing)
    Ss, row, col = _equilibrate(S)
    cond = float(np.linalg.cond(Ss))
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise ResonanceError(
            f"transmission system for l={l}, eps={geom.eps} has condition estimate {cond:.3e}; "
            "omega is not admissible (eigenfrequency of the coupled problem)",
            degree=l, measure=cond)
    z = np.linalg.solve(Ss, rhs / row) / col
    if not np.all(np.isfinite(z)):
        raise NumericalError("non-finite transmission coefficients")
    if l == 0:
        A, B, a, b = z[0], 0.0, z[1], z[2]
    else:
        A, B, a, b = z
    solid = ModalSolidField(l, float(A), float(B), mat, forcing, 1.0)
    fluid = ModalFluidField(l, float(a), float(b), mat.kappa)
    return TransmissionSolution(solid, fluid, forcing, cond, geom, S, rhs)


# ---------------------------------------------------------------------------
# multiscale expansion

Y = Polynomial([0.0, 1.0])
ONE = Polynomial([1.0])
ZERO = Polynomial([0.0])


def closed_form_profile(n, traces, geom, mat, l):
    """Profiles P_0..P_3 in closed form; ``traces[j]`` is u_j . n on Gamma."""
    H = geom.mean_curvature()
    K = geom.gaussian_curvature()
    w = mat.coupling
    helm = lb_symbol(geom, l) + mat.kappa**2
    if n == 0:
        return ZERO
    if n == 1:
        return (Y - 1) * (w * traces[0])
    if n == 2:
        return -(Y**2 - 1) * (H * w * traces[0]) + (Y - 1) * (w * traces[1])
    if n == 3:
        return ((Y**3 - 1) * (w / 6 * (8 * H**2 - 2 * K - helm) * traces[0])
                + (Y**2 - 1) * (w / 2 * (helm * traces[0] - 2 * H * traces[1]))
                + (Y - 1) * (w * traces[2]))
    raise DomainError("closed-form profiles are available for n <= 3")


def integrated_profile(n, profiles, traces, geom, mat, l):
    """P_n from the two-point problem P'' = -sum_{i>=1} L^i P_{n-i},
    P'(0) = rho_f omega^2 u_{n-1}.n, P(1) = 0, integrated exactly on polynomials."""
    if n == 0:
        return ZERO
    if n > 3:
        raise DomainError("the stretched Laplacian is only expanded to L^2; n <= 3")
    ops = scaled_laplacian_symbols(geom, l, mat.kappa)
    rhs = ZERO
    for i in (1, 2):
        m = n - i
        if m < 0:
            continue
        q = profiles[m]
        rhs = rhs - ops[i](Y, q, q.deriv(1), q.deriv(2))
    slope = mat.coupling * traces[n - 1]
    P = rhs.integ(2) + slope * Y       # P(0) free, P'(0) = slope
    return P - P(1.0)


@dataclass(frozen=True)
class ExpansionSet:
    """Terms u_j (solid) and profiles P_j (fluid, polynomials in Y = (r - R)/eps)."""

    degree: int
    solid_terms: tuple
    profiles: tuple
    traces: tuple
    R: float

    @property
    def order(self):
        return len(self.solid_terms) - 1

    def truncated_solid(self, N, eps):
        total = self.solid_terms[0]
        for n in range(1, N + 1):
            total = total + eps**n * self.solid_terms[n]
        return total

    def pressure(self, N, eps, r, R=None):
        R = self.R if R is None else R
        Yr = (np.asarray(r, dtype=float) - R) / eps
        return sum(eps**n * self.profiles[n](Yr) for n in range(N + 1))

    def pressure_derivative(self, N, eps, r, R=None):
        R = self.R if R is None else R
        Yr = (np.asarray(r, dtype=float) - R) / eps
        return sum(eps ** (n - 1) * self.profiles[n].deriv(1)(Yr) for n in range(1, N + 1))

    def traction_datum(self, n):
        """Normal traction imposed on u_n: -P_n(0)."""
        return -float(self.profiles[n](0.0))


def multiscale_terms(mat, geom, l, forcing, N=3, profile_source="closed"):
    """Expansion terms u_0..u_N and P_0..P_N.

    ``profile_source`` selects the printed closed forms ("closed") or
    direct integration of the profile problems ("integrated").
    """
    if not 0 <= N <= 3:
        raise DomainError("expansion order must be in 0..3")
    R = geom.R
    _check_forcing(mat, l, forcing, R)
    u0 = solve_ec(0, mat, R, 0.0, l, forcing)
    solid = [u0]
    traces = [u0.normal_trace(R)]
    profiles = [ZERO]
    for n in range(1, N + 1):
        if profile_source == "closed":
            P = closed_form_profile(n, traces, geom, mat, l)
        elif profile_source == "integrated":
            P = integrated_profile(n, profiles, traces, geom, mat, l)
        else:
            raise DomainError(f"unknown profile source {profile_source!r}")
        profiles.append(P)
        un = solve_traction_data(mat, l, R, -float(P(0.0)))
        solid.append(un)
        traces.append(un.normal_trace(R))
    return ExpansionSet(l, tuple(solid), tuple(profiles), tuple(traces), R)


def remainder(exact, expansion, eps, N, nodes=64):
    """(solid, fluid) remainder norms of the order-N truncated expansion."""
    if exact.solid.degree != expansion.degree:
        raise DomainError("mode mismatch between exact solution and expansion")
    if exact.solid.material != expansion.solid_terms[0].material:
        raise DomainError("material mismatch between exact solution and expansion")
    if N > expansion.order:
        raise DomainError(f"expansion only holds terms up to {expansion.order}")
    if abs(exact.geom.eps - eps) > 1e-15 * max(1.0, eps):
        raise DomainError("eps differs from the exact solution's layer thickness")
    R = exact.geom.R
    solid = solid_error_norm(exact.solid, expansion.truncated_solid(N, eps), R=R, nodes=nodes)
    fluid = fluid_error_norm(exact.fluid, expansion, eps, N, R=R, nodes=nodes)
    return solid.value, fluid.value


def ec_defect(k, expansion, eps, geom, mat):
    """Normal traction left by the truncated expansion in the order-(k+1) condition.

    T(u_{k,eps}).n + beta_k * u_{k,eps}.n, with T(u_0) = 0 and T(u_n) = -P_n(0).
    """
    l = expansion.degree
    beta = elasto_symbol(k, eps, geom, mat, l)
    traction = sum(eps**n * expansion.traction_datum(n) for n in range(1, k + 1))
    trace = sum(eps**n * expansion.traces[n] for n in range(k + 1))
    return traction + beta * trace
