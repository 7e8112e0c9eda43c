"""Fermi-Walker transport, Thomas precession, and polarisation dynamics.

The transport law p' = (u u'_flat - u' u_flat) p preserves inner products and
carries the four-velocity into itself; composed with the boost to a fixed
laboratory direction it yields the precession matrices implemented here.  The
polarisation evolution in a homogeneous field combines the Larmor term with
the transport contribution of the accelerated worldline.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import (InconsistentGamma, InconsistentWorldline,
                     NotOrthogonalIncrement, NotUnitTimelike)
from .minkowski import ETA, Tetrad, dot, is_unit_timelike, lower, norm2
from .numerics import IntegratorConfig, integrate

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChargeParams:
    """Signed charge-to-mass ratio and Lande g-factor."""

    e_over_m: float
    g: float

    def __post_init__(self):
        if not (np.isfinite(self.e_over_m) and np.isfinite(self.g)):
            raise ValueError("charge parameters must be finite")


@dataclass(frozen=True)
class SpinState:
    """Four-velocity plus polarisation vector with u.s = 0."""

    u: np.ndarray
    s: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        s = np.asarray(self.s, dtype=float)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "s", s)
        if not is_unit_timelike(u, 1e-8):
            raise NotUnitTimelike(f"u.u = {norm2(u):g}")
        scale = max(1.0, float(np.abs(s).max()))
        if abs(dot(u, s)) > 1e-8 * scale:
            raise NotOrthogonalIncrement(f"u.s = {dot(u, s):g}, expected 0")


@dataclass(frozen=True)
class WorldlineSample:
    """Proper time, four-velocity, and four-acceleration at one point."""

    s: float
    u: np.ndarray
    udot: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        udot = np.asarray(self.udot, dtype=float)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "udot", udot)
        scale = max(1.0, float(np.abs(udot).max()))
        if abs(dot(u, udot)) > 1e-6 * scale:
            raise InconsistentWorldline(f"u.udot = {dot(u, udot):g} at s = {self.s:g}")


def infinitesimal_boost(u, du, *, tol: float = 1e-9) -> np.ndarray:
    """First-order boost b^i_j = delta^i_j + (u^i du_j - u_j du^i)."""
    u = np.asarray(u, dtype=float)
    du = np.asarray(du, dtype=float)
    if not is_unit_timelike(u, tol):
        raise NotUnitTimelike(f"u.u = {norm2(u):g}")
    scale = max(1.0, float(np.abs(du).max()))
    if abs(dot(u, du)) > tol * scale:
        raise NotOrthogonalIncrement(f"u.du = {dot(u, du):g}")
    return np.eye(4) + np.outer(u, lower(du)) - np.outer(du, lower(u))


def fw_kernel(u, udot) -> np.ndarray:
    """Transport matrix K^i_j = u^i udot_j - u_j udot^i."""
    u = np.asarray(u, dtype=float)
    udot = np.asarray(udot, dtype=float)
    return np.outer(u, lower(udot)) - np.outer(udot, lower(u))


def fw_derivative(p, u, udot) -> np.ndarray:
    """Transport derivative pdot^i = (u^i udot_j - u_j udot^i) p^j."""
    return fw_kernel(u, udot) @ np.asarray(p, dtype=float)


def _hermite_worldline(samples):
    """Piecewise-cubic (u, udot) interpolant through worldline samples."""
    ss = np.array([w.s for w in samples])
    us = np.array([w.u for w in samples])
    uds = np.array([w.udot for w in samples])
    if len(ss) < 2 or np.any(np.diff(ss) <= 0):
        raise InconsistentWorldline("need at least two strictly increasing samples")

    def eval_at(s):
        k = int(np.clip(np.searchsorted(ss, s) - 1, 0, len(ss) - 2))
        h = ss[k + 1] - ss[k]
        t = (s - ss[k]) / h
        u = ((1 + 2 * t) * (1 - t) ** 2 * us[k]
             + t * (1 - t) ** 2 * h * uds[k]
             + t * t * (3 - 2 * t) * us[k + 1]
             + t * t * (t - 1) * h * uds[k + 1])
        udot = (6 * t * (t - 1) / h * (us[k] - us[k + 1])
                + (1 - 4 * t + 3 * t * t) * uds[k]
                + (3 * t * t - 2 * t) * uds[k + 1])
        return u, udot

    return ss, eval_at


def fw_transport(worldline, p0, *, s_eval=None, cfg: IntegratorConfig | None = None,
                 tol: float = 1e-6):
    """Transport p0 along a worldline; preserves p.p and p.u.

    ``worldline`` is either a callable s -> WorldlineSample or a sequence of
    samples at strictly increasing proper times (interpolated cubically).
    Returns (s, p) arrays sampled at ``s_eval``, defaulting to the tabulated
    times for sampled worldlines.
    """
    cfg = cfg or IntegratorConfig()
    if callable(worldline):
        if s_eval is None:
            raise ValueError("s_eval is required for a callable worldline")

        def uv(s):
            w = worldline(s)
            scale = max(1.0, float(np.abs(w.udot).max()))
            if abs(dot(w.u, w.udot)) > tol * scale:
                raise InconsistentWorldline(f"u.udot violation at s = {s:g}")
            return w.u, w.udot
    else:
        samples = list(worldline)
        ss, uv = _hermite_worldline(samples)
        if s_eval is None:
            s_eval = ss

    def rhs(s, p):
        u, udot = uv(s)
        return fw_kernel(u, udot) @ p

    s_eval = np.asarray(s_eval, dtype=float)
    return integrate(rhs, np.asarray(p0, dtype=float),
                     (s_eval[0], s_eval[-1]), cfg, s_eval=s_eval)


def omega_exact(u, udot, v) -> np.ndarray:
    """Precession matrix of the frame boosted toward a fixed direction v:

        Omega^i_j = [gdot (v^i u_j - v_j u^i) + (u^i udot_j - u_j udot^i)
                     - g (v^i udot_j - v_j udot^i)] / (1 + g),

    with g = -v.u and gdot = -v.udot.  Annihilates v; antisymmetric once the
    upper index is lowered.
    """
    u = np.asarray(u, dtype=float)
    udot = np.asarray(udot, dtype=float)
    v = np.asarray(v, dtype=float)
    for name, x in (("u", u), ("v", v)):
        if not is_unit_timelike(x, 1e-8):
            raise NotUnitTimelike(f"{name}.{name} = {norm2(x):g}")
    g = -dot(v, u)
    gdot = -dot(v, udot)
    ud, udd, vd = lower(u), lower(udot), lower(v)
    m = (gdot * (np.outer(v, ud) - np.outer(u, vd))
         + np.outer(u, udd) - np.outer(udot, ud)
         - g * (np.outer(v, udd) - np.outer(udot, vd)))
    return m / (1.0 + g)


def _check_gamma(beta, gamma, tol):
    beta = np.asarray(beta, dtype=float)
    b2 = float(beta @ beta)
    if b2 >= 1.0:
        raise InconsistentGamma(f"|beta| = {np.sqrt(b2):g} is not below 1")
    expected = 1.0 / np.sqrt(1.0 - b2)
    if abs(gamma - expected) > tol * expected:
        raise InconsistentGamma(f"gamma = {gamma:g}, expected {expected:g}")
    return beta


def omega_spatial(beta, gamma_vec, gamma: float, *, tol: float = 1e-6) -> np.ndarray:
    """Spatial precession g^2/(1+g) (beta^r G_s - beta_s G^r) as a 3x3 matrix."""
    beta = _check_gamma(beta, gamma, tol)
    gv = np.asarray(gamma_vec, dtype=float)
    return gamma * gamma / (1.0 + gamma) * (np.outer(beta, gv) - np.outer(gv, beta))


def lorentz_force_rhs(u, f, cp: ChargeParams) -> np.ndarray:
    """Four-acceleration udot^i = -(e/m) F^i_k u^k; u.udot = 0 identically."""
    u = np.asarray(u, dtype=float)
    if not is_unit_timelike(u, 1e-8):
        raise NotUnitTimelike(f"u.u = {norm2(u):g}")
    return -cp.e_over_m * (np.asarray(f, dtype=float) @ lower(u))


def bmt_rhs(state: SpinState, f, cp: ChargeParams) -> np.ndarray:
    """Polarisation evolution in a homogeneous field:

        sdot^i = -(e/2m) [g F^{ik} + (g - 2) F^{hk} u^i u_h] s_k.

    Equals larmor_rhs + fw_spin_contribution as exact tensor algebra; the
    flow preserves both u.s and s.s.
    """
    f = np.asarray(f, dtype=float)
    sd = lower(state.s)
    ud = lower(state.u)
    return -0.5 * cp.e_over_m * (cp.g * (f @ sd)
                                 + (cp.g - 2.0) * float(ud @ f @ sd) * state.u)


def larmor_rhs(state: SpinState, f, cp: ChargeParams) -> np.ndarray:
    """Larmor precession sdot^i = -Ftilde^{ij} w_j.

    Ftilde is the field with both indices projected orthogonal to u and
    w = (g e / 2m) s is the magnetic moment.
    """
    f = np.asarray(f, dtype=float)
    proj = np.eye(4) + np.outer(state.u, lower(state.u))
    ftilde = proj @ f @ proj.T
    w = 0.5 * cp.g * cp.e_over_m * state.s
    return -(ftilde @ lower(w))


def fw_spin_contribution(state: SpinState, f, cp: ChargeParams) -> np.ndarray:
    """Transport part of the precession along the forced worldline:

        sdot^i = -(e/m) (u^i F_k{}^h - F^{ih} u_k) u_h s^k.
    """
    f = np.asarray(f, dtype=float)
    u, s = state.u, state.s
    ud = lower(u)
    return -cp.e_over_m * (u * float(lower(s) @ f @ ud) - (f @ ud) * dot(u, s))


def em_split(f, frame: Tetrad) -> tuple[np.ndarray, np.ndarray]:
    """Electric and magnetic triad components of F in an orthonormal frame.

    The component convention is pinned by being the exact inverse of
    frenet.reconstruct_field: E^lam = F^{0 lam}(frame) and
    B^lam = -(1/2) eps^{lam rho sig} F^{rho sig}(frame).
    """
    f = np.asarray(f, dtype=float)
    fab = frame.dual.T @ f @ frame.dual
    e_vec = np.array([fab[0, 1], fab[0, 2], fab[0, 3]])
    b_vec = -np.array([fab[2, 3], fab[3, 1], fab[1, 2]])
    return e_vec, b_vec


def _eps_matrix(a) -> np.ndarray:
    """Matrix N^l_r = eps^l_{rs} a^s (so that N x = x cross a)."""
    ax, ay, az = np.asarray(a, dtype=float)
    return np.array([[0.0, az, -ay],
                     [-az, 0.0, ax],
                     [ay, -ax, 0.0]])


def rest_frame_force(beta, e_vec, b_vec, cp: ChargeParams) -> np.ndarray:
    """Frame-triad acceleration -(e/m)(E + beta x B).

    This is the measuring-frame projection of the force law that feeds the
    spatial precession; with unit charge-to-mass ratio the chain
    omega_spatial(beta, rest_frame_force(...), gamma) reproduces
    thomas_omega_em exactly.
    """
    beta = np.asarray(beta, dtype=float)
    return -cp.e_over_m * (np.asarray(e_vec, dtype=float)
                           + np.cross(beta, np.asarray(b_vec, dtype=float)))


def thomas_omega_em(beta, e_vec, b_vec, gamma: float, *, tol: float = 1e-6) -> np.ndarray:
    """Thomas precession in electromagnetic form:

        Omega^l_r = -g^2/(1+g) eps^l_{rs} [(beta x E) + (beta x (beta x B))]^s.
    """
    beta = _check_gamma(beta, gamma, tol)
    e_vec = np.asarray(e_vec, dtype=float)
    b_vec = np.asarray(b_vec, dtype=float)
    axial = np.cross(beta, e_vec) + np.cross(beta, np.cross(beta, b_vec))
    return -(gamma * gamma / (1.0 + gamma)) * _eps_matrix(axial)


def larmor_em_part(beta, e_vec, b_vec, gamma: float, cp: ChargeParams) -> np.ndarray:
    """g-bracket of the total precession, with its printed 1/(1+gamma) divisor:

        -(e/2m) eps^l_{rs} [g B - beta x E]^s / (1 + gamma).
    """
    beta = np.asarray(beta, dtype=float)
    axial = (cp.g * np.asarray(b_vec, dtype=float)
             - np.cross(beta, np.asarray(e_vec, dtype=float))) / (1.0 + gamma)
    return -0.5 * cp.e_over_m * _eps_matrix(axial)


def anomalous_em_part(beta, e_vec, b_vec, gamma: float, cp: ChargeParams) -> np.ndarray:
    """(g-2)-bracket of the total precession:

        +(g-2)(e/2m) eps^l_{rs} [g^2/(1+g) beta x (beta x B) + g beta x E]^s.
    """
    beta = np.asarray(beta, dtype=float)
    axial = (gamma * gamma / (1.0 + gamma)
             * np.cross(beta, np.cross(beta, np.asarray(b_vec, dtype=float)))
             + gamma * np.cross(beta, np.asarray(e_vec, dtype=float)))
    return 0.5 * (cp.g - 2.0) * cp.e_over_m * _eps_matrix(axial)


def total_precession(beta, e_vec, b_vec, gamma: float, cp: ChargeParams, *,
                     tol: float = 1e-6) -> np.ndarray:
    """Total rest-frame precession: Larmor bracket plus (g-2) bracket."""
    beta = _check_gamma(beta, gamma, tol)
    return (larmor_em_part(beta, e_vec, b_vec, gamma, cp)
            + anomalous_em_part(beta, e_vec, b_vec, gamma, cp))


def coordinate_time_rate(q_dot, gamma: float):
    """Convert a proper-time rate to a coordinate-time rate: Q' / gamma."""
    if gamma < 1.0:
        raise InconsistentGamma(f"gamma = {gamma:g} below 1")
    return np.asarray(q_dot, dtype=float) / gamma


def circular_worldline(beta: float, omega0: float = 1.0):
    """Analytic circular worldline at lab angular rate omega0.

    Returns (worldline, period): a callable s -> WorldlineSample and the
    proper-time duration of one lab revolution.
    """
    if not 0.0 < beta < 1.0:
        raise ValueError("beta must lie in (0, 1)")
    gamma = 1.0 / np.sqrt(1.0 - beta * beta)
    rate = omega0 * gamma  # phase advance per unit proper time

    def worldline(s: float) -> WorldlineSample:
        phi = rate * s
        u = gamma * np.array([1.0, -beta * np.sin(phi), beta * np.cos(phi), 0.0])
        udot = gamma * rate * beta * np.array([0.0, -np.cos(phi), -np.sin(phi), 0.0])
        return WorldlineSample(s=float(s), u=u, udot=udot)

    return worldline, 2.0 * np.pi / rate


def bmt_run(f, cp: ChargeParams, u0, spin0, s_grid, *, renorm_threshold: float = 1e-10):
    """Co-evolve four-velocity and polarisation in a constant field.

    The worldline is the exact matrix-exponential solution of the force law;
    the polarisation is integrated with RK4 on the same uniform grid.  Drift
    of u.s beyond ``renorm_threshold`` is projected out and logged (silent
    projection would hide integrator bugs).  Returns (s_grid, u, s, report).
    """
    f = np.asarray(f, dtype=float)
    s_grid = np.asarray(s_grid, dtype=float)
    hs = np.diff(s_grid)
    if len(hs) == 0 or not np.allclose(hs, hs[0], rtol=1e-9, atol=0.0):
        raise ValueError("bmt_run needs a uniform proper-time grid")
    h = float(hs[0])
    state0 = SpinState(u=np.asarray(u0, dtype=float), s=np.asarray(spin0, dtype=float))

    force = -cp.e_over_m * (f @ ETA)   # udot = force @ u
    u_half = expm(0.5 * h * force)

    def sdot(u, s_vec):
        sd = lower(s_vec)
        return -0.5 * cp.e_over_m * (cp.g * (f @ sd)
                                     + (cp.g - 2.0) * float(lower(u) @ f @ sd) * u)

    n = len(s_grid)
    us = np.empty((n, 4))
    sp = np.empty((n, 4))
    us[0] = state0.u
    sp[0] = state0.s
    s0_norm = norm2(state0.s)
    projections = 0
    max_us = 0.0
    max_ss = 0.0
    for k in range(n - 1):
        u_k = us[k]
        u_mid = u_half @ u_k
        u_next = u_half @ u_mid
        s_k = sp[k]
        k1 = sdot(u_k, s_k)
        k2 = sdot(u_mid, s_k + 0.5 * h * k1)
        k3 = sdot(u_mid, s_k + 0.5 * h * k2)
        k4 = sdot(u_next, s_k + h * k3)
        s_new = s_k + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        drift = dot(u_next, s_new)
        max_us = max(max_us, abs(drift))
        if abs(drift) > renorm_threshold:
            s_new = s_new + drift * u_next   # project back onto u-orthogonal space
            projections += 1
            log.info("projected u.s drift %.3e at s = %.6f", drift, s_grid[k + 1])
        max_ss = max(max_ss, abs(norm2(s_new) - s0_norm))
        us[k + 1] = u_next
        sp[k + 1] = s_new
    report = {"n_projections": projections,
              "max_us_drift": max_us,
              "max_ss_drift": max_ss}
    return s_grid, us, sp, report
