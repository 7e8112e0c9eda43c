"""Construction, composition, and decomposition of Lorentz transformations.

A boost here is the unique Lorentz map sending one unit timelike vector to
another while fixing their common orthogonal 2-plane pointwise.  Boosts do
not close under composition; the residual spatial rotation is extracted by
the boost-rotation split.
"""
from dataclasses import dataclass

import numpy as np

from .errors import (AntipodalDegenerate, ExtremeRapidity, FrameMismatch,
                     NotARotationAboutU, NotLorentz, NotUnitTimelike,
                     PastPointing)
from .minkowski import (ETA, Tetrad, dot, is_future, is_unit_timelike, lower,
                        norm2, orthogonal_triad, tetrad_new)

GAMMA_GUARD = 1e6


def lorentz_residual(L) -> float:
    """Max deviation of L^T eta L from eta."""
    L = np.asarray(L, dtype=float)
    return float(np.abs(L.T @ ETA @ L - ETA).max())


def is_lorentz(L, tol: float = 1e-9) -> bool:
    return lorentz_residual(L) <= tol


def lorentz_inverse(L) -> np.ndarray:
    """Inverse via the metric: L^{-1} = eta L^T eta."""
    L = np.asarray(L, dtype=float)
    return ETA @ L.T @ ETA


def _check_velocity(x, tol, name="vector"):
    if not is_unit_timelike(x, tol):
        raise NotUnitTimelike(f"{name} has u.u = {norm2(x):g}, expected -1")
    if not is_future(x):
        raise PastPointing(f"{name} is past-pointing")


@dataclass(frozen=True)
class Boost:
    """Boost taking four-velocity ``u`` to ``v``; ``matrix @ u == v``."""

    matrix: np.ndarray
    u: np.ndarray
    v: np.ndarray
    gamma: float


@dataclass(frozen=True)
class CycleResult:
    """Product of a boost cycle: fixes ``fixed_vector`` and rotates its
    orthogonal 3-space by ``rotation_angle`` about ``rotation_axis`` (axis
    components refer to ``triad``, the deterministic completion of the fixed
    vector)."""

    matrix: np.ndarray
    fixed_vector: np.ndarray
    rotation_angle: float
    rotation_axis: np.ndarray | None
    triad: np.ndarray


def boost_matrix(u, v) -> np.ndarray:
    """Unchecked boost matrix B^i_j sending u to v."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    g = -dot(v, u)
    w = u + v
    return np.eye(4) + np.outer(w, lower(w)) / (1.0 + g) - 2.0 * np.outer(v, lower(u))


def boost(u, v, *, tol: float = 1e-9) -> Boost:
    """Boost between unit future timelike four-velocities.

    The returned matrix satisfies B u = v, is Lorentz, and acts as the
    identity on the 2-plane orthogonal to both u and v.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    _check_velocity(u, tol, "u")
    _check_velocity(v, tol, "v")
    g = -dot(v, u)
    if 1.0 + g < tol:
        raise AntipodalDegenerate(f"1 + gamma = {1.0 + g:g} below tolerance")
    if g > GAMMA_GUARD:
        raise ExtremeRapidity(f"gamma = {g:g} exceeds guard {GAMMA_GUARD:g}")
    m = boost_matrix(u, v)
    m.setflags(write=False)
    return Boost(matrix=m, u=u.copy(), v=v.copy(), gamma=float(g))


def relative_velocity(frame: Tetrad, frame_bar: Tetrad, *, tol: float = 1e-9) -> np.ndarray:
    """Three-velocity of ``frame`` as measured in ``frame_bar``.

    beta^lam = (1/gamma) u^i E_i{}^lam with u the timelike leg of ``frame``
    and E the dual of ``frame_bar``.
    """
    u = frame.e[0]
    e0_bar = frame_bar.e[0]
    _check_velocity(u, tol, "frame.e0")
    _check_velocity(e0_bar, tol, "frame_bar.e0")
    g = -dot(u, e0_bar)
    comps = u @ frame_bar.dual
    return comps[1:] / g


def boost_space_axes(t: Tetrad, b: Boost, *, tol: float = 1e-8) -> Tetrad:
    """Image tetrad E_a = B e_a of ``t`` under the boost ``b``.

    Requires t.e0 = b.u; the identity boost returns the same tetrad.
    """
    if np.abs(t.e[0] - b.u).max() > tol:
        raise FrameMismatch("tetrad timelike leg differs from the boost source")
    return tetrad_new((b.matrix @ t.e.T).T, tol=1e-9)


def compose(l1, l2, *, tol: float = 1e-9) -> np.ndarray:
    """Product l1 @ l2 of two verified Lorentz matrices."""
    l1 = np.asarray(l1, dtype=float)
    l2 = np.asarray(l2, dtype=float)
    for name, L in (("l1", l1), ("l2", l2)):
        if not is_lorentz(L, tol):
            raise NotLorentz(f"{name} residual {lorentz_residual(L):g}")
    out = l1 @ l2
    if not is_lorentz(out, 10 * tol):
        raise NotLorentz("product failed the metric-preservation check")
    return out


def _cvec(a, b):
    # auxiliary vector (a + b) / (1 - a.b); a.c(a,b) = b.c(a,b) = -1
    return (a + b) / (1.0 - dot(a, b))


def cycle(u, intermediates, *, tol: float = 1e-9) -> CycleResult:
    """Composition of boosts u -> v_1 -> ... -> v_n -> u.

    The product fixes u and restricts to a proper rotation of u's orthogonal
    3-space; that rotation is returned as angle and axis.
    """
    u = np.asarray(u, dtype=float)
    _check_velocity(u, tol, "u")
    m = np.eye(4)
    prev = u
    for k, w in enumerate(intermediates):
        w = np.asarray(w, dtype=float)
        _check_velocity(w, tol, f"intermediates[{k}]")
        m = boost(prev, w, tol=tol).matrix @ m
        prev = w
    m = boost(prev, u, tol=tol).matrix @ m
    angle, axis, triad = _angle_axis_about(m, u, tol=max(tol, 1e-8))
    return CycleResult(matrix=m, fixed_vector=u, rotation_angle=angle,
                       rotation_axis=axis, triad=triad)


def cycle2_exact_axes(u, v, w, t: Tetrad, *, tol: float = 1e-9) -> Tetrad:
    """Closed-form image of a tetrad under the three-boost cycle u -> v -> w -> u.

    The timelike leg is fixed exactly; the spatial legs are

        G_lam = e_lam + (v.e_lam) B + (w.e_lam) A,
        A = c(v,w) + (u.c(v,w)) c(u,w),
        B = c(u,v) - c(u,w) + (w.c(u,v)) A,

    with c(a,b) = (a + b)/(1 - a.b).  Equals the brute-force boost product.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    for name, x in (("u", u), ("v", v), ("w", w)):
        _check_velocity(x, tol, name)
    if np.abs(t.e[0] - u).max() > 1e-8:
        raise FrameMismatch("tetrad timelike leg must equal u")
    avec = _cvec(v, w) + dot(u, _cvec(v, w)) * _cvec(u, w)
    bvec = _cvec(u, v) - _cvec(u, w) + dot(w, _cvec(u, v)) * avec
    rows = [u]
    for lam in (1, 2, 3):
        e = t.e[lam]
        rows.append(e + dot(v, e) * bvec + dot(w, e) * avec)
    return tetrad_new(rows, tol=1e-8)


def decompose(L, u, *, tol: float = 1e-9) -> tuple[Boost, np.ndarray]:
    """Split L = B R with B = boost(u, L u) and R a rotation fixing u."""
    L = np.asarray(L, dtype=float)
    u = np.asarray(u, dtype=float)
    if not is_lorentz(L, tol):
        raise NotLorentz(f"residual {lorentz_residual(L):g}")
    _check_velocity(u, tol, "u")
    lu = L @ u
    if not is_future(lu):
        raise PastPointing("L u is past-pointing")
    b = boost(u, lu, tol=max(tol, 1e-8))
    r = lorentz_inverse(b.matrix) @ L
    return b, r


def _angle_axis_about(R, u, tol):
    triad = orthogonal_triad(u)
    if np.abs(R @ u - u).max() > tol:
        raise NotARotationAboutU("matrix does not fix u to tolerance")
    if not is_lorentz(R, max(tol, 1e-8)):
        raise NotLorentz(f"residual {lorentz_residual(R):g}")
    r3 = np.array([[dot(a, R @ b) for b in triad] for a in triad])
    if abs(np.linalg.det(r3) - 1.0) > 1e-6:
        raise NotARotationAboutU("restriction to u's 3-space is not proper")
    anti = 0.5 * np.array([r3[2, 1] - r3[1, 2],
                           r3[0, 2] - r3[2, 0],
                           r3[1, 0] - r3[0, 1]])
    sin_t = float(np.linalg.norm(anti))
    cos_t = float(0.5 * (np.trace(r3) - 1.0))
    angle = float(np.arctan2(sin_t, cos_t))
    if angle < tol:
        return angle, None, triad
    if angle > np.pi - 1e-6:
        # axis from the +1 eigenvector of the symmetrized rotation
        sym = 0.5 * (r3 + r3.T)
        vals, vecs = np.linalg.eigh(sym)
        axis = vecs[:, int(np.argmax(vals))]
        nz = np.nonzero(np.abs(axis) > 1e-12)[0]
        if nz.size and axis[nz[0]] < 0:
            axis = -axis
        return angle, axis, triad
    return angle, anti / sin_t, triad


def rotation_angle_axis(R, u, *, tol: float = 1e-9) -> tuple[float, np.ndarray | None]:
    """Angle in [0, pi] and unit axis of a rotation R about u.

    The axis components refer to the deterministic triad completing u
    (minkowski.orthogonal_triad); it is None below the angle tolerance.
    """
    angle, axis, _ = _angle_axis_about(np.asarray(R, dtype=float),
                                       np.asarray(u, dtype=float), tol)
    return angle, axis
