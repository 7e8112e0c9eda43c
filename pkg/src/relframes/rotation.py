"""Uniform rotation: the Galilean transformation and its relativistic form.

The relativistic map is a hyperbolic rotation in the (x0, r*theta) plane at
fixed radius and height, with rapidity alpha = omega*r/c.  The radius enters
as a parameter of the transformation, never as a transformed coordinate, and
the rim speed saturates at c through v = c*tanh(omega*r/c).  This module is
the only one that keeps c explicit (to exercise the c -> infinity limit);
everything else works in natural units.
"""
from dataclasses import dataclass

import numpy as np

from .errors import NotOrthogonal, ZeroRadius
from .minkowski import Tetrad, tetrad_new

_BRACKET_CACHE: np.ndarray | None = None


@dataclass(frozen=True)
class CylEvent:
    """Event in cylindrical coordinates (x0, r, theta, z), x0 = c*t."""

    x0: float
    r: float
    theta: float
    z: float = 0.0

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("radius must be nonnegative")


@dataclass(frozen=True)
class RotationParams:
    """Angular velocity, radius, and light speed of a rotating observer.

    ``r`` and ``z`` are held fixed by the rotation map; only (x0, theta)
    transform.
    """

    omega: float
    r: float
    c: float = 1.0
    z: float = 0.0

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError("c must be positive")
        if self.r <= 0:
            raise ZeroRadius("r must be positive")
        if not np.isfinite(self.alpha):
            raise ValueError("omega * r / c must be finite")

    @property
    def alpha(self) -> float:
        return self.omega * self.r / self.c


def galilean_rotating_velocity(x, v, rot, rot_dot, *, tol: float = 1e-9) -> np.ndarray:
    """Velocity in the rotating frame: v'^a = R^a_b v^b + Rdot^a_b x^b."""
    rot = np.asarray(rot, dtype=float)
    if np.abs(rot @ rot.T - np.eye(3)).max() > tol:
        raise NotOrthogonal("rotation matrix is not orthogonal")
    return rot @ np.asarray(v, dtype=float) + np.asarray(rot_dot, dtype=float) @ np.asarray(x, dtype=float)


def galilean_rotating_acceleration(x_rot, v_rot, omega_mat, omega_dot,
                                   vdot=None) -> np.ndarray:
    """Acceleration seen in the rotating frame.

    vdot' = vdot + 2 W v' + (Wdot + W^2) x', with W the antisymmetric
    angular-velocity matrix; the second and third terms are the Coriolis and
    centrifugal contributions.
    """
    w = np.asarray(omega_mat, dtype=float)
    if np.abs(w + w.T).max() > 1e-9 * max(1.0, np.abs(w).max()):
        raise ValueError("angular-velocity matrix must be antisymmetric")
    wd = np.asarray(omega_dot, dtype=float)
    base = np.zeros(3) if vdot is None else np.asarray(vdot, dtype=float)
    return (base + 2.0 * w @ np.asarray(v_rot, dtype=float)
            + (wd + w @ w) @ np.asarray(x_rot, dtype=float))


def rrt_map(ev, p: RotationParams):
    """Hyperbolic rotation of (x0, theta) at fixed r, z.

        theta' = theta cosh(a) - (x0 / r) sinh(a)
        x0'    = x0 cosh(a) - r theta sinh(a),      a = omega r / c.

    Accepts scalars or arrays for the event pair; omega = 0 is the identity.
    """
    x0 = np.asarray(ev[0], dtype=float)
    theta = np.asarray(ev[1], dtype=float)
    a = p.alpha
    ch, sh = np.cosh(a), np.sinh(a)
    x0p = x0 * ch - p.r * theta * sh
    thetap = theta * ch - (x0 / p.r) * sh
    if x0p.ndim == 0:
        return float(x0p), float(thetap)
    return x0p, thetap


def rrt_preserves_interval(ev1, ev2, p: RotationParams) -> tuple[float, float]:
    """2D interval -(dx0)^2 + (r dtheta)^2 before and after the map."""
    def interval(a, b):
        dx0 = a[0] - b[0]
        dth = a[1] - b[1]
        return float(-(dx0 ** 2) + (p.r * dth) ** 2)

    before = interval(ev1, ev2)
    after = interval(rrt_map(ev1, p), rrt_map(ev2, p))
    return before, after


def cylindrical_metric(r: float) -> np.ndarray:
    """Minkowski metric in the (x0, r, theta, z) coordinate basis."""
    return np.diag([-1.0, 1.0, float(r) ** 2, 1.0])


def rrt_tetrad(p: RotationParams) -> Tetrad:
    """Frame of the rotating observer in the (x0, r, theta, z) basis.

    E_0 = (cosh a, 0, sinh a / r, 0), E_1 = dr, E_2 = (sinh a, 0, cosh a / r, 0),
    E_3 = dz; orthonormal for ds^2 = -dx0^2 + dr^2 + r^2 dtheta^2 + dz^2.
    """
    if p.r <= 0:
        raise ZeroRadius("rotational frame undefined at r = 0")
    a = p.alpha
    ch, sh = np.cosh(a), np.sinh(a)
    rows = np.array([
        [ch, 0.0, sh / p.r, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [sh, 0.0, ch / p.r, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])
    return tetrad_new(rows, coord_metric=cylindrical_metric(p.r), tol=1e-9)


def rim_speed(omega: float, r: float, c: float = 1.0) -> float:
    """Rim speed v = c tanh(omega r / c); strictly below c, additive in omega."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if c <= 0:
        raise ValueError("c must be positive")
    return float(c * np.tanh(omega * r / c))


def rrt_generators(p: RotationParams):
    """Numeric generator fields of the rotation map in (x0, r, y=r*theta, z).

    Returns f(point) -> (3, 4) array with rows X1, X2, X3: the hyperbolic
    rotation generator of the (x0, y) plane and the frame fields along the
    binormal and tangent directions.  Used by the finite-difference bracket
    cross-check.
    """
    def fields(point) -> np.ndarray:
        x0, r, y, _z = np.asarray(point, dtype=float)
        a = p.omega * r / p.c
        return np.array([
            [y, 0.0, x0, 0.0],
            [np.sinh(a), 0.0, np.cosh(a), 0.0],
            [np.cosh(a), 0.0, np.sinh(a), 0.0],
        ])

    return fields


def rrt_lie_brackets() -> np.ndarray:
    """Structure constants of the three rotational generator fields.

    Computes [X_i, X_j] by exact symbolic differentiation and expresses each
    bracket in the X basis, verifying the expansion symbolically.  Returns
    c with shape (3, 3, 3) such that [X_i, X_j] = sum_k c[i, j, k] X_k; the
    algebra closes with constant integer coefficients (a solvable
    three-dimensional algebra, not a rotation algebra).
    """
    global _BRACKET_CACHE
    if _BRACKET_CACHE is not None:
        return _BRACKET_CACHE
    import sympy as sp

    x0, r, y, z = sp.symbols("x0 r y z", real=True)
    om, cc = sp.symbols("omega c", positive=True)
    alpha = om * r / cc
    coords = (x0, r, y, z)
    fields = (
        sp.Matrix([y, 0, x0, 0]),
        sp.Matrix([sp.sinh(alpha), 0, sp.cosh(alpha), 0]),
        sp.Matrix([sp.cosh(alpha), 0, sp.sinh(alpha), 0]),
    )

    def bracket(xf, yf):
        return sp.Matrix([
            sum(xf[j] * sp.diff(yf[i], coords[j]) - yf[j] * sp.diff(xf[i], coords[j])
                for j in range(4))
            for i in range(4)
        ])

    ks = sp.symbols("k1 k2 k3")
    # the fields span only a 2-plane pointwise, so match at two generic points
    points = ({x0: 2, r: 1, y: 3, z: 5}, {x0: 7, r: 2, y: 1, z: 4})
    table = np.zeros((3, 3, 3))
    for i in range(3):
        for j in range(i + 1, 3):
            br = bracket(fields[i], fields[j])
            eqs = []
            for sub in points:
                for comp in range(4):
                    eqs.append(sp.Eq(
                        br[comp].subs(sub),
                        sum(k * f[comp].subs(sub) for k, f in zip(ks, fields)),
                    ))
            sol = sp.solve(eqs, ks, dict=True)
            if len(sol) != 1:
                raise RuntimeError("bracket does not expand uniquely in the X basis")
            coeffs = [sp.nsimplify(sol[0].get(k, 0)) for k in ks]
            resid = br - sum((c * f for c, f in zip(coeffs, fields)), sp.zeros(4, 1))
            if sp.simplify(resid) != sp.zeros(4, 1):
                raise RuntimeError("bracket expansion failed symbolic verification")
            for k, c in enumerate(coeffs):
                table[i, j, k] = float(c)
                table[j, i, k] = -float(c)
    table.setflags(write=False)
    _BRACKET_CACHE = table
    return table
