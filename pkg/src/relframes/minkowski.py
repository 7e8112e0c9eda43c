"""Flat-spacetime tensor algebra.

Metric signature is fixed to (-,+,+,+) with natural units c = 1; unit
four-velocities satisfy u.u = -1.  Orientation convention for the rank-4
alternating symbol is eps_0123 = +1.
"""
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import NotOrthonormal, SingularFrame

ETA = np.diag([-1.0, 1.0, 1.0, 1.0])
ETA.setflags(write=False)

ORTHONORMALITY_TOL = 1e-10


def _levi_civita4() -> np.ndarray:
    eps = np.zeros((4, 4, 4, 4))
    for perm in itertools.permutations(range(4)):
        sign = 1
        for i in range(4):
            for j in range(i + 1, 4):
                if perm[i] > perm[j]:
                    sign = -sign
        eps[perm] = sign
    eps.setflags(write=False)
    return eps


#: alternating symbol with eps[0,1,2,3] = +1
EPS4 = _levi_civita4()


def dot(x, y) -> float:
    """Minkowski scalar product eta_ij x^i y^j."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return float(x[1] * y[1] + x[2] * y[2] + x[3] * y[3] - x[0] * y[0])


def norm2(x) -> float:
    return dot(x, x)


def lower(x) -> np.ndarray:
    """Covector x_i = eta_ij x^j."""
    x = np.asarray(x, dtype=float)
    out = x.copy()
    out[0] = -out[0]
    return out


def raise_(xi) -> np.ndarray:
    """Vector x^i = eta^ij xi_j; inverse of :func:`lower`."""
    return lower(xi)


def is_unit_timelike(x, tol: float = 1e-9) -> bool:
    return abs(norm2(x) + 1.0) <= tol


def is_future(x) -> bool:
    return np.asarray(x, dtype=float)[0] > 0.0


@dataclass(frozen=True)
class Tetrad:
    """Orthonormal frame e_a{}^i together with its dual e_i{}^a.

    ``e`` holds the frame vectors as rows (index a first), ``dual`` is the
    matrix inverse (coordinate index first).  ``coord_metric`` is the metric
    of the coordinate basis the components refer to; the flat eta unless the
    frame lives in curvilinear coordinates.
    """

    e: np.ndarray
    dual: np.ndarray
    residual: float
    right_handed: bool
    coord_metric: np.ndarray

    def vector(self, a: int) -> np.ndarray:
        return self.e[a]


def tetrad_new(vectors, *, coord_metric=None, strict: bool = True,
               tol: float = ORTHONORMALITY_TOL) -> Tetrad:
    """Build a tetrad from four frame vectors, computing the dual by inversion.

    Raises SingularFrame for linearly dependent vectors and, in strict mode,
    NotOrthonormal when the Gram-matrix residual exceeds ``tol``.
    """
    e = np.array(vectors, dtype=float).reshape(4, 4)
    if not np.isfinite(e).all():
        raise SingularFrame("frame vectors must be finite")
    g = ETA if coord_metric is None else np.asarray(coord_metric, dtype=float)
    det = np.linalg.det(e)
    scale = max(1.0, float(np.abs(e).max()) ** 4)
    if abs(det) < 1e-12 * scale:
        raise SingularFrame(f"frame determinant {det:g} is zero to tolerance")
    dual = np.linalg.inv(e)
    residual = float(np.abs(e @ g @ e.T - ETA).max())
    if strict and residual > tol:
        raise NotOrthonormal(f"orthonormality residual {residual:g} exceeds {tol:g}")
    e.setflags(write=False)
    dual.setflags(write=False)
    return Tetrad(e=e, dual=dual, residual=residual,
                  right_handed=bool(det > 0.0), coord_metric=g)


def canonical_tetrad() -> Tetrad:
    return tetrad_new(np.eye(4))


def physical_components(x, t: Tetrad) -> np.ndarray:
    """Frame components x^a = x^i e_i{}^a."""
    return np.asarray(x, dtype=float) @ t.dual


def coordinate_components(xa, t: Tetrad) -> np.ndarray:
    """Coordinate components x^i = x^a e_a{}^i; inverse of physical_components."""
    return np.asarray(xa, dtype=float) @ t.e


def orthogonal_triad(u) -> np.ndarray:
    """Deterministic orthonormal spatial triad spanning u's orthogonal 3-space.

    Rows n_1, n_2, n_3 satisfy n.u = 0, n.n = 1; the triad completes u to a
    right-handed tetrad (det [u; n_1; n_2; n_3] = +1).
    """
    u = np.asarray(u, dtype=float)
    triad = []
    for cand in np.eye(4)[[1, 2, 3, 0]]:
        w = cand + dot(cand, u) * u  # project out the timelike leg (u.u = -1)
        for p in triad:
            w = w - dot(w, p) * p
        n2 = norm2(w)
        if n2 > 1e-10:
            triad.append(w / np.sqrt(n2))
        if len(triad) == 3:
            break
    if len(triad) < 3:
        raise SingularFrame("could not complete a spatial triad")
    if np.linalg.det(np.array([u, *triad])) < 0:
        triad[2] = -triad[2]
    return np.array(triad)


def complete_tetrad(u) -> Tetrad:
    """Right-handed tetrad with e_0 = u, spatial legs from orthogonal_triad."""
    return tetrad_new(np.vstack([np.asarray(u, dtype=float), orthogonal_triad(u)]))


def field_tensor(m, tol: float = 1e-9) -> np.ndarray:
    """Validate and store an antisymmetric field tensor F^{ij}.

    The returned array is exactly antisymmetric: F = (M - M^T) / 2.
    """
    m = np.asarray(m, dtype=float).reshape(4, 4)
    scale = max(1.0, float(np.abs(m).max()))
    if np.abs(m + m.T).max() > tol * scale:
        raise ValueError("matrix is not antisymmetric to tolerance")
    return 0.5 * (m - m.T)


def dual_field(f, orientation: int = 1) -> np.ndarray:
    """Hodge dual of an antisymmetric tensor, returned with upper indices.

    Computes *F_ab = (1/2) eps_abcd F^{cd} (eps_0123 = orientation, unit
    metric determinant) and raises both indices.  Applying it twice gives -F.
    """
    f = field_tensor(f)
    down = 0.5 * orientation * np.einsum("abcd,cd->ab", EPS4, f)
    return ETA @ down @ ETA
