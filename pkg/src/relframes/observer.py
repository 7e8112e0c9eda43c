"""Observer atlases along a worldline.

An observer manifold here is an explicit indexed family of flat charts, one
per proper-time sample of a trajectory: each chart carries the event, the
observer's tetrad, a conformal factor (identically 1 in flat scenarios), and
the transfer boost sending the instantaneous four-velocity to a fixed
laboratory direction.  Charts are never merged by event: two observers
crossing at one event stay distinct.  Chart-to-chart boosts do not compose
to boosts; the holonomy defect quantifies the residual rotation.
"""
from dataclasses import dataclass, field

import numpy as np

from . import frenet, lorentz, rotation
from .errors import DegenerateTriple, NotLorentz, ZeroRadius
from .minkowski import ETA, Tetrad, complete_tetrad, tetrad_new
from .numerics import IntegratorConfig, integrate, renormalize_frame
from .spin import fw_kernel

FRAME_RULES = ("rrt", "fermi_walker", "frenet")

#: default number of charts per period for analytic trajectories
DEFAULT_SAMPLES_PER_PERIOD = 256


@dataclass(frozen=True)
class TrajectorySample:
    """One trajectory point: proper time, event, velocity, acceleration."""

    s: float
    x: np.ndarray
    u: np.ndarray
    udot: np.ndarray

    def __post_init__(self):
        for name in ("x", "u", "udot"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))


@dataclass(frozen=True)
class ObserverChart:
    """One observer: proper time, event, frame, conformal factor, transfer boost."""

    s: float
    event: np.ndarray
    tetrad: Tetrad
    conformal_factor: float
    transfer_boost: lorentz.Boost

    def __post_init__(self):
        object.__setattr__(self, "event", np.asarray(self.event, dtype=float))
        if self.conformal_factor <= 0:
            raise ValueError("conformal factor must be positive")
        if np.abs(self.tetrad.e[0] - self.transfer_boost.u).max() > 1e-6:
            raise ValueError("transfer boost must start at the chart four-velocity")


@dataclass(frozen=True)
class ObserverManifold:
    """Ordered family of observer charts over one trajectory."""

    lab_direction: np.ndarray
    charts: tuple
    frame_rule: str

    def __post_init__(self):
        object.__setattr__(self, "lab_direction", np.asarray(self.lab_direction, dtype=float))
        ss = [c.s for c in self.charts]
        if any(b <= a for a, b in zip(ss, ss[1:])):
            raise ValueError("charts must be strictly ordered by proper time")

    def __len__(self):
        return len(self.charts)


def _fw_tetrads(samples, cfg: IntegratorConfig):
    """Transport the deterministic completion of u(0) along the samples."""
    from .spin import _hermite_worldline, WorldlineSample

    wl = [WorldlineSample(s=p.s, u=p.u, udot=p.udot) for p in samples]
    ss, uv = _hermite_worldline(wl)

    def rhs(s, frame):
        u, udot = uv(s)
        return frame @ fw_kernel(u, udot).T

    def hook(s, frame):
        resid = np.abs(frame @ ETA @ frame.T - ETA).max()
        if resid > cfg.renorm_threshold:
            if cfg.renorm_policy == "error":
                raise NotLorentz(f"frame drift {resid:g} at s = {s:g}")
            return renormalize_frame(frame)
        return frame

    e0 = complete_tetrad(samples[0].u).e
    _, frames = integrate(rhs, e0, (ss[0], ss[-1]), cfg, s_eval=ss, step_hook=hook)
    return [tetrad_new(fr, tol=1e-6) for fr in frames]


def _frenet_tetrads(samples, field_tensor, kq):
    """Exact Frenet frames of constant-field motion at each sample time."""
    triple, fr0 = frenet.curvatures_from_field(field_tensor, samples[0].u, kq)
    out = []
    for p in samples:
        fr = frenet.propagate_exact(fr0, triple, p.s - samples[0].s)
        if np.abs(fr.u - p.u).max() > 1e-6 * max(1.0, float(np.abs(p.u).max())):
            raise ValueError(f"trajectory sample at s = {p.s:g} does not follow the field")
        out.append(tetrad_new(fr.rows, tol=1e-8))
    return out


def _rrt_tetrads(samples, params: rotation.RotationParams):
    """Rotational-observer tetrads at each sample, in Cartesian components.

    The frame is built in the cylindrical basis at the sample's radius and
    phase, then pushed to Cartesian components.
    """
    out = []
    for p in samples:
        r = float(np.hypot(p.x[1], p.x[2]))
        if r <= 0:
            raise ZeroRadius("rotational frame undefined on the axis")
        theta = float(np.arctan2(p.x[2], p.x[1]))
        local = rotation.RotationParams(omega=params.omega, r=r, c=params.c, z=p.x[3])
        cyl = rotation.rrt_tetrad(local).e
        # coordinate basis push-forward: d_r and d_theta at phase theta
        d_t = np.array([1.0, 0.0, 0.0, 0.0])
        d_r = np.array([0.0, np.cos(theta), np.sin(theta), 0.0])
        d_th = np.array([0.0, -r * np.sin(theta), r * np.cos(theta), 0.0])
        d_z = np.array([0.0, 0.0, 0.0, 1.0])
        basis = np.array([d_t, d_r, d_th, d_z])
        out.append(tetrad_new(cyl @ basis, tol=1e-8))
    return out


def build(samples, lab_direction, frame_rule: str, *, field_tensor=None,
          kq: float = 1.0, rotation_params=None,
          cfg: IntegratorConfig | None = None) -> ObserverManifold:
    """Build the observer manifold of a trajectory: one chart per sample.

    ``frame_rule`` selects the tetrad construction: "fermi_walker" transports
    an initial frame, "frenet" uses the exact constant-field frames (needs
    ``field_tensor``), "rrt" uses the rotational-observer frames (needs
    ``rotation_params``).  Transfer boosts all point at ``lab_direction``.
    """
    samples = list(samples)
    if not samples:
        raise ValueError("need at least one trajectory sample")
    lab = np.asarray(lab_direction, dtype=float)
    if frame_rule not in FRAME_RULES:
        raise ValueError(f"unknown frame rule {frame_rule!r}")
    if frame_rule == "fermi_walker":
        tetrads = _fw_tetrads(samples, cfg or IntegratorConfig())
    elif frame_rule == "frenet":
        if field_tensor is None:
            raise ValueError("frenet rule needs the field tensor")
        tetrads = _frenet_tetrads(samples, field_tensor, kq)
    else:
        if rotation_params is None:
            raise ValueError("rrt rule needs rotation parameters")
        tetrads = _rrt_tetrads(samples, rotation_params)
    charts = []
    for p, t in zip(samples, tetrads):
        if np.abs(t.e[0] - p.u).max() > 1e-6 * max(1.0, float(np.abs(p.u).max())):
            raise ValueError(f"frame rule disagrees with the tangent at s = {p.s:g}")
        charts.append(ObserverChart(
            s=p.s, event=p.x, tetrad=t, conformal_factor=1.0,
            transfer_boost=lorentz.boost(t.e[0], lab, tol=1e-6)))
    return ObserverManifold(lab_direction=lab, charts=tuple(charts),
                            frame_rule=frame_rule)


def transfer_between(c1: ObserverChart, c2: ObserverChart, *,
                     tol: float = 1e-8) -> np.ndarray:
    """Unique Lorentz map sending the frame of c1 to the frame of c2.

    L = (component matrix of c2) (dual of c1): L e_a(c1) = e_a(c2).
    """
    m = c2.tetrad.e.T @ c1.tetrad.dual.T
    if not lorentz.is_lorentz(m, tol):
        raise NotLorentz(f"residual {lorentz.lorentz_residual(m):g} (corrupt charts?)")
    return m


def transfer_to_event(c: ObserverChart) -> lorentz.Boost:
    """Boost from the chart's four-velocity to the laboratory direction."""
    return c.transfer_boost


def holonomy_defect(m: ObserverManifold, i: int, j: int, k: int, *,
                    tol: float = 1e-9) -> tuple[float, np.ndarray | None]:
    """Rotation left over by the boost loop u_i -> u_j -> u_k -> u_i.

    A direct witness that chart-to-chart boosts do not compose to a boost;
    collinear velocities give angle 0.  Raises DegenerateTriple when two of
    the chart velocities coincide.
    """
    u_i = m.charts[i].tetrad.e[0]
    u_j = m.charts[j].tetrad.e[0]
    u_k = m.charts[k].tetrad.e[0]
    for a, b in ((u_i, u_j), (u_j, u_k), (u_k, u_i)):
        if np.abs(a - b).max() < tol:
            raise DegenerateTriple("chart four-velocities must be distinct")
    loop = (lorentz.boost(u_k, u_i).matrix
            @ lorentz.boost(u_j, u_k).matrix
            @ lorentz.boost(u_i, u_j).matrix)
    _, rot = lorentz.decompose(loop, u_i, tol=1e-8)
    return lorentz.rotation_angle_axis(rot, u_i, tol=1e-8)


@dataclass
class AxiomReport:
    """Per-chart residuals of the observer-manifold checks."""

    ok: bool
    n_charts: int
    max_origin_residual: float
    max_orthonormality_residual: float
    max_transfer_residual: float
    conformal_unity: bool
    strictly_ordered: bool
    failures: list = field(default_factory=list)


def validate_axioms(m: ObserverManifold, samples) -> AxiomReport:
    """Check every chart: origin on the trajectory, orthonormal tetrad,
    well-formed transfer boost, unit conformal factor, strict ordering.

    Failures are reported with the offending proper time, never raised; two
    charts over the same event are legitimate (crossing observers) and are
    left distinct.
    """
    by_s = {float(p.s): p for p in samples}
    failures = []
    max_origin = 0.0
    max_orth = 0.0
    max_transfer = 0.0
    conformal = True
    for c in m.charts:
        p = by_s.get(float(c.s))
        if p is None:
            failures.append((c.s, "origin", float("inf")))
        else:
            r = float(np.abs(c.event - p.x).max())
            max_origin = max(max_origin, r)
            if r > 1e-9:
                failures.append((c.s, "origin", r))
        r = float(c.tetrad.residual)
        max_orth = max(max_orth, r)
        if r > 1e-8:
            failures.append((c.s, "orthonormality", r))
        r = float(np.abs(c.transfer_boost.matrix @ c.tetrad.e[0] - m.lab_direction).max())
        max_transfer = max(max_transfer, r)
        if r > 1e-9:
            failures.append((c.s, "transfer", r))
        if c.conformal_factor != 1.0:
            conformal = False
            failures.append((c.s, "conformal", abs(c.conformal_factor - 1.0)))
    ss = [c.s for c in m.charts]
    ordered = all(b > a for a, b in zip(ss, ss[1:]))
    if not ordered:
        failures.append((float("nan"), "ordering", float("inf")))
    return AxiomReport(ok=not failures, n_charts=len(m.charts),
                       max_origin_residual=max_origin,
                       max_orthonormality_residual=max_orth,
                       max_transfer_residual=max_transfer,
                       conformal_unity=conformal, strictly_ordered=ordered,
                       failures=failures)


# -- canonical trajectory builders -------------------------------------------

def straight_samples(u, n_samples: int, s_max: float, x0=None) -> list:
    """Inertial worldline samples with constant four-velocity."""
    u = np.asarray(u, dtype=float)
    x0 = np.zeros(4) if x0 is None else np.asarray(x0, dtype=float)
    out = []
    for s in np.linspace(0.0, s_max, n_samples):
        out.append(TrajectorySample(s=float(s), x=x0 + s * u, u=u,
                                    udot=np.zeros(4)))
    return out


def circular_samples(beta: float, n_samples: int = DEFAULT_SAMPLES_PER_PERIOD,
                     periods: float = 1.0, omega0: float = 1.0) -> list:
    """Circular-orbit samples over the given number of lab periods."""
    if not 0.0 < beta < 1.0:
        raise ValueError("beta must lie in (0, 1)")
    gamma = 1.0 / np.sqrt(1.0 - beta * beta)
    rate = omega0 * gamma          # phase per proper time
    radius = beta / omega0
    s_max = periods * 2.0 * np.pi / rate
    out = []
    for s in np.linspace(0.0, s_max, n_samples):
        phi = rate * s
        x = np.array([gamma * s, radius * np.cos(phi), radius * np.sin(phi), 0.0])
        u = gamma * np.array([1.0, -beta * np.sin(phi), beta * np.cos(phi), 0.0])
        udot = gamma * rate * beta * np.array([0.0, -np.cos(phi), -np.sin(phi), 0.0])
        out.append(TrajectorySample(s=float(s), x=x, u=u, udot=udot))
    return out


def constant_field_samples(field_tensor, u0, kq: float, n_samples: int,
                           s_max: float, x0=None) -> list:
    """Exact worldline samples of constant-field motion via the Frenet flow."""
    f = np.asarray(field_tensor, dtype=float)
    triple, fr0 = frenet.curvatures_from_field(f, u0, kq)
    x0 = np.zeros(4) if x0 is None else np.asarray(x0, dtype=float)
    fm = kq * (f @ ETA)
    out = []
    for s in np.linspace(0.0, s_max, n_samples):
        fr = frenet.propagate_exact(fr0, triple, s)
        x = frenet.position_exact(x0, fr0, triple, s)
        out.append(TrajectorySample(s=float(s), x=x, u=fr.u, udot=fm @ fr.u))
    return out
