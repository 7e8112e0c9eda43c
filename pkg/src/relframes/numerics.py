"""Shared ODE integration and frame-hygiene utilities.

Fixed-step RK4 is the default for reproducible output; an embedded
Fehlberg 4(5) pair is available for long runs.  States are plain ndarrays of
any shape and right-hand sides are ``rhs(s, y) -> dy``.
"""
import logging
from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteState, StepUnderflow, TooFarFromOrthonormal
from .minkowski import ETA

log = logging.getLogger(__name__)

_MIN_STEP = 1e-12

# Fehlberg 4(5) tableau
_FB_A = (
    (),
    (1 / 4,),
    (3 / 32, 9 / 32),
    (1932 / 2197, -7200 / 2197, 7296 / 2197),
    (439 / 216, -8, 3680 / 513, -845 / 4104),
    (-8 / 27, 2, -3544 / 2565, 1859 / 4104, -11 / 40),
)
_FB_C = (0.0, 1 / 4, 3 / 8, 12 / 13, 1.0, 1 / 2)
_FB_B5 = (16 / 135, 0.0, 6656 / 12825, 28561 / 56430, -9 / 50, 2 / 55)
_FB_B4 = (25 / 216, 0.0, 1408 / 2565, 2197 / 4104, -1 / 5, 0.0)


@dataclass(frozen=True)
class IntegratorConfig:
    step: float = 1e-3
    method: str = "rk4"           # "rk4" | "rk45"
    renorm_threshold: float = 1e-10
    renorm_policy: str = "project_log"  # "project_log" | "error"
    rtol: float = 1e-10           # rk45 only
    atol: float = 1e-12           # rk45 only

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("step must be positive")
        if self.renorm_threshold <= 0:
            raise ValueError("renorm_threshold must be positive")
        if self.method not in ("rk4", "rk45"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.renorm_policy not in ("project_log", "error"):
            raise ValueError(f"unknown renorm policy {self.renorm_policy!r}")


def rk4_step(rhs, s, y, h):
    k1 = rhs(s, y)
    k2 = rhs(s + 0.5 * h, y + 0.5 * h * k1)
    k3 = rhs(s + 0.5 * h, y + 0.5 * h * k2)
    k4 = rhs(s + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _rk45_step(rhs, s, y, h):
    ks = []
    for row, c in zip(_FB_A, _FB_C):
        yi = y
        for a, k in zip(row, ks):
            yi = yi + h * a * k
        ks.append(rhs(s + c * h, yi))
    y5 = y
    y4 = y
    for b5, b4, k in zip(_FB_B5, _FB_B4, ks):
        y5 = y5 + h * b5 * k
        y4 = y4 + h * b4 * k
    err = float(np.max(np.abs(y5 - y4)))
    return y5, err


def _advance_fixed(rhs, s0, y, s1, step, hook):
    n = max(1, int(np.ceil((s1 - s0) / step - 1e-12)))
    h = (s1 - s0) / n
    s = s0
    for _ in range(n):
        y = rk4_step(rhs, s, y, h)
        s += h
        if not np.isfinite(y).all():
            raise NonFiniteState(f"state became non-finite at s = {s:g}")
        if hook is not None:
            y = hook(s, y)
    return y


def _advance_adaptive(rhs, s0, y, s1, cfg, hook):
    s = s0
    h = min(cfg.step, s1 - s0)
    while s < s1 - 1e-14 * max(1.0, abs(s1)):
        h = min(h, s1 - s)
        y_new, err = _rk45_step(rhs, s, y, h)
        tol = cfg.atol + cfg.rtol * float(np.max(np.abs(y)))
        if err <= tol:
            s += h
            y = y_new
            if not np.isfinite(y).all():
                raise NonFiniteState(f"state became non-finite at s = {s:g}")
            if hook is not None:
                y = hook(s, y)
            growth = 2.0 if err == 0.0 else min(2.0, 0.9 * (tol / err) ** 0.2)
            h *= growth
        else:
            h *= max(0.1, 0.9 * (tol / err) ** 0.25)
        if h < _MIN_STEP:
            raise StepUnderflow(f"step underflow at s = {s:g}")
    return y


def integrate(rhs, y0, s_span, cfg: IntegratorConfig | None = None, *,
              s_eval=None, step_hook=None):
    """Integrate y' = rhs(s, y) over ``s_span = (s0, s1)``.

    Returns ``(s, y)`` with states stacked along the first axis at the
    requested output points (default: just the endpoints).  ``step_hook``,
    when given, is called after every accepted internal step and may return a
    corrected state (e.g. a frame renormalization).
    """
    cfg = cfg or IntegratorConfig()
    s0, s1 = float(s_span[0]), float(s_span[1])
    if s1 < s0:
        raise ValueError("backward integration spans are not supported")
    y = np.array(y0, dtype=float)
    if s_eval is None:
        s_eval = np.array([s0, s1])
    s_eval = np.asarray(s_eval, dtype=float)
    if abs(s_eval[0] - s0) > 1e-12:
        raise ValueError("s_eval must start at the span origin")
    out = [y.copy()]
    s_prev = s0
    for s_next in s_eval[1:]:
        if cfg.method == "rk4":
            y = _advance_fixed(rhs, s_prev, y, s_next, cfg.step, step_hook)
        else:
            y = _advance_adaptive(rhs, s_prev, y, s_next, cfg, step_hook)
        out.append(y.copy())
        s_prev = s_next
    return s_eval, np.array(out)


def renormalize_frame(frame, metric=None, *, max_residual: float = 1e-3) -> np.ndarray:
    """Restore orthonormality of a near-orthonormal frame (timelike row first).

    Modified Gram-Schmidt with respect to ``metric`` (default flat eta); the
    applied correction magnitude is logged.  Raises TooFarFromOrthonormal when
    the input residual exceeds ``max_residual``.
    """
    e = np.array(frame, dtype=float).reshape(4, 4)
    g = ETA if metric is None else np.asarray(metric, dtype=float)
    residual = float(np.abs(e @ g @ e.T - ETA).max())
    if residual > max_residual:
        raise TooFarFromOrthonormal(
            f"residual {residual:g} exceeds {max_residual:g}")
    out = e.copy()
    signs = (-1.0, 1.0, 1.0, 1.0)
    for a in range(4):
        v = out[a]
        for b in range(a):
            v = v - signs[b] * (v @ g @ out[b]) * out[b]
        n2 = v @ g @ v
        out[a] = v / np.sqrt(abs(n2))
    correction = float(np.abs(out - e).max())
    if correction > 0.0:
        log.debug("frame renormalization applied, correction %.3e", correction)
    return out


def central_diff(f, s: float, h: float) -> np.ndarray:
    """Second-order central first derivative of a vector-valued function."""
    if h <= 0:
        raise ValueError("h must be positive")
    return (np.asarray(f(s + h), dtype=float) - np.asarray(f(s - h), dtype=float)) / (2.0 * h)


def second_diff(f, s: float, h: float) -> np.ndarray:
    """Second-order central second derivative."""
    if h <= 0:
        raise ValueError("h must be positive")
    fp = np.asarray(f(s + h), dtype=float)
    f0 = np.asarray(f(s), dtype=float)
    fm = np.asarray(f(s - h), dtype=float)
    return (fp - 2.0 * f0 + fm) / (h * h)
