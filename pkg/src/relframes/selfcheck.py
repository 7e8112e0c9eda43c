"""Acceptance checks runnable as a library call or via the CLI selftest.

Each criterion function runs one end-to-end check at its pinned tolerance and
returns a CheckResult; run_all executes the whole battery.  The pytest
acceptance module asserts on exactly these results, so the CLI selftest and
the test suite cannot drift apart.
"""
import time
from dataclasses import dataclass

import numpy as np

from . import frenet, lorentz, observer, rotation, spin
from .errors import DegenerateSpectrum
from .minkowski import (ETA, canonical_tetrad, complete_tetrad, dot,
                        tetrad_new)
from .numerics import IntegratorConfig, integrate


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _timed(fn):
    def wrapper() -> CheckResult:
        t0 = time.perf_counter()
        name, passed, detail = fn()
        return CheckResult(name=name, passed=passed, detail=detail,
                           seconds=time.perf_counter() - t0)
    wrapper.__name__ = fn.__name__
    return wrapper


def _random_unit_timelike(rng, xi_max=1.15):
    nhat = rng.normal(size=3)
    nhat /= np.linalg.norm(nhat)
    xi = rng.uniform(0.0, xi_max)
    return np.concatenate([[np.cosh(xi)], np.sinh(xi) * nhat])


def _boosted_four_velocity(beta3):
    beta3 = np.asarray(beta3, dtype=float)
    g = 1.0 / np.sqrt(1.0 - beta3 @ beta3)
    return np.concatenate([[g], g * beta3])


@_timed
def criterion_01_boost_suite():
    """1000 random pairs: metric preservation, u -> v, pairwise inversion."""
    rng = np.random.default_rng(101)
    worst_lorentz = worst_map = worst_inv = 0.0
    for _ in range(1000):
        u = _random_unit_timelike(rng)
        v = _random_unit_timelike(rng)
        b = lorentz.boost(u, v)
        assert b.gamma <= 10.0
        worst_lorentz = max(worst_lorentz, lorentz.lorentz_residual(b.matrix))
        worst_map = max(worst_map, float(np.abs(b.matrix @ u - v).max()))
        back = lorentz.boost(v, u).matrix
        worst_inv = max(worst_inv, float(np.abs(back @ b.matrix - np.eye(4)).max()))
    ok = worst_lorentz < 1e-11 and worst_map < 1e-12 and worst_inv < 1e-12
    return ("boost-suite", ok,
            f"lorentz {worst_lorentz:.2e} (<1e-11), map {worst_map:.2e} (<1e-12), "
            f"inverse {worst_inv:.2e} (<1e-12)")


@_timed
def criterion_02_reciprocity():
    """E_lam . e_0 = -E_0 . e_lam across 200 random boosts."""
    rng = np.random.default_rng(202)
    worst = 0.0
    for _ in range(200):
        u = _random_unit_timelike(rng)
        v = _random_unit_timelike(rng)
        t = complete_tetrad(u)
        b = lorentz.boost(u, v)
        image = lorentz.boost_space_axes(t, b)
        for lam in (1, 2, 3):
            worst = max(worst, abs(dot(image.e[lam], t.e[0])
                                   + dot(image.e[0], t.e[lam])))
    ok = worst < 1e-12
    return ("reciprocity", ok, f"max |E_lam.e0 + E_0.e_lam| = {worst:.2e} (<1e-12)")


@_timed
def criterion_03_cycle_oracle():
    """Closed-form cycle axes vs brute force; fixed vector; small-velocity law."""
    rng = np.random.default_rng(303)
    worst_dev = worst_fix = 0.0
    for _ in range(500):
        u = _random_unit_timelike(rng)
        v = _random_unit_timelike(rng)
        w = _random_unit_timelike(rng)
        t = complete_tetrad(u)
        closed = lorentz.cycle2_exact_axes(u, v, w, t)
        brute = lorentz.cycle(u, [v, w]).matrix
        brute_rows = (brute @ t.e.T).T
        worst_dev = max(worst_dev, float(np.abs(closed.e - brute_rows).max()))
        worst_fix = max(worst_fix, float(np.abs(brute @ u - u).max()))
        assert np.array_equal(closed.e[0], u)
    # small-velocity law: angle / beta^2 -> |vhat x what| / 2, quadratically
    e0 = np.array([1.0, 0.0, 0.0, 0.0])
    vhat = np.array([1.0, 0.0, 0.0])
    what = np.array([0.0, 1.0, 0.0])
    limit = 0.5 * np.linalg.norm(np.cross(vhat, what))
    errs = []
    for beta in (1e-2, 1e-3, 1e-4):
        res = lorentz.cycle(e0, [_boosted_four_velocity(beta * vhat),
                                 _boosted_four_velocity(beta * what)])
        errs.append(abs(res.rotation_angle / beta ** 2 - limit))
    order = np.log10(errs[0] / errs[1])
    ok = (worst_dev < 1e-9 and worst_fix < 1e-12
          and 1.7 < order < 2.3 and errs[2] < 3e-8)
    return ("cycle-oracle", ok,
            f"closed-vs-brute {worst_dev:.2e} (<1e-9), fixed {worst_fix:.2e} "
            f"(<1e-12), convergence order {order:.2f} (~2), tail {errs[2]:.1e}")


def _thomas_orbit_angle(beta: float, n_steps: int = 2048) -> float:
    """Integrated spatial precession over one lab period of a circular orbit."""
    gamma = 1.0 / np.sqrt(1.0 - beta * beta)
    rate = gamma  # omega0 = 1: phase per proper time
    s_end = 2.0 * np.pi / rate

    def rhs(s, r):
        phi = rate * s
        b3 = beta * np.array([-np.sin(phi), np.cos(phi), 0.0])
        gv = beta * rate * np.array([-np.cos(phi), -np.sin(phi), 0.0])
        return spin.omega_spatial(b3, gv, gamma) @ r

    cfg = IntegratorConfig(step=s_end / n_steps)
    _, out = integrate(rhs, np.eye(3), (0.0, s_end), cfg)
    r = out[-1]
    anti = 0.5 * np.array([r[2, 1] - r[1, 2], r[0, 2] - r[2, 0], r[1, 0] - r[0, 1]])
    return float(np.arctan2(np.linalg.norm(anti), 0.5 * (np.trace(r) - 1.0)))


@_timed
def criterion_04_thomas_orbit():
    """One beta = 0.6 orbit accumulates 2 pi (gamma - 1) = pi/2 of rotation."""
    angle = _thomas_orbit_angle(0.6)
    target = np.pi / 2.0
    rel = abs(angle - target) / target
    # small-velocity cross-check against the (1/2) v x a accumulation
    beta_small = 1e-2
    small = _thomas_orbit_angle(beta_small, n_steps=512)
    small_rel = abs(small / (np.pi * beta_small ** 2) - 1.0)
    ok = rel < 1e-6 and small_rel < 1e-3
    return ("thomas-orbit", ok,
            f"angle {angle:.9f} vs pi/2, rel {rel:.2e} (<1e-6); "
            f"beta=0.01 check rel {small_rel:.2e} (<1e-3)")


@_timed
def criterion_05_bmt_conservation():
    """Drift-free BMT run over 10 periods plus the exact splitting identity."""
    cp = spin.ChargeParams(e_over_m=-1.0, g=2.00232)
    f = np.zeros((4, 4))
    f[1, 2], f[2, 1] = 1.0, -1.0    # constant magnetic field along z
    beta = 0.6
    u0 = _boosted_four_velocity([beta, 0.0, 0.0])
    s0 = np.array([0.0, 0.0, 0.0, 1.0])   # spin along the field: u0.s0 = 0
    s0 = s0 + dot(u0, s0) * u0
    period = 2.0 * np.pi / abs(cp.e_over_m * 1.0)
    grid = np.linspace(0.0, 10.0 * period, 20001)
    _, _, _, report = spin.bmt_run(f, cp, u0, s0, grid, renorm_threshold=1.0)
    # identity: total = larmor + transport contribution, on valid random states
    rng = np.random.default_rng(505)
    worst_id = 0.0
    for _ in range(1000):
        u = _random_unit_timelike(rng)
        s = rng.normal(size=4)
        s = s + dot(u, s) * u
        fr = np.asarray(rng.normal(size=(4, 4)))
        fr = 0.5 * (fr - fr.T)
        g = rng.uniform(1.0, 3.0)
        cpr = spin.ChargeParams(e_over_m=rng.choice([-1.0, 1.0]), g=g)
        state = spin.SpinState(u=u, s=s)
        resid = (spin.bmt_rhs(state, fr, cpr)
                 - spin.larmor_rhs(state, fr, cpr)
                 - spin.fw_spin_contribution(state, fr, cpr))
        worst_id = max(worst_id, float(np.abs(resid).max()))
    ok = (report["max_us_drift"] < 1e-9 and report["max_ss_drift"] < 1e-9
          and worst_id < 1e-13)
    return ("bmt-conservation", ok,
            f"u.s drift {report['max_us_drift']:.2e}, s.s drift "
            f"{report['max_ss_drift']:.2e} (<1e-9); identity {worst_id:.2e} (<1e-13)")


@_timed
def criterion_06_spectral_identities():
    """Five split invariants on a 30^3 grid plus the two exact worked points."""
    grid_a = np.linspace(0.1, 5.0, 30)
    grid_t = np.linspace(0.1, 5.0, 30)
    grid_s = np.linspace(-5.0, 5.0, 30)
    worst = 0.0
    skipped = 0
    for a in grid_a:
        for tau in grid_t:
            for sg in grid_s:
                k = frenet.CurvatureTriple(a=a, tau=tau, sigma=sg)
                try:
                    sp = frenet.spectral_split(k)
                except DegenerateSpectrum:
                    skipped += 1
                    continue
                chi2, om2 = sp.chi ** 2, sp.omega ** 2
                d0 = a * a - tau * tau - sg * sg
                worst = max(
                    worst,
                    abs(chi2 - om2 - d0),
                    abs(a * sg - sp.epsilon * sp.omega * sp.chi),
                    abs(chi2 + om2 - sp.delta),
                    abs(sp.Gamma ** 2 - sp.Lambda ** 2 - 1.0),
                    abs(a * a - (sp.Gamma * sp.chi) ** 2 - (sp.Lambda * sp.omega) ** 2),
                    abs(a * tau - sp.Gamma * sp.Lambda * (chi2 + om2)),
                )
    sp1 = frenet.spectral_split(frenet.CurvatureTriple(5.0, 0.0, 3.0))
    w1 = max(abs(sp1.chi - 5.0), abs(sp1.omega - 3.0),
             abs(sp1.Gamma - 1.0), abs(sp1.Lambda - 0.0))
    sp2 = frenet.spectral_split(frenet.CurvatureTriple(2.0, 1.0, 0.0))
    w2 = max(abs(sp2.chi - np.sqrt(3.0)), abs(sp2.omega),
             abs(sp2.Gamma - 2.0 / np.sqrt(3.0)), abs(sp2.Lambda - 1.0 / np.sqrt(3.0)))
    ok = worst < 1e-12 and w1 < 1e-14 and w2 < 1e-14
    return ("spectral-identities", ok,
            f"grid residual {worst:.2e} (<1e-12, {skipped} degenerate skipped); "
            f"worked points {max(w1, w2):.2e} (<1e-14)")


def _frenet_start_frame():
    return frenet.FrenetFrame(u=np.array([1.0, 0, 0, 0]), n=np.array([0.0, 1, 0, 0]),
                              b=np.array([0.0, 0, 1, 0]), c=np.array([0.0, 0, 0, 1]))


@_timed
def criterion_07_decoupled_frame():
    """Decoupled-frame identities and exact propagation vs an RK4 oracle."""
    fr0 = _frenet_start_frame()
    worst_orth = worst_first = worst_second = worst_oracle = 0.0
    for (a, tau, sg), s_ode in (((5.0, 0.0, 3.0), 0.2), ((1.3, 0.7, -0.9), 0.5),
                                ((2.0, 1.0, 0.0), 0.5), ((0.9, 1.7, 2.3), 0.4)):
        k = frenet.CurvatureTriple(a=a, tau=tau, sigma=sg)
        sp = frenet.spectral_split(k)
        f = frenet.f_frame(fr0, sp, k)
        worst_orth = max(worst_orth, float(np.abs(f @ ETA @ f.T - ETA).max()))

        def f_at(s, idx, k=k, sp=sp):
            return frenet.f_frame(frenet.propagate_exact(fr0, k, s), sp, k)[idx]

        h1, h2 = 1e-6, 1e-4
        for idx, want in ((0, sp.chi * f[2]), (1, sp.epsilon * sp.omega * f[3])):
            d = (f_at(h1, idx) - f_at(-h1, idx)) / (2.0 * h1)
            worst_first = max(worst_first,
                              float(np.abs(d - want).max()) / (1.0 + sp.chi))
        for idx, rate in ((0, sp.chi ** 2), (1, -sp.omega ** 2),
                          (2, sp.chi ** 2), (3, -sp.omega ** 2)):
            dd = (f_at(h2, idx) - 2.0 * f[idx] + f_at(-h2, idx)) / h2 ** 2
            worst_second = max(worst_second,
                               float(np.abs(dd - rate * f[idx]).max())
                               / (1.0 + sp.chi ** 2))
        # RK4 oracle for the frame flow at step 1e-4
        smat = frenet.transport_matrix(k)
        _, rows = integrate(lambda s, y, m=smat: m @ y, fr0.rows,
                            (0.0, s_ode), IntegratorConfig(step=1e-4))
        exact = frenet.propagate_exact(fr0, k, s_ode)
        worst_oracle = max(worst_oracle, float(np.abs(rows[-1] - exact.rows).max()))
    ok = (worst_orth < 1e-12 and worst_first < 1e-8
          and worst_second < 1e-7 and worst_oracle < 1e-8)
    return ("decoupled-frame", ok,
            f"orthonormality {worst_orth:.2e} (<1e-12), first-derivative "
            f"{worst_first:.2e} (<1e-8 scaled), second-derivative "
            f"{worst_second:.2e} (<1e-7 scaled), RK4 oracle {worst_oracle:.2e} (<1e-8)")


@_timed
def criterion_08_field_round_trip():
    """Constant field -> curvatures -> triad components -> field, end to end."""
    rng = np.random.default_rng(808)
    lab = canonical_tetrad()
    worst = 0.0
    n_done = 0
    while n_done < 10:
        e_lab = rng.normal(size=3)
        b_lab = rng.normal(size=3)
        f = frenet.reconstruct_field(np.array([1.0, 0, 0, 0]), e_lab, b_lab, lab)
        u0 = _random_unit_timelike(rng, xi_max=0.8)
        triple, frame = frenet.curvatures_from_field(f, u0, 1.0)
        if triple.a * triple.tau < 1e-6:
            continue
        e_fr, b_fr = frenet.field_on_frenet_constant(triple, 1.0)
        back = frenet.reconstruct_field(frame.u, e_fr, b_fr, frame.rows)
        worst = max(worst, float(np.abs(back - f).max()))
        n_done += 1
    ok = worst < 1e-8
    return ("field-round-trip", ok,
            f"max reconstruction residual {worst:.2e} (<1e-8) over {n_done} fields")


@_timed
def criterion_09_rotation_map():
    """Interval invariance, frame grid, additivity, Galilean limit, brackets."""
    rng = np.random.default_rng(909)
    worst_int = 0.0
    # moderate rapidities (alpha <= 1): the 1e-13 budget is an absolute
    # tolerance and cosh^2(alpha) amplifies rounding beyond it
    for _ in range(200):
        p = rotation.RotationParams(omega=rng.uniform(-0.5, 0.5),
                                    r=rng.uniform(0.2, 2.0))
        ev1 = (rng.normal(), rng.normal())
        ev2 = (rng.normal(), rng.normal())
        before, after = rotation.rrt_preserves_interval(ev1, ev2, p)
        worst_int = max(worst_int, abs(before - after))
    worst_orth = 0.0
    for r in np.linspace(0.1, 10.0, 20):
        for alpha in np.linspace(-3.0, 3.0, 20):
            p = rotation.RotationParams(omega=alpha / r, r=r)
            worst_orth = max(worst_orth, rotation.rrt_tetrad(p).residual)
    worst_add = 0.0
    for _ in range(50):
        r = rng.uniform(0.2, 3.0)
        w1, w2 = rng.uniform(-1.0, 1.0, size=2)
        ev = (rng.normal(), rng.normal())
        once = rotation.rrt_map(rotation.rrt_map(ev, rotation.RotationParams(w1, r)),
                                rotation.RotationParams(w2, r))
        both = rotation.rrt_map(ev, rotation.RotationParams(w1 + w2, r))
        worst_add = max(worst_add, abs(once[0] - both[0]), abs(once[1] - both[1]))
    # Galilean limit: error in theta' - (theta - omega t) scales as 1/c^2
    omega, r, t, theta = 0.7, 1.3, 0.9, 0.4
    errs = []
    for c in (100.0, 200.0, 400.0):
        p = rotation.RotationParams(omega=omega, r=r, c=c)
        _, thetap = rotation.rrt_map((c * t, theta), p)
        errs.append(abs(thetap - (theta - omega * t)))
    ratios = (errs[0] / errs[1], errs[1] / errs[2])
    table = rotation.rrt_lie_brackets()
    want = np.zeros((3, 3, 3))
    want[0, 1] = [0.0, 0.0, -1.0]
    want[1, 0] = [0.0, 0.0, 1.0]
    want[2, 0] = [0.0, 1.0, 0.0]
    want[0, 2] = [0.0, -1.0, 0.0]
    brackets_ok = np.array_equal(table, want)
    ok = (worst_int < 1e-13 and worst_orth < 1e-12 and worst_add < 1e-12
          and all(3.5 < q < 4.5 for q in ratios) and brackets_ok)
    return ("rotation-map", ok,
            f"interval {worst_int:.2e} (<1e-13), frame grid {worst_orth:.2e} "
            f"(<1e-12), additivity {worst_add:.2e} (<1e-12), 1/c^2 ratios "
            f"{ratios[0]:.2f}/{ratios[1]:.2f} (~4), brackets exact: {brackets_ok}")


@_timed
def criterion_10_observer_manifold():
    """Chart transfer maps, pure transfer boosts, holonomy, conformal unity."""
    lab = np.array([1.0, 0.0, 0.0, 0.0])
    samples = observer.circular_samples(0.6, n_samples=256)
    m = observer.build(samples, lab, "fermi_walker")
    worst_map = 0.0
    for c1, c2 in zip(m.charts[:-1], m.charts[1:]):
        L = observer.transfer_between(c1, c2)
        worst_map = max(worst_map, float(np.abs((L @ c1.tetrad.e.T).T
                                                - c2.tetrad.e).max()))
    worst_rot = 0.0
    for c in m.charts[::16]:
        _, rot = lorentz.decompose(c.transfer_boost.matrix, c.transfer_boost.u)
        worst_rot = max(worst_rot, float(np.abs(rot - np.eye(4)).max()))
    n = len(m.charts)
    angle, _ = observer.holonomy_defect(m, 0, n // 3, (2 * n) // 3)
    conformal = all(c.conformal_factor == 1.0 for c in m.charts)
    report = observer.validate_axioms(m, samples)
    ok = (worst_map < 1e-11 and worst_rot < 1e-11 and angle >= 1e-3
          and conformal and report.ok)
    return ("observer-manifold", ok,
            f"transfer {worst_map:.2e} (<1e-11), boost rotation part "
            f"{worst_rot:.2e} (<1e-11), holonomy {angle:.3f} rad (>=1e-3), "
            f"conformal =1: {conformal}, axioms: {report.ok}")


ALL_CRITERIA = (
    criterion_01_boost_suite,
    criterion_02_reciprocity,
    criterion_03_cycle_oracle,
    criterion_04_thomas_orbit,
    criterion_05_bmt_conservation,
    criterion_06_spectral_identities,
    criterion_07_decoupled_frame,
    criterion_08_field_round_trip,
    criterion_09_rotation_map,
    criterion_10_observer_manifold,
)


def format_line(r: CheckResult) -> str:
    status = "PASS" if r.passed else "FAIL"
    return f"{status}  {r.name:<22s} {r.seconds:7.2f} s  {r.detail}"


def run_all(echo=None) -> list:
    """Run every acceptance criterion; optionally echo one line per result."""
    results = []
    for fn in ALL_CRITERIA:
        res = fn()
        if echo is not None:
            echo(format_line(res))
        results.append(res)
    return results
