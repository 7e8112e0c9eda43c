"""Numerics for special-relativistic rotation.

Tetrad algebra and boosts, the relativistic rotation map at fixed radius,
Fermi-Walker/Thomas/BMT spin dynamics, Frenet-Serret frames of constant-field
motion, and observer charts with their transfer boosts.  Metric signature
(-,+,+,+), natural units c = 1 except where the rotation module takes c
explicitly.
"""

from . import (cli, errors, frenet, lorentz, minkowski, numerics, observer,
               rotation, selfcheck, spin)
from .frenet import (CurvatureTriple, FrenetFrame, SpectralSplit,
                     curvatures_from_field, drift_center, f_frame,
                     field_on_frenet_constant, frenet_rhs,
                     magnetic_components_general, position_exact,
                     propagate_exact, reconstruct_field, spectral_split,
                     udd_identities)
from .lorentz import (Boost, CycleResult, boost, boost_space_axes, compose,
                      cycle, cycle2_exact_axes, decompose, relative_velocity,
                      rotation_angle_axis)
from .minkowski import (ETA, Tetrad, canonical_tetrad, complete_tetrad, dot,
                        dual_field, field_tensor, lower, physical_components,
                        raise_, tetrad_new)
from .numerics import (IntegratorConfig, central_diff, integrate,
                       renormalize_frame, second_diff)
from .observer import (ObserverChart, ObserverManifold, TrajectorySample,
                       build, holonomy_defect, transfer_between,
                       transfer_to_event, validate_axioms)
from .rotation import (CylEvent, RotationParams, galilean_rotating_acceleration,
                       galilean_rotating_velocity, rim_speed, rrt_lie_brackets,
                       rrt_map, rrt_preserves_interval, rrt_tetrad)
from .spin import (ChargeParams, SpinState, WorldlineSample, bmt_rhs, bmt_run,
                   coordinate_time_rate, em_split, fw_derivative,
                   fw_spin_contribution, fw_transport, infinitesimal_boost,
                   larmor_rhs, lorentz_force_rhs, omega_exact, omega_spatial,
                   thomas_omega_em, total_precession)

__version__ = "0.1.0"
