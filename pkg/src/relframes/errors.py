"""Exception types raised by the library.

Everything derives from :class:`RelframesError` (itself a ``ValueError``) so
callers can catch broadly or by precise failure mode.
"""


class RelframesError(ValueError):
    """Base class for all library errors."""


# -- frame / tetrad construction ------------------------------------------
class SingularFrame(RelframesError):
    """Candidate frame vectors are linearly dependent."""


class NotOrthonormal(RelframesError):
    """Frame fails the orthonormality tolerance in strict mode."""


class TooFarFromOrthonormal(RelframesError):
    """Frame residual too large for renormalization to be trustworthy."""


# -- Lorentz kinematics -----------------------------------------------------
class NotUnitTimelike(RelframesError):
    """Vector is not unit timelike to tolerance."""


class PastPointing(RelframesError):
    """Timelike vector has negative time component."""


class AntipodalDegenerate(RelframesError):
    """Boost endpoints give 1 + gamma below tolerance."""


class ExtremeRapidity(RelframesError):
    """Relative gamma beyond the supported guard value."""


class NotLorentz(RelframesError):
    """Matrix does not preserve the metric to tolerance."""


class FrameMismatch(RelframesError):
    """Frame and transformation disagree about the timelike leg."""


class NotARotationAboutU(RelframesError):
    """Matrix does not restrict to a proper rotation of u's orthogonal space."""


class NotOrthogonal(RelframesError):
    """3x3 matrix expected to be orthogonal is not."""


# -- rotation module --------------------------------------------------------
class ZeroRadius(RelframesError):
    """Rotational frame undefined at r = 0."""


# -- spin / transport -------------------------------------------------------
class NotOrthogonalIncrement(RelframesError):
    """Velocity increment is not orthogonal to the four-velocity."""


class InconsistentWorldline(RelframesError):
    """Worldline sample violates u.udot = 0 beyond tolerance."""


class InconsistentGamma(RelframesError):
    """Supplied gamma does not match the supplied three-velocity."""


# -- Frenet-Serret machinery ------------------------------------------------
class DegenerateSpectrum(RelframesError):
    """Transport matrix spectrum degenerates (discriminant ~ 0)."""


class ZeroCurvature(RelframesError):
    """Curvature vanishes; frame construction undefined."""


class DegenerateTorsion(RelframesError):
    """Torsion vanishes while a full frame chain was requested."""


class ZeroOmega(RelframesError):
    """Rotational rate is zero; drift center undefined."""


class ZeroLambda(RelframesError):
    """Hyperbolic mixing parameter is zero; requested quantity undefined."""


class HypothesisViolated(RelframesError):
    """a * tau = 0: field-component formulas do not apply."""


# -- observer atlas ----------------------------------------------------------
class DegenerateTriple(RelframesError):
    """Holonomy requested for charts with coincident four-velocities."""


# -- numerics ----------------------------------------------------------------
class StepUnderflow(RelframesError):
    """Adaptive integrator step fell below the minimum."""


class NonFiniteState(RelframesError):
    """Integration state became NaN or infinite."""


# -- scenario front end -------------------------------------------------------
class ParseError(RelframesError):
    """Scenario file is malformed."""


class ValidationError(RelframesError):
    """Scenario violates a physical precondition of its target module."""
