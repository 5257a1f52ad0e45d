"""Exception types raised by the recovery pipelines."""


class LorentzpolError(Exception):
    """Base class for all package errors."""


class NormViolation(LorentzpolError):
    """A parameter that must be normalized is not (quaternion or spinor)."""


class NonRealResult(LorentzpolError):
    """A matrix that must come out real has a non-negligible imaginary part."""


class SingularParameter(LorentzpolError):
    """The vector parameter q lies on the singular surface q.q = 1."""


class NonPositiveIntensity(LorentzpolError):
    """Probe intensity must be strictly positive."""


class NotRotationType(LorentzpolError):
    """Measurements carry boost content; the rotation branch does not apply."""


class NotRotation(LorentzpolError):
    """A 3x3 matrix is not orthogonal with determinant +1."""


class NearPiRotation(LorentzpolError):
    """Quaternion extraction is singular for rotations by (almost) pi."""


class DegenerateTrace(LorentzpolError):
    """The matrix trace vanishes; the parameter modulus cannot be extracted."""


class SingularNormalization(LorentzpolError):
    """The spinor normalization denominator vanishes for these measurements."""
