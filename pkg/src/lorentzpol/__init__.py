"""Mueller matrix reconstruction from four polarization probes, with
Lorentz-type classification and compact parameter recovery (unit
quaternions for rotation elements, complex spinor/vector parameters in
general), plus exact inverse constructions for round-trip verification.
"""

from .algebra import (
    BAR_DELTA,
    LEVI_CIVITA,
    MINKOWSKI_METRIC,
    MuellerClass,
    apply_mueller,
    boost_mueller,
    canonical_spinor_sign,
    embed_rotation,
    is_lorentzian,
    k_from_q,
    lorentz_from_k,
    minkowski_norm,
    q_from_k,
    quaternion_to_rotation,
    rotation_mueller,
    spinor_norm,
)
from .errors import (
    DegenerateTrace,
    LorentzpolError,
    NearPiRotation,
    NonPositiveIntensity,
    NonRealResult,
    NormViolation,
    NotRotation,
    NotRotationType,
    SingularNormalization,
    SingularParameter,
)
from .lorentz import (
    RecoveryIntermediates,
    RecoveryResult,
    RoundTripReport,
    delta_from_trace,
    lambda_from_mueller,
    mn_from_antisymmetric,
    recover_k,
    recover_parameters,
    recover_q,
    recovery_intermediates,
    verify_round_trip,
)
from .probes import (
    LorentzResiduals,
    MeasurementSet,
    NoiseSpec,
    lorentz_residuals,
    probe_set,
    reconstruct_mueller,
    simulate_measurements,
)
from .rotation import (
    PolarizationTriad,
    TriadCheck,
    TriadReport,
    recover_quaternion,
    rotation_from_measurements,
    rotation_identity_sum,
    triad_from_measurements,
    validate_triad,
)

__version__ = "0.1.0"

__all__ = [
    "BAR_DELTA",
    "LEVI_CIVITA",
    "MINKOWSKI_METRIC",
    "MuellerClass",
    "apply_mueller",
    "boost_mueller",
    "canonical_spinor_sign",
    "embed_rotation",
    "is_lorentzian",
    "k_from_q",
    "lorentz_from_k",
    "minkowski_norm",
    "q_from_k",
    "quaternion_to_rotation",
    "rotation_mueller",
    "spinor_norm",
    "DegenerateTrace",
    "LorentzpolError",
    "NearPiRotation",
    "NonPositiveIntensity",
    "NonRealResult",
    "NormViolation",
    "NotRotation",
    "NotRotationType",
    "SingularNormalization",
    "SingularParameter",
    "RecoveryIntermediates",
    "RecoveryResult",
    "RoundTripReport",
    "delta_from_trace",
    "lambda_from_mueller",
    "mn_from_antisymmetric",
    "recover_k",
    "recover_parameters",
    "recover_q",
    "recovery_intermediates",
    "verify_round_trip",
    "LorentzResiduals",
    "MeasurementSet",
    "NoiseSpec",
    "lorentz_residuals",
    "probe_set",
    "reconstruct_mueller",
    "simulate_measurements",
    "PolarizationTriad",
    "TriadCheck",
    "TriadReport",
    "recover_quaternion",
    "rotation_from_measurements",
    "rotation_identity_sum",
    "triad_from_measurements",
    "validate_triad",
]
