"""General branch: recover the spinor and vector parameters of a
Lorentz-type element directly from the four-probe measurements.

The extraction works on the row-flipped matrix Lambda.  Its trace fixes the
modulus delta of the leading parameter component (trace = 4*delta^2); the
antisymmetric part of Lambda has the rigid layout

    2*delta * | 0    -M1   -M2   -M3 |
              | M1    0     N3   -N2 |
              | M2   -N3    0     N1 |
              | M3    N2   -N1    0  |

which yields two real 3-vectors: M carries the boost content, N the
rotation content.  The normalized spinor parameter is then

    k = +- (delta, N + i*M) / sqrt(delta^2 + (N + i*M).(N + i*M))

and the vector parameter q = (M - i*N)/delta follows without the sign
ambiguity.  delta = 0 (trace-free elements, e.g. pi rotations composed
with boosts) is a hard singularity of the method.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import BAR_DELTA, as_mueller, canonical_spinor_sign, lorentz_from_k
from .errors import DegenerateTrace, LorentzpolError, SingularNormalization
from .probes import LorentzResiduals, MeasurementSet, lorentz_residuals, reconstruct_mueller


@dataclass(frozen=True)
class RecoveryIntermediates:
    """Raw pieces of the extraction: delta, M, N, Lambda and the trace sum."""

    delta: float
    mvec: np.ndarray
    nvec: np.ndarray
    lambda_matrix: np.ndarray
    trace_sum: float


@dataclass(frozen=True)
class RecoveryResult:
    """Full parameter set recovered from one measurement set."""

    delta: float
    mvec: np.ndarray
    nvec: np.ndarray
    k: np.ndarray
    q: np.ndarray
    round_trip_max_dev: float
    residuals: LorentzResiduals

    def to_json_dict(self) -> dict:
        return {
            "delta": self.delta,
            "M": self.mvec,
            "N": self.nvec,
            "k": {"re": self.k.real, "im": self.k.imag},
            "q": {"re": self.q.real, "im": self.q.imag},
            "round_trip_max_dev": self.round_trip_max_dev,
            "lorentz_residuals": self.residuals.as_array(),
        }


@dataclass(frozen=True)
class RoundTripReport:
    """Outcome of reconstruct -> recover -> rebuild on one measurement set."""

    passed: bool
    max_deviation: float | None
    tol: float
    residuals: LorentzResiduals
    error: str | None = None


def lambda_from_mueller(m) -> np.ndarray:
    """Row-flipped matrix Lambda: row 0 kept, rows 1-3 negated."""
    return BAR_DELTA @ as_mueller(m)


def _trace_sum(ms: MeasurementSet) -> float:
    f, a, b, c = ms.outputs()
    return float(f[0] + (a[1] - f[1]) + (b[2] - f[2]) + (c[3] - f[3]))


def delta_from_trace(ms: MeasurementSet, eps: float = 1e-10) -> float:
    """Modulus of the leading spinor component from the matrix trace.

    trace = 4*delta^2, so delta = sqrt(trace_sum / I) / 2 with the positive
    root.  Raises DegenerateTrace when trace_sum / I <= eps: the rest of
    the extraction divides by delta.
    """
    ratio = _trace_sum(ms) / ms.intensity
    if ratio <= eps:
        raise DegenerateTrace(
            f"matrix trace {ratio!r} is not positive; cannot extract delta"
        )
    return float(np.sqrt(ratio) / 2.0)


def mn_from_antisymmetric(ms: MeasurementSet, delta: float) -> tuple[np.ndarray, np.ndarray]:
    """Boost vector M and rotation vector N from the antisymmetric part."""
    if not delta > 0.0:
        raise ValueError(f"delta must be positive, got {delta}")
    f, a, b, c = ms.outputs()
    scale = 4.0 * ms.intensity * delta
    mvec = np.array([
        f[0] - f[1] - a[0],
        f[0] - f[2] - b[0],
        f[0] - f[3] - c[0],
    ]) / scale
    nvec = np.array([
        f[2] - f[3] - c[2] + b[3],
        f[3] - f[1] - a[3] + c[1],
        f[1] - f[2] - b[1] + a[2],
    ]) / scale
    return mvec, nvec


def recovery_intermediates(ms: MeasurementSet) -> RecoveryIntermediates:
    delta = delta_from_trace(ms)
    mvec, nvec = mn_from_antisymmetric(ms, delta)
    return RecoveryIntermediates(
        delta=delta,
        mvec=mvec,
        nvec=nvec,
        lambda_matrix=lambda_from_mueller(reconstruct_mueller(ms)),
        trace_sum=_trace_sum(ms),
    )


def _assemble_k(delta: float, mvec: np.ndarray, nvec: np.ndarray) -> np.ndarray:
    v = nvec + 1j * mvec
    norm2 = delta ** 2 + np.dot(v, v)
    if abs(norm2) < 1e-12:
        raise SingularNormalization(
            f"delta^2 + (N + iM).(N + iM) = {norm2!r} is singular"
        )
    k = np.concatenate(([delta + 0j], v)) / np.sqrt(norm2)
    return canonical_spinor_sign(k)


def recover_k(ms: MeasurementSet) -> np.ndarray:
    """Normalized spinor parameter of the measured element, canonical sign."""
    inter = recovery_intermediates(ms)
    return _assemble_k(inter.delta, inter.mvec, inter.nvec)


def recover_q(ms: MeasurementSet) -> np.ndarray:
    """Vector parameter q straight from the measured Stokes vectors.

    Componentwise (trace_sum in the denominator throughout):

        q1 = [(F0 - F1 - A0) - i*((F2 - F3) - (C2 - B3))] / trace_sum
        q2 = [(F0 - F2 - B0) - i*((F3 - F1) - (A3 - C1))] / trace_sum
        q3 = [(F0 - F3 - C0) - i*((F1 - F2) - (B1 - A2))] / trace_sum

    Equal to (M - i*N)/delta, and consistent with recover_k through
    i*q = kvec/k0.  Shares the degeneracy guards of recover_k.
    """
    delta = delta_from_trace(ms)
    mvec, nvec = mn_from_antisymmetric(ms, delta)
    _assemble_k(delta, mvec, nvec)  # parity with recover_k's singularity guard
    f, a, b, c = ms.outputs()
    numerators = np.array([
        (f[0] - f[1] - a[0]) - 1j * ((f[2] - f[3]) - (c[2] - b[3])),
        (f[0] - f[2] - b[0]) - 1j * ((f[3] - f[1]) - (a[3] - c[1])),
        (f[0] - f[3] - c[0]) - 1j * ((f[1] - f[2]) - (b[1] - a[2])),
    ])
    return numerators / _trace_sum(ms)


def recover_parameters(ms: MeasurementSet) -> RecoveryResult:
    """Run the whole chain and quantify the rebuild error.

    Recovers (delta, M, N, k, q), rebuilds the matrix from k, and reports
    the max elementwise deviation from the directly reconstructed matrix
    together with the Minkowski residuals of the raw measurements.
    """
    inter = recovery_intermediates(ms)
    k = _assemble_k(inter.delta, inter.mvec, inter.nvec)
    q = recover_q(ms)
    rebuilt = lorentz_from_k(k)
    deviation = float(np.abs(rebuilt - reconstruct_mueller(ms)).max())
    return RecoveryResult(
        delta=inter.delta,
        mvec=inter.mvec,
        nvec=inter.nvec,
        k=k,
        q=q,
        round_trip_max_dev=deviation,
        residuals=lorentz_residuals(ms),
    )


def verify_round_trip(ms: MeasurementSet, tol: float = 1e-9) -> RoundTripReport:
    """Round-trip check that never raises: recovery errors go in the report."""
    residuals = lorentz_residuals(ms)
    try:
        result = recover_parameters(ms)
    except LorentzpolError as exc:
        return RoundTripReport(
            passed=False,
            max_deviation=None,
            tol=tol,
            residuals=residuals,
            error=f"{type(exc).__name__}: {exc}",
        )
    return RoundTripReport(
        passed=result.round_trip_max_dev < tol,
        max_deviation=result.round_trip_max_dev,
        tol=tol,
        residuals=residuals,
    )
