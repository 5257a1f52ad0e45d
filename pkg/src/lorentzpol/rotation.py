"""Rotation branch: recover the unit quaternion of a rotation-type element.

For rotation-type elements the natural probe passes through unchanged and
the three polarized probes keep their full intensity, so the 3x3 block is
read off directly; the quaternion follows from its trace and antisymmetric
part.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NearPiRotation, NotRotation, NotRotationType
from .probes import MeasurementSet


@dataclass(frozen=True)
class PolarizationTriad:
    """Output polarization vectors of the three polarized probes."""

    p1: np.ndarray
    p2: np.ndarray
    p3: np.ndarray


@dataclass(frozen=True)
class TriadCheck:
    name: str
    residual: float
    passed: bool


@dataclass(frozen=True)
class TriadReport:
    checks: tuple[TriadCheck, ...]
    all_passed: bool


def triad_from_measurements(ms: MeasurementSet) -> PolarizationTriad:
    i = ms.intensity
    return PolarizationTriad(ms.a[1:] / i, ms.b[1:] / i, ms.c[1:] / i)


def validate_triad(triad: PolarizationTriad, tol: float) -> TriadReport:
    """Check the seven conditions for an orthonormal right-handed triad.

    Three unit norms, three orthogonalities and one handedness condition
    (triple product +1); each is reported with its residual and a pass/fail
    flag at the given tolerance.
    """
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    p = (triad.p1, triad.p2, triad.p3)
    checks = []
    for idx, vec in enumerate(p, start=1):
        checks.append((f"norm_p{idx}", abs(float(np.linalg.norm(vec)) - 1.0)))
    for i, j in ((1, 2), (1, 3), (2, 3)):
        checks.append((f"ortho_p{i}_p{j}", abs(float(p[i - 1] @ p[j - 1]))))
    triple = float(p[0] @ np.cross(p[1], p[2]))
    checks.append(("handedness", abs(triple - 1.0)))
    results = tuple(TriadCheck(name, res, res <= tol) for name, res in checks)
    return TriadReport(results, all(c.passed for c in results))


def rotation_from_measurements(ms: MeasurementSet, tol: float = 1e-9) -> np.ndarray:
    """3x3 rotation block of a rotation-type element, columns = output triad.

    Raises NotRotationType when the natural probe acquires polarization or
    any probe intensity changes by more than tol relative to I, which
    signals boost content.
    """
    i = ms.intensity
    dev = max(
        abs(ms.f[0] - i),
        float(np.abs(ms.f[1:]).max()),
        abs(ms.a[0] - i),
        abs(ms.b[0] - i),
        abs(ms.c[0] - i),
    )
    if dev > tol * i:
        raise NotRotationType(
            f"measurements deviate from rotation form by {dev / i:.3e} relative"
        )
    return np.column_stack([ms.a[1:], ms.b[1:], ms.c[1:]]) / i


def recover_quaternion(r, ortho_tol: float = 1e-6, trace_eps: float = 1e-8) -> np.ndarray:
    """Unit quaternion (n0 >= 0) of a proper rotation matrix.

    n0 comes from the trace, the axis part from the antisymmetric part:

        2*n0 = sqrt(trace + 1)
        n    = (r[2,1]-r[1,2], r[0,2]-r[2,0], r[1,0]-r[0,1]) / (2*sqrt(trace+1))

    Raises NotRotation if r is not orthogonal with determinant +1 within
    ortho_tol, and NearPiRotation when trace + 1 <= trace_eps, where this
    extraction divides by zero (rotations by pi).
    """
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3):
        raise ValueError(f"rotation matrix must have shape (3, 3), got {r.shape}")
    ortho_dev = float(np.abs(r.T @ r - np.eye(3)).max())
    det = float(np.linalg.det(r))
    if ortho_dev > ortho_tol or abs(det - 1.0) > ortho_tol:
        raise NotRotation(
            f"not a proper rotation: |R^T R - 1| = {ortho_dev:.3e}, det = {det:.6f}"
        )
    trace1 = float(np.trace(r)) + 1.0
    if trace1 <= trace_eps:
        raise NearPiRotation(
            f"trace + 1 = {trace1:.3e}: extraction singular near pi rotations"
        )
    s = np.sqrt(trace1)
    return np.array([
        s / 2.0,
        (r[2, 1] - r[1, 2]) / (2.0 * s),
        (r[0, 2] - r[2, 0]) / (2.0 * s),
        (r[1, 0] - r[0, 1]) / (2.0 * s),
    ])


def rotation_identity_sum(r) -> float:
    """Closed-form consistency check of the extraction; equals 4 for rotations.

    (trace+1) plus the squared antisymmetric differences over (trace+1) is
    exactly four times the quaternion norm, hence 4.
    """
    r = np.asarray(r, dtype=float)
    trace1 = float(np.trace(r)) + 1.0
    return trace1 + (
        (r[2, 1] - r[1, 2]) ** 2
        + (r[0, 2] - r[2, 0]) ** 2
        + (r[1, 0] - r[0, 1]) ** 2
    ) / trace1
