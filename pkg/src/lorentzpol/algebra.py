"""Stokes/Mueller algebra and exact forward constructions.

A Stokes vector is a real 4-vector (s0, s1, s2, s3) with s0 the total
intensity and (s1, s2, s3) = I * p the polarization vector scaled by
intensity.  Mueller matrices act on Stokes vectors by ordinary
matrix-vector multiplication.  Transformations that preserve the Minkowski
quadratic form s0^2 - s1^2 - s2^2 - s3^2 form the polarization image of the
proper orthochronous Lorentz group; this module builds them from two
equivalent compact parameterizations:

* a unit quaternion (n0, n1, n2, n3) for pure polarization rotations;
* a complex 4-vector k = (k0, kvec), normalized to k0^2 + kvec.kvec = 1 and
  defined up to an overall sign, for the general case.  Real kvec gives
  pure rotations (k then coincides with the quaternion), imaginary kvec
  gives boosts: k = (cosh(b/2), -i*sinh(b/2)*e) maps to the boost of
  rapidity b along the unit axis e.

The equivalent complex 3-vector parameter q is related by i*q = kvec/k0,
so q is finite whenever k0 != 0 and carries the same information minus the
sign ambiguity.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import NonRealResult, NormViolation, SingularParameter

MINKOWSKI_METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

# Sign-flip symbol applied to the rows of a Mueller matrix (index lowering
# on the output slot).  Numerically the same matrix as the metric.
BAR_DELTA = np.diag([1.0, -1.0, -1.0, -1.0])

LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k, _s in [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1),
                       (0, 2, 1, -1), (2, 1, 0, -1), (1, 0, 2, -1)]:
    LEVI_CIVITA[_i, _j, _k] = _s


class MuellerClass(enum.Enum):
    """Classification of a Mueller matrix."""

    LORENTZ = "lorentz"
    ROTATION = "rotation"
    NOT_LORENTZIAN = "not-lorentzian"


def as_stokes(s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    if s.shape != (4,):
        raise ValueError(f"Stokes vector must have shape (4,), got {s.shape}")
    return s


def as_mueller(m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.shape != (4, 4):
        raise ValueError(f"Mueller matrix must have shape (4, 4), got {m.shape}")
    return m


def minkowski_norm(s) -> float:
    """Quadratic invariant s0^2 - s1^2 - s2^2 - s3^2 of a Stokes vector.

    Zero for fully polarized light, s0^2 for natural light.
    """
    s = as_stokes(s)
    return float(s[0] ** 2 - s[1] ** 2 - s[2] ** 2 - s[3] ** 2)


def apply_mueller(m, s) -> np.ndarray:
    """Image of the Stokes vector s under the optical element m."""
    return as_mueller(m) @ as_stokes(s)


def quaternion_to_rotation(n, norm_tol: float = 1e-9) -> np.ndarray:
    """Rotation matrix of a unit quaternion (n0, n1, n2, n3).

    Parameters
    ----------
    n : array-like, shape (4,)
        Unit quaternion; (n0, e*sin(t/2)) with n0 = cos(t/2) rotates by the
        angle t about the unit axis e.  n and -n give the same matrix.
    norm_tol : float
        Allowed deviation of n.n from 1 before NormViolation is raised.

    Returns
    -------
    numpy.ndarray, shape (3, 3)
        Proper rotation matrix (orthogonal, determinant +1).
    """
    n = np.asarray(n, dtype=float)
    if n.shape != (4,):
        raise ValueError(f"quaternion must have shape (4,), got {n.shape}")
    norm2 = float(np.dot(n, n))
    if abs(norm2 - 1.0) >= norm_tol:
        raise NormViolation(f"quaternion norm^2 = {norm2!r}, expected 1")
    n0, n1, n2, n3 = n
    return np.array([
        [1 - 2 * (n2 * n2 + n3 * n3), -2 * n0 * n3 + 2 * n1 * n2, 2 * n0 * n2 + 2 * n1 * n3],
        [2 * n0 * n3 + 2 * n1 * n2, 1 - 2 * (n3 * n3 + n1 * n1), -2 * n0 * n1 + 2 * n2 * n3],
        [-2 * n0 * n2 + 2 * n1 * n3, 2 * n0 * n1 + 2 * n2 * n3, 1 - 2 * (n1 * n1 + n2 * n2)],
    ])


def embed_rotation(r) -> np.ndarray:
    """Mueller matrix of a pure polarization rotation (3x3 block)."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3):
        raise ValueError(f"rotation block must have shape (3, 3), got {r.shape}")
    m = np.eye(4)
    m[1:, 1:] = r
    return m


def rotation_mueller(axis: int, theta: float) -> np.ndarray:
    """Mueller matrix rotating the polarization by theta about a Stokes axis."""
    if axis not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {axis}")
    n = np.zeros(4)
    n[0] = np.cos(theta / 2.0)
    n[axis] = np.sin(theta / 2.0)
    return embed_rotation(quaternion_to_rotation(n))


def boost_mueller(axis: int, beta: float) -> np.ndarray:
    """Boost-type Mueller matrix of rapidity beta along a Stokes axis.

    Mixes intensity with the chosen polarization component through
    cosh(beta) / sinh(beta), leaving the transverse components alone.
    """
    if axis not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {axis}")
    m = np.eye(4)
    m[0, 0] = m[axis, axis] = np.cosh(beta)
    m[0, axis] = m[axis, 0] = np.sinh(beta)
    return m


def spinor_norm(k) -> complex:
    """Bilinear invariant k0^2 + kvec.kvec; equals 1 for normalized k."""
    k = np.asarray(k, dtype=complex)
    return complex(k[0] ** 2 + np.dot(k[1:], k[1:]))


def _as_real_matrix(m: np.ndarray, tol: float) -> np.ndarray:
    imag_max = float(np.abs(m.imag).max())
    if imag_max > tol:
        raise NonRealResult(
            f"matrix has imaginary residue {imag_max:.3e} (tolerance {tol:.1e})"
        )
    return np.ascontiguousarray(m.real)


def _cross_matrix(w: np.ndarray) -> np.ndarray:
    # entries eps_ijl * w_l
    return np.array([
        [0.0, w[2], -w[1]],
        [-w[2], 0.0, w[0]],
        [w[1], -w[0], 0.0],
    ], dtype=complex)


def lorentz_from_k(k, norm_tol: float = 1e-9, real_tol: float = 1e-9) -> np.ndarray:
    """Mueller matrix of the Lorentz transformation with spinor parameter k.

    The matrix is quadratic in (k, conj k):

        L[0,0]  = |k0|^2 + kvec.conj(kvec)
        L[0,j]  = 2*Im(k0*conj(kj)) + i*(kvec x conj(kvec))_j
        L[j,0]  = 2*Im(k0*conj(kj)) - i*(kvec x conj(kvec))_j
        L[i,j]  = (|k0|^2 - kvec.conj(kvec))*delta_ij + 2*Re(ki*conj(kj))
                  - eps_ijl * 2*Re(k0*conj(kl))

    k and -k give the same matrix.  The result preserves the Minkowski form
    (L^T g L = g), has determinant +1 and L[0,0] >= 1.  Entries are computed
    in complex arithmetic and asserted real; a residue above real_tol means
    the input was not a valid parameter.

    Raises NormViolation unless |k0^2 + kvec.kvec - 1| < norm_tol, and
    NonRealResult if the imaginary residue survives.
    """
    k = np.asarray(k, dtype=complex)
    if k.shape != (4,):
        raise ValueError(f"spinor parameter must have shape (4,), got {k.shape}")
    norm = spinor_norm(k)
    if abs(norm - 1.0) >= norm_tol:
        raise NormViolation(f"k0^2 + kvec.kvec = {norm!r}, expected 1")

    k0, kv = k[0], k[1:]
    k0c, kvc = np.conj(k0), np.conj(kv)
    out = np.empty((4, 4), dtype=complex)
    out[0, 0] = k0 * k0c + kv @ kvc
    sym = 1j * (k0c * kv - k0 * kvc)          # 2*Im(k0*conj(kj)), real
    asym = 1j * np.cross(kv, kvc)             # i*(kvec x conj(kvec)), real
    out[0, 1:] = sym + asym
    out[1:, 0] = sym - asym
    out[1:, 1:] = (
        (k0 * k0c - kv @ kvc) * np.eye(3)
        + np.outer(kv, kvc)
        + np.outer(kvc, kv)
        - _cross_matrix(k0 * kvc + k0c * kv)
    )
    return _as_real_matrix(out, real_tol)


def k_from_q(q) -> np.ndarray:
    """Normalized spinor parameter with non-negative Re(k0) from q.

    Inverts i*q = kvec/k0 under the normalization k0^2 + kvec.kvec = 1,
    which pins k0 = 1/sqrt(1 - q.q).  Raises SingularParameter when the
    normalization denominator 1 - q.q vanishes.
    """
    q = np.asarray(q, dtype=complex)
    if q.shape != (3,):
        raise ValueError(f"vector parameter must have shape (3,), got {q.shape}")
    denom = 1.0 - np.dot(q, q)
    if abs(denom) < 1e-12:
        raise SingularParameter(f"1 - q.q = {denom!r} is singular")
    k0 = 1.0 / np.sqrt(denom)  # principal branch: Re(k0) >= 0
    k = np.concatenate(([k0], 1j * q * k0))
    return canonical_spinor_sign(k)


def q_from_k(k) -> np.ndarray:
    """Vector parameter q = kvec/(i*k0); inverse of k_from_q away from k0 = 0."""
    k = np.asarray(k, dtype=complex)
    if abs(k[0]) < 1e-14:
        raise SingularParameter("k0 = 0 has no finite vector parameter")
    return -1j * k[1:] / k[0]


def canonical_spinor_sign(k) -> np.ndarray:
    """Resolve the +-k ambiguity deterministically.

    Keeps the sign making Re(k0) > 0; on a tie, the first nonzero entry of
    (Im k0, Re k1, Im k1, Re k2, Im k2, Re k3, Im k3) is made positive.
    """
    k = np.asarray(k, dtype=complex)
    ladder = np.empty(8)
    ladder[0::2] = k.real
    ladder[1::2] = k.imag
    for x in ladder:
        if x > 0.0:
            return k
        if x < 0.0:
            return -k
    return k


def is_lorentzian(m, tol: float = 1e-9) -> MuellerClass:
    """Classify a Mueller matrix by how it treats the Minkowski form.

    LORENTZ when ||M^T g M - g||_max < tol * ||M||_max^2 together with
    det M > 0 and M[0,0] > 0; ROTATION when additionally the first row and
    column equal (1, 0, 0, 0) within tol; NOT_LORENTZIAN otherwise.
    """
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    m = as_mueller(m)
    scale = float(np.abs(m).max())
    if scale == 0.0:
        return MuellerClass.NOT_LORENTZIAN
    metric_dev = float(np.abs(m.T @ MINKOWSKI_METRIC @ m - MINKOWSKI_METRIC).max())
    if metric_dev >= tol * scale * scale or np.linalg.det(m) <= 0.0 or m[0, 0] <= 0.0:
        return MuellerClass.NOT_LORENTZIAN
    edge = np.concatenate(([m[0, 0] - 1.0], m[0, 1:], m[1:, 0]))
    if float(np.abs(edge).max()) < tol * max(1.0, scale):
        return MuellerClass.ROTATION
    return MuellerClass.LORENTZ
