"""Rotation-group and two-sphere primitives.

Vectors are ``(3,)`` float arrays and matrices ``(3, 3)`` float arrays.
"""
import numpy as np

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])

SKEW_TOL = 1e-9
SMALL_ANGLE = 1e-12
_I3 = np.eye(3)


def hat(r):
    """Skew-symmetric matrix with ``hat(r) @ w == cross(r, w)``."""
    return np.array([
        [0.0, -r[2], r[1]],
        [r[2], 0.0, -r[0]],
        [-r[1], r[0], 0.0],
    ])


def cross(a, b):
    """Cross product of two 3-vectors (cheaper than ``np.cross`` for single vectors)."""
    return np.array([
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])


def vee(m, tol=SKEW_TOL):
    """Inverse of :func:`hat`.

    Raises:
        ValueError: if ``m`` is not skew-symmetric within ``tol``. Callers
            holding an approximately skew matrix should pass
            ``0.5 * (m - m.T)``.
    """
    m = np.asarray(m, dtype=float)
    asym = np.max(np.abs(m + m.T))
    if asym > tol:
        raise ValueError(f"matrix is not skew-symmetric (|m + m^T|_max = {asym:.3e})")
    return np.array([m[2, 1], m[0, 2], m[1, 0]])


def exp_map(xi):
    """Rodrigues exponential of the rotation vector ``xi`` (angle = norm)."""
    xi = np.asarray(xi, dtype=float)
    angle = np.linalg.norm(xi)
    if angle < SMALL_ANGLE:
        return np.eye(3)
    K = hat(xi / angle)
    return _I3 + np.sin(angle) * K + (1.0 - np.cos(angle)) * (K @ K)


def right_jacobian_inv(sigma):
    """Inverse right Jacobian of SO(3) at ``sigma``.

    If ``Q(t) = Q0 exp(sigma(t))`` then ``d sigma/dt = right_jacobian_inv(sigma) @ omega_b``.
    """
    sigma = np.asarray(sigma, dtype=float)
    angle = np.linalg.norm(sigma)
    S = hat(sigma)
    if angle < 1e-6:
        # series: 1/12 + angle^2/720
        return np.eye(3) + 0.5 * S + (1.0 / 12.0 + angle**2 / 720.0) * (S @ S)
    coef = 1.0 / angle**2 - (1.0 + np.cos(angle)) / (2.0 * angle * np.sin(angle))
    return np.eye(3) + 0.5 * S + coef * (S @ S)


def rot1(a):
    c, s = np.cos(a), np.sin(a)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def rot3(a):
    c, s = np.cos(a), np.sin(a)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def euler313(gamma1, gamma2):
    """3-1-3 Euler rotation with the outermost angle fixed at zero.

    Returns ``rot1(gamma2) @ rot3(gamma1)``: ``gamma1`` turns about the body
    e3 axis, ``gamma2`` tilts about E1.
    """
    return rot1(gamma2) @ rot3(gamma1)


def sphere_angle(q, qd):
    """Angle in [0, pi] between two unit vectors (atan2 form, well-conditioned near 0 and pi)."""
    return float(np.arctan2(np.linalg.norm(cross(qd, q)), np.dot(qd, q)))


def frame_from_pointing(q):
    """A rotation taking e3 to ``q`` along the shortest arc.

    Raises:
        ValueError: for ``q = -e3``, where the shortest arc is not unique.
    """
    q = np.asarray(q, dtype=float)
    q = q / np.linalg.norm(q)
    axis = cross(E3, q)
    s = np.linalg.norm(axis)
    if s < SMALL_ANGLE:
        if q[2] > 0:
            return np.eye(3)
        raise ValueError("shortest-arc frame undefined for q = -e3")
    return exp_map(axis / s * np.arctan2(s, q[2]))


def is_rotation(m, tol=1e-9):
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3) or not np.all(np.isfinite(m)):
        return False
    det = np.dot(m[0], cross(m[1], m[2]))
    return np.linalg.norm(m.T @ m - _I3) <= tol and abs(det - 1.0) <= tol
