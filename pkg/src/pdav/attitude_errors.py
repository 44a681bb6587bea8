"""Error functions, error vectors and error dynamics on the two-sphere.

Two error functions are provided:

* ``psi_r = 1 - q.qd`` with error vector ``e_r = qd x q`` (the benchmark);
  ``e_r`` vanishes at the antipode ``q = -qd``.
* ``psi = 2 - sqrt(2) sqrt(1 + q.qd)`` with body-frame error vector
  ``e_q = Q^T (qd x q) / (sqrt(2) sqrt(1 + q.qd))``, of magnitude
  ``sin(theta / 2)``. Defined on the set where ``1 + q.qd > 0``.
"""
import numpy as np

from .so3 import cross, hat

DOMAIN_EPS = 1e-9


class DomainError(ValueError):
    """Pointing direction left the set where ``psi < 2`` (antipodal configuration)."""

    def __init__(self, msg, t=None):
        super().__init__(msg)
        self.t = t


def _margin(q, qd):
    m = 1.0 + float(np.dot(q, qd))
    if m <= DOMAIN_EPS:
        raise DomainError(f"antipodal configuration: 1 + q.qd = {m:.3e} <= {DOMAIN_EPS:g}")
    return m


def psi_r(q, qd):
    return 1.0 - float(np.dot(q, qd))


def e_r(q, qd):
    return cross(qd, q)


def psi(q, qd):
    # 2 - sqrt(2) sqrt(m) rewritten as |q - qd|^2 / (2 + sqrt(2 m)): no cancellation near q = qd
    m = _margin(q, qd)
    diff = np.asarray(q) - np.asarray(qd)
    return float(diff @ diff) / (2.0 + np.sqrt(2.0 * m))


def e_q(q, qd, Q):
    k = 1.0 / (np.sqrt(2.0) * np.sqrt(_margin(q, qd)))
    return k * (Q.T @ cross(qd, q))


def e_omega(omega_b, omega_d_b, Q, Qd):
    return omega_b - Q.T @ (Qd @ omega_d_b)


def psi_dot(q, qd, omega, omega_d):
    """Time derivative of ``psi``; ``omega`` and ``omega_d`` are inertial-frame rates."""
    k = 1.0 / (np.sqrt(2.0) * np.sqrt(_margin(q, qd)))
    return k * float(np.dot(cross(qd, q), omega - omega_d))


def e_q_dot(q, qd, Q, omega, omega_d, omega_b):
    """Time derivative of ``e_q``.

    Frames are mixed deliberately: ``omega``, ``omega_d`` are inertial,
    ``omega_b`` is the body rate.
    """
    m = _margin(q, qd)
    k = 1.0 / (np.sqrt(2.0) * np.sqrt(m))
    qd_dot = cross(omega_d, qd)
    q_dot = cross(omega, q)
    eq = k * (Q.T @ cross(qd, q))
    term1 = k * (Q.T @ (hat(qd_dot) @ q + hat(qd) @ q_dot))
    term2 = -(np.dot(qd_dot, q) + np.dot(qd, q_dot)) / (2.0 * m) * eq
    term3 = -cross(omega_b, eq)
    return term1 + term2 + term3


def e_omega_dot(state, u, p, Qd, omega_d_b, omega_d_dot_b):
    """Time derivative of ``e_omega`` under the true dynamics with input ``u``."""
    w = state.omega_b
    R = state.Q.T @ Qd
    return (p.J_inv @ (u + cross(p.J @ w, w) - p.c * w + p.tau)
            + cross(w, R @ omega_d_b) - R @ omega_d_dot_b)
