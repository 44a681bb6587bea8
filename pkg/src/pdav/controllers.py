"""Pointing-direction-and-angular-velocity (PDAV) tracking control and the benchmark stabilizers.

The PDAV law drives the sliding variable ``s = (Lambda + psi) e_q + eta e_omega``
so that, with an exact model, ``V = |s|^2 / 2`` obeys ``V_dot = -gamma |s|^2``.
Model error enters only through the estimated inertia, friction and external
moment; with estimates the decay holds outside a per-axis envelope of radius
``|upsilon_j| J_jj / (gamma J_hat_jj)``.
"""
from dataclasses import dataclass, field

import numpy as np

from . import attitude_errors as ae
from .rigid_body import RigidBodyParams, pointing
from .so3 import cross


@dataclass(frozen=True)
class PdavGains:
    Lambda: float = 144.0
    eta: float = 24.0
    gamma: float = 10.0

    def __post_init__(self):
        for name in ("Lambda", "eta", "gamma"):
            if not getattr(self, name) > 0:
                raise ValueError(f"gain {name} must be positive, got {getattr(self, name)}")


def _positive_diag(name, d):
    d = np.asarray(d, dtype=float)
    if d.shape == (3, 3):
        if np.any(d - np.diag(np.diag(d))):
            raise ValueError(f"{name} must be diagonal")
        d = np.diag(d)
    d = d.reshape(3)
    if np.any(d <= 0):
        raise ValueError(f"{name} diagonal entries must be positive, got {d.tolist()}")
    return d


@dataclass(frozen=True)
class BenchmarkGains:
    """Diagonal gains stored as 3-vectors."""

    K_r: np.ndarray = field(default_factory=lambda: np.array([4.234, 4.392, 7.128]))
    K_omega: np.ndarray = field(default_factory=lambda: np.array([0.7056, 0.7320, 1.188]))

    def __post_init__(self):
        object.__setattr__(self, "K_r", _positive_diag("K_r", self.K_r))
        object.__setattr__(self, "K_omega", _positive_diag("K_omega", self.K_omega))


@dataclass(frozen=True)
class ModelEstimate:
    J_hat: np.ndarray
    c_hat: float
    tau_hat: np.ndarray = field(default_factory=lambda: np.zeros(3))
    params: RigidBodyParams = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        # the believed model, validated like the true one
        p = RigidBodyParams(self.J_hat, self.c_hat, self.tau_hat)
        object.__setattr__(self, "J_hat", p.J)
        object.__setattr__(self, "tau_hat", p.tau)
        object.__setattr__(self, "params", p)

    @classmethod
    def exact(cls, p):
        return cls(p.J, p.c, p.tau)

    @classmethod
    def perturbed(cls, p, j_error=0.14, c_error=0.03):
        """``J_hat = (1 + j_error) J``, ``c_hat = (1 + c_error) c``."""
        return cls((1.0 + j_error) * p.J, (1.0 + c_error) * p.c, p.tau)


@dataclass(frozen=True)
class ControlDiagnostics:
    u: np.ndarray
    s: np.ndarray
    psi: float
    e_q_b: np.ndarray
    e_omega_b: np.ndarray
    V: float
    psi_dot: float = 0.0
    e_q_dot_b: np.ndarray = None


def drift(omega_b, p):
    """Open-loop part of the angular acceleration, ``J^-1 ((J w) x w - c w + tau)``."""
    return p.J_inv @ (cross(p.J @ omega_b, omega_b) - p.c * omega_b + p.tau)


def desired_rate_term(state, desired):
    """``w x (Q^T Qd w_d) - Q^T Qd w_d_dot``: the desired-motion part of ``e_omega_dot``."""
    R = state.Q.T @ desired.Q_d
    return cross(state.omega_b, R @ desired.omega_d_b) - R @ desired.omega_d_dot_b


def sliding_surface(psi, e_q_b, e_omega_b, gains):
    return (gains.Lambda + psi) * np.asarray(e_q_b) + gains.eta * np.asarray(e_omega_b)


def _errors(state, desired):
    q = pointing(state)
    qd = desired.q_d
    omega = state.Q @ state.omega_b
    psi = ae.psi(q, qd)
    eq = ae.e_q(q, qd, state.Q)
    ew = ae.e_omega(state.omega_b, desired.omega_d_b, state.Q, desired.Q_d)
    psi_dot = ae.psi_dot(q, qd, omega, desired.omega_d)
    eq_dot = ae.e_q_dot(q, qd, state.Q, omega, desired.omega_d, state.omega_b)
    return psi, eq, ew, psi_dot, eq_dot


def pdav_control(state, desired, gains, est):
    """PDAV control moment (body frame) with its diagnostics.

    ``est`` holds the model the controller believes; the state and desired
    motion are taken as measured exactly.

    Raises:
        DomainError: if the pointing direction is antipodal to ``desired.q_d``.
    """
    psi, eq, ew, psi_dot, eq_dot = _errors(state, desired)
    s = sliding_surface(psi, eq, ew, gains)
    d = desired_rate_term(state, desired)
    f_hat = drift(state.omega_b, est.params)
    inner = -gains.eta * (f_hat + d) - (gains.Lambda + psi) * eq_dot - psi_dot * eq - gains.gamma * s
    u = (est.J_hat @ inner) / gains.eta
    return ControlDiagnostics(u, s, psi, eq, ew, 0.5 * float(s @ s), psi_dot, eq_dot)


def benchmark_control(state, qd, gains, p):
    """Stabilizer built on ``e_r = qd x q`` with exact cancellation of gyroscopic, friction and external moments."""
    q = pointing(state)
    w = state.omega_b
    omega = state.Q @ w
    er = ae.e_r(q, qd)
    return (state.Q.T @ (-gains.K_r * er - gains.K_omega * omega)
            + cross(w, p.J @ w) + p.c * w - p.tau)


def modified_benchmark_control(state, qd, gains, p):
    """Same structure as :func:`benchmark_control` with ``e_r`` replaced by ``Q e_q``.

    Raises:
        DomainError: at the antipode of ``qd``.
    """
    q = pointing(state)
    w = state.omega_b
    omega = state.Q @ w
    eq = ae.e_q(q, qd, state.Q)
    return (state.Q.T @ (-gains.K_r * (state.Q @ eq) - gains.K_omega * omega)
            + cross(w, p.J @ w) + p.c * w - p.tau)


def upsilon(state, desired, gains, est, p_true):
    """Model-mismatch term: ``s_dot = -gamma J^-1 J_hat s + upsilon`` in closed loop."""
    psi, eq, ew, psi_dot, eq_dot = _errors(state, desired)
    d = desired_rate_term(state, desired)
    f = drift(state.omega_b, p_true)
    f_hat = drift(state.omega_b, est.params)
    mix = p_true.J_inv @ est.J_hat - np.eye(3)
    return (gains.eta * (f - f_hat)
            + mix @ (-gains.eta * (f_hat + d) - psi_dot * eq - (gains.Lambda + psi) * eq_dot))


def ultimate_bound(upsilon_j, J_jj, J_hat_jj, gamma):
    """Radius ``|upsilon_j| J_jj / (gamma J_hat_jj)`` of the envelope the sliding variable settles into."""
    if not (gamma > 0 and J_hat_jj > 0):
        raise ValueError("gamma and J_hat_jj must be positive")
    return abs(upsilon_j) * J_jj / (gamma * J_hat_jj)
