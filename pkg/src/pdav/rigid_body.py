"""Attitude dynamics of a fully actuated rigid body with viscous friction.

    J w_dot + w x (J w) = u - c w + tau,      Q_dot = Q hat(w)

with ``w`` the body-frame angular velocity and ``Q`` mapping body to inertial.
"""
from dataclasses import dataclass, field

import numpy as np

from .so3 import E3, cross, exp_map, is_rotation, right_jacobian_inv

MAX_STEP = 0.01
DEFAULT_STEP = 1e-3


@dataclass(frozen=True)
class RigidBodyParams:
    J: np.ndarray = field(default_factory=lambda: np.diag([0.0294, 0.0305, 0.0495]))
    c: float = 0.3
    tau: np.ndarray = field(default_factory=lambda: np.zeros(3))
    J_inv: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        J = np.asarray(self.J, dtype=float)
        if J.shape == (3,):
            J = np.diag(J)
        if J.shape != (3, 3) or np.any(J - np.diag(np.diag(J))):
            raise ValueError("J must be a diagonal 3x3 inertia matrix")
        if np.any(np.diag(J) <= 0):
            raise ValueError(f"J diagonal entries must be positive, got {np.diag(J).tolist()}")
        if self.c < 0:
            raise ValueError(f"friction coefficient c must be >= 0, got {self.c}")
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "tau", np.asarray(self.tau, dtype=float).reshape(3))
        object.__setattr__(self, "J_inv", np.diag(1.0 / np.diag(J)))


@dataclass(frozen=True)
class BodyState:
    Q: np.ndarray
    omega_b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "Q", np.asarray(self.Q, dtype=float))
        object.__setattr__(self, "omega_b", np.asarray(self.omega_b, dtype=float).reshape(3))
        if not is_rotation(self.Q):
            raise ValueError("Q is not a rotation matrix within 1e-9")


def angular_acceleration(omega_b, u, p):
    """Body-frame angular acceleration from the Euler equations."""
    return p.J_inv @ (u - cross(omega_b, p.J @ omega_b) - p.c * omega_b + p.tau)


def dynamics(state, u, p):
    """Return ``(omega_b, omega_dot_b)``: the attitude rate datum and the angular acceleration."""
    return state.omega_b, angular_acceleration(state.omega_b, u, p)


def spatial_omega(state):
    return state.Q @ state.omega_b


def pointing(state):
    q = state.Q @ E3
    return q / np.linalg.norm(q)


def check_step(h):
    if not (0.0 < h <= MAX_STEP):
        raise ValueError(f"step size must satisfy 0 < h <= {MAX_STEP}, got {h}")


def step(state, control, p, t, h):
    """Advance one Runge-Kutta-Munthe-Kaas (RK4) step.

    The attitude is parametrized locally as ``Q0 exp(sigma)``; classical RK4
    runs on ``(sigma, omega_b)`` and the increment is applied by the
    exponential map, so ``Q`` never leaves SO(3). ``control(t, state)`` is
    sampled at every stage.
    """
    check_step(h)
    Q0, w0 = state.Q, state.omega_b

    def stage(ts, sigma, w):
        s = BodyState(Q0 @ exp_map(sigma), w) if sigma is not None else state
        u = control(ts, s)
        dsigma = w if sigma is None else right_jacobian_inv(sigma) @ w
        return dsigma, angular_acceleration(w, u, p)

    k1s, k1w = stage(t, None, w0)
    k2s, k2w = stage(t + 0.5 * h, 0.5 * h * k1s, w0 + 0.5 * h * k1w)
    k3s, k3w = stage(t + 0.5 * h, 0.5 * h * k2s, w0 + 0.5 * h * k2w)
    k4s, k4w = stage(t + h, h * k3s, w0 + h * k3w)
    sigma = (h / 6.0) * (k1s + 2.0 * k2s + 2.0 * k3s + k4s)
    w = w0 + (h / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
    return BodyState(Q0 @ exp_map(sigma), w)


def zero_control(t, state):
    return np.zeros(3)


def simulate(state, control, p, t_end, h=DEFAULT_STEP):
    """Integrate from t = 0 to ``t_end``; returns the list of states (length n + 1)."""
    n = int(round(t_end / h))
    states = [state]
    for k in range(n):
        state = step(state, control, p, k * h, h)
        states.append(state)
    return states
