"""Randomized invariant checks run by ``pdav check``.

Each check compares an analytic quantity against an independent numerical
oracle (central differences along explicit flows, conservation laws) and
returns the worst error seen.
"""
from dataclasses import dataclass

import numpy as np

from . import attitude_errors as ae
from .rigid_body import BodyState, RigidBodyParams, angular_acceleration, simulate, zero_control
from .so3 import E3, exp_map


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst: float
    tol: float

    @property
    def detail(self):
        return f"worst {self.worst:.3e} (tol {self.tol:.1e})"


def random_unit(rng, n=None):
    v = rng.normal(size=(3,) if n is None else (n, 3))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def random_rotation(rng):
    return exp_map(rng.uniform(-np.pi, np.pi) * random_unit(rng))


def random_pair(rng, min_margin):
    """Unit vectors ``q``, ``qd`` with ``1 + q.qd > min_margin``."""
    while True:
        q, qd = random_unit(rng), random_unit(rng)
        if 1.0 + q @ qd > min_margin:
            return q, qd


def random_tracking_state(rng, min_margin=0.05, rate=3.0):
    """Body attitude/rate and desired frame/rate/acceleration with the pointing inside the admissible set."""
    while True:
        Q, Qd = random_rotation(rng), random_rotation(rng)
        if 1.0 + (Q @ E3) @ (Qd @ E3) > min_margin:
            break
    return dict(Q=Q, w=rng.uniform(-rate, rate, 3), Qd=Qd,
                wd=rng.uniform(-rate, rate, 3), wd_dot=rng.uniform(-rate, rate, 3))


def random_rotations(rng, n):
    """``n`` Haar-distributed rotations from QR of Gaussian matrices."""
    Q, R = np.linalg.qr(rng.standard_normal((n, 3, 3)))
    Q = Q * np.sign(np.diagonal(R, axis1=1, axis2=2))[:, None, :]
    Q[np.linalg.det(Q) < 0, :, 0] *= -1.0
    return Q


def sandwich(rng, n=10_000, slack=1e-9):
    """``|e_q|^2 <= psi <= 2 |e_q|^2``; returns the largest violation (<= 0 means none)."""
    frames = random_rotations(rng, n)
    qd = random_unit(rng, n)
    worst = -np.inf
    for Q, b in zip(frames, qd):
        a = Q[:, 2]
        if 1.0 + a @ b <= 1e-6:
            continue
        p = ae.psi(a, b)
        e2 = float(np.sum(ae.e_q(a, b, Q) ** 2))
        worst = max(worst, e2 - p - slack, p - 2.0 * e2 - slack)
    return worst


def magnitude_identities(rng, n=1000):
    worst = 0.0
    for _ in range(n):
        q, qd = random_pair(rng, 1e-6)
        theta = np.arctan2(np.linalg.norm(np.cross(qd, q)), qd @ q)
        Q = random_rotation(rng)
        worst = max(worst,
                    abs(np.linalg.norm(ae.e_r(q, qd)) - np.sin(theta)),
                    abs(np.linalg.norm(ae.e_q(q, qd, Q)) - np.sin(theta / 2.0)))
    return worst


def _flows(s):
    """Curves through the sampled state with constant body rates."""
    def Q_at(t):
        return s["Q"] @ exp_map(t * s["w"])

    def Qd_at(t):
        return s["Qd"] @ exp_map(t * s["wd"])
    return Q_at, Qd_at


def psi_dot_fd(s, h=1e-6):
    """Central-difference minus analytic ``psi_dot`` at one state."""
    Q_at, Qd_at = _flows(s)

    def psi_t(t):
        return ae.psi(Q_at(t) @ E3, Qd_at(t) @ E3)
    fd = (psi_t(h) - psi_t(-h)) / (2 * h)
    q, qd = s["Q"] @ E3, s["Qd"] @ E3
    return abs(fd - ae.psi_dot(q, qd, s["Q"] @ s["w"], s["Qd"] @ s["wd"]))


def e_q_dot_fd(s, h=1e-6):
    Q_at, Qd_at = _flows(s)

    def eq_t(t):
        Q = Q_at(t)
        return ae.e_q(Q @ E3, Qd_at(t) @ E3, Q)
    fd = (eq_t(h) - eq_t(-h)) / (2 * h)
    q, qd = s["Q"] @ E3, s["Qd"] @ E3
    an = ae.e_q_dot(q, qd, s["Q"], s["Q"] @ s["w"], s["Qd"] @ s["wd"], s["w"])
    return float(np.max(np.abs(fd - an)))


def e_omega_dot_fd(s, p, u, h=1e-6):
    """Body rate follows the Euler equations to first order, desired rate its given derivative."""
    Q_at, Qd_at = _flows(s)
    alpha = angular_acceleration(s["w"], u, p)

    def ew_t(t):
        return ae.e_omega(s["w"] + t * alpha, s["wd"] + t * s["wd_dot"], Q_at(t), Qd_at(t))
    fd = (ew_t(h) - ew_t(-h)) / (2 * h)
    an = ae.e_omega_dot(BodyState(s["Q"], s["w"]), u, p, s["Qd"], s["wd"], s["wd_dot"])
    return float(np.max(np.abs(fd - an)))


def directional_derivative_fd(rng, eps=1e-6):
    """Variation of ``psi`` under ``q -> exp(eps xi) q`` against ``(Q e_q) . xi``."""
    Q = random_rotation(rng)
    while True:
        qd = random_unit(rng)
        if 1.0 + (Q @ E3) @ qd > 0.05:
            break
    xi = random_unit(rng)
    q = Q @ E3
    fd = (ae.psi(exp_map(eps * xi) @ q, qd) - ae.psi(exp_map(-eps * xi) @ q, qd)) / (2 * eps)
    return abs(fd - (Q @ ae.e_q(q, qd, Q)) @ xi)


def free_body_drift(rng, t_end=10.0, h=1e-3):
    """Relative drift of spatial angular momentum and kinetic energy, and orthonormality error."""
    p = RigidBodyParams(c=0.0)
    s0 = BodyState(random_rotation(rng), rng.uniform(-2.0, 2.0, 3))
    s1 = simulate(s0, zero_control, p, t_end, h)[-1]

    def momentum(s):
        return s.Q @ p.J @ s.omega_b

    def energy(s):
        return 0.5 * s.omega_b @ p.J @ s.omega_b
    dL = np.linalg.norm(momentum(s1) - momentum(s0)) / np.linalg.norm(momentum(s0))
    dE = abs(energy(s1) - energy(s0)) / energy(s0)
    ortho = np.linalg.norm(s1.Q.T @ s1.Q - np.eye(3))
    return dL, dE, ortho


def run_checks(seed=0, n_states=100):
    rng = np.random.default_rng(seed)
    p = RigidBodyParams()
    results = []

    def record(name, worst, tol):
        results.append(CheckResult(name, bool(worst <= tol), float(worst), tol))

    record("error-function sandwich |e_q|^2 <= psi <= 2|e_q|^2", sandwich(rng), 0.0)
    record("|e_r| = sin(theta), |e_q| = sin(theta/2)", magnitude_identities(rng), 1e-12)
    states = [random_tracking_state(rng) for _ in range(n_states)]
    record("psi_dot vs central difference", max(psi_dot_fd(s) for s in states), 1e-5)
    record("e_q_dot vs central difference", max(e_q_dot_fd(s) for s in states), 1e-5)
    record("e_omega_dot vs central difference",
           max(e_omega_dot_fd(s, p, rng.uniform(-1, 1, 3)) for s in states), 1e-5)
    record("directional derivative of psi", max(directional_derivative_fd(rng) for _ in range(n_states)), 1e-6)
    dL, dE, ortho = free_body_drift(rng)
    record("free body: spatial angular momentum drift (relative)", dL, 1e-8)
    record("free body: kinetic energy drift (relative)", dE, 1e-8)
    record("free body: |Q^T Q - I|", ortho, 1e-9)
    return results
