"""Desired pointing/spin trajectories.

The tracking maneuver is built from quintic polynomial pieces:

* spin rate about the body e3 axis: 0 -> 10 rad/s on [0, 5] s, held on
  [5, 10] s, 10 -> 0 on [10, 15] s;
* tilt angle ``theta`` about E1 and twist ``phi`` about body e3, in degrees:
  a step to theta = 179 deg at t = 0, then a smooth move to 90 deg / 90 deg
  over [1, 8] s.

The desired frame is ``euler313(phi, theta) @ rot3(spin_angle)`` =
``rot1(theta) @ rot3(phi + spin_angle)``, whose body rate is

    omega_d_b = [theta_dot cos a, -theta_dot sin a, a_dot],   a = phi + spin_angle

so ``Qd_dot = Qd hat(omega_d_b)`` holds exactly. The rate and its derivative
are evaluated in closed form from the polynomial derivatives.
"""
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .so3 import E3, euler313, frame_from_pointing, rot3


@dataclass(frozen=True)
class PolySegment:
    """``value(t) = sum(coeffs[i] * t**i)`` on ``[t_start, t_end]`` (absolute time)."""

    coeffs: tuple
    t_start: float
    t_end: float

    def __post_init__(self):
        if not self.t_start < self.t_end:
            raise ValueError(f"empty segment [{self.t_start}, {self.t_end}]")
        object.__setattr__(self, "coeffs", tuple(float(a) for a in self.coeffs))
        # Same polynomial in local time t - t_start; the absolute-time
        # coefficients cancel badly far from t = 0.
        local = P.Polynomial(self.coeffs)(P.Polynomial([self.t_start, 1.0]))
        c = local.coef
        object.__setattr__(self, "_local", (c, P.polyder(c), P.polyder(c, 2), P.polyint(c)))

    def integral(self, t):
        """Exact integral of the polynomial from ``t_start`` to ``t``."""
        return float(P.polyval(t - self.t_start, self._local[3]))


def poly_eval(seg, t, tol=1e-12):
    """Value and first two derivatives of ``seg`` at ``t``."""
    if not (seg.t_start - tol <= t <= seg.t_end + tol):
        raise ValueError(f"t = {t} outside segment [{seg.t_start}, {seg.t_end}]")
    c, d1, d2, _ = seg._local
    tau = t - seg.t_start
    return float(P.polyval(tau, c)), float(P.polyval(tau, d1)), float(P.polyval(tau, d2))


def rest_to_rest(t0, t1, a, b):
    """Coefficients (in absolute t) of the quintic from ``a`` to ``b`` with zero end rates and accelerations."""
    T = t1 - t0
    tau = np.array([-t0 / T, 1.0 / T])
    blend = P.polyadd(P.polysub(10 * P.polypow(tau, 3), 15 * P.polypow(tau, 4)), 6 * P.polypow(tau, 5))
    return tuple(P.polyadd([a], (b - a) * blend))


SPIN_UP = PolySegment((0.0, 0.0, 0.0, 0.8, -0.24, 0.0192), 0.0, 5.0)
SPIN_DOWN = PolySegment((5130.0, -2160.0, 360.0, -29.6, 1.2, -0.0192), 10.0, 15.0)
SPIN_PLATEAU = 10.0

# Tilt/twist coefficients as tabulated to four significant digits.
PHI_PRINTED = PolySegment((-3.2183, 10.28, -11.57, 5.19, -0.7229, 0.0321), 1.0, 8.0)
THETA_PRINTED = PolySegment((182.2, -10.17, 11.44, -5.137, 0.7149, -0.0318), 1.0, 8.0)
# The unrounded rest-to-rest quintics those digits come from.
PHI_EXACT = PolySegment(rest_to_rest(1.0, 8.0, 0.0, 90.0), 1.0, 8.0)
THETA_EXACT = PolySegment(rest_to_rest(1.0, 8.0, 179.0, 90.0), 1.0, 8.0)

EULER_SETS = {
    "exact": (THETA_EXACT, PHI_EXACT),
    "printed": (THETA_PRINTED, PHI_PRINTED),
}
THETA_STEP_DEG = 179.0


def spin_profile(t):
    """Return ``(omega3, omega3_dot, spin_angle)`` of the desired spin at time ``t`` (clamped to t >= 0)."""
    t = max(t, 0.0)
    if t <= SPIN_UP.t_end:
        w, wd, _ = poly_eval(SPIN_UP, t)
        return w, wd, SPIN_UP.integral(t)
    angle = SPIN_UP.integral(SPIN_UP.t_end)
    if t <= SPIN_DOWN.t_start:
        return SPIN_PLATEAU, 0.0, angle + SPIN_PLATEAU * (t - SPIN_UP.t_end)
    angle += SPIN_PLATEAU * (SPIN_DOWN.t_start - SPIN_UP.t_end)
    if t <= SPIN_DOWN.t_end:
        w, wd, _ = poly_eval(SPIN_DOWN, t)
        return w, wd, angle + SPIN_DOWN.integral(t)
    return 0.0, 0.0, angle + SPIN_DOWN.integral(SPIN_DOWN.t_end)


@dataclass(frozen=True)
class EulerSample:
    """Tilt ``theta`` and twist ``phi`` with first and second derivatives, radians."""

    theta: float
    theta_dot: float
    theta_ddot: float
    phi: float
    phi_dot: float
    phi_ddot: float


def euler_profile(t, coefficients="exact"):
    theta_seg, phi_seg = EULER_SETS[coefficients]
    if t < theta_seg.t_start:
        return EulerSample(np.radians(THETA_STEP_DEG), 0.0, 0.0, 0.0, 0.0, 0.0)
    te = min(t, theta_seg.t_end)
    th = np.radians(poly_eval(theta_seg, te))
    ph = np.radians(poly_eval(phi_seg, te))
    if t > theta_seg.t_end:
        return EulerSample(th[0], 0.0, 0.0, ph[0], 0.0, 0.0)
    return EulerSample(*th, *ph)


@dataclass(frozen=True)
class DesiredState:
    q_d: np.ndarray
    Q_d: np.ndarray
    omega_d_b: np.ndarray
    omega_d_dot_b: np.ndarray

    def __post_init__(self):
        if np.linalg.norm(self.Q_d @ E3 - self.q_d) > 1e-9:
            raise ValueError("q_d does not match Q_d e3")

    @property
    def omega_d(self):
        """Desired rate in the inertial frame."""
        return self.Q_d @ self.omega_d_b


class PdavTrajectory:
    """Combined tilt/twist/spin maneuver.

    Evaluations are memoized per time value since the integrator revisits
    stage times.
    """

    def __init__(self, coefficients="exact"):
        if coefficients not in EULER_SETS:
            raise ValueError(f"unknown coefficient set {coefficients!r}; choose from {sorted(EULER_SETS)}")
        self.coefficients = coefficients
        self._cache = {}

    def frame(self, t):
        e = euler_profile(max(t, 0.0), self.coefficients)
        return euler313(e.phi, e.theta) @ rot3(spin_profile(t)[2])

    def _evaluate(self, t):
        e = euler_profile(max(t, 0.0), self.coefficients)
        w3, w3_dot, spin = spin_profile(t)
        a = e.phi + spin
        a_dot = e.phi_dot + w3
        a_ddot = e.phi_ddot + w3_dot
        ca, sa = np.cos(a), np.sin(a)
        Qd = euler313(a, e.theta)
        w = np.array([e.theta_dot * ca, -e.theta_dot * sa, a_dot])
        w_dot = np.array([
            e.theta_ddot * ca - e.theta_dot * a_dot * sa,
            -e.theta_ddot * sa - e.theta_dot * a_dot * ca,
            a_ddot,
        ])
        return DesiredState(Qd @ E3, Qd, w, w_dot)

    def __call__(self, t):
        ds = self._cache.get(t)
        if ds is None:
            if len(self._cache) > 64:
                self._cache.clear()
            ds = self._cache[t] = self._evaluate(t)
        return ds


def desired_state(t, coefficients="exact"):
    return PdavTrajectory(coefficients)(t)


def stabilization_targets(switch_time=10.0):
    """The two fixed setpoints of the stabilization comparison as ``(q_d, t_start)`` pairs.

    The first is e3 tilted 179 deg about E1; the second tilts back to 90 deg,
    i.e. ``[0, -1, 0]``.
    """
    return [
        (euler313(0.0, np.radians(179.0)) @ E3, 0.0),
        (euler313(0.0, np.radians(90.0)) @ E3, float(switch_time)),
    ]


class SetpointSchedule:
    """Piecewise-constant pointing targets at rest, as a desired-state source."""

    def __init__(self, targets):
        self.targets = [(np.asarray(q, dtype=float), float(t0)) for q, t0 in targets]
        self._states = [
            DesiredState(frame_from_pointing(q) @ E3, frame_from_pointing(q), np.zeros(3), np.zeros(3))
            for q, _ in self.targets
        ]

    def leg(self, t):
        i = 0
        for k, (_, t0) in enumerate(self.targets):
            if t >= t0:
                i = k
        return i

    def __call__(self, t):
        return self._states[self.leg(t)]
