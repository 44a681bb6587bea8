"""Closed-loop scenario runs, time-series recording and run metrics."""
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import attitude_errors as ae
from .controllers import (BenchmarkGains, ModelEstimate, PdavGains, benchmark_control,
                          modified_benchmark_control, pdav_control, ultimate_bound, upsilon)
from .rigid_body import DEFAULT_STEP, BodyState, RigidBodyParams, check_step, pointing, step
from .trajectories import EULER_SETS, PdavTrajectory, SetpointSchedule, stabilization_targets

KINDS = ("stabilize-compare", "pdav")
V_FLOOR = 1e-14


def _vec(name):
    return [f"{name}{i}" for i in (1, 2, 3)]


def _mat(name):
    return [f"{name}{i}{j}" for i in (1, 2, 3) for j in (1, 2, 3)]


COLUMNS = (["t"] + _vec("q") + _vec("q_d") + ["psi", "psi_r"] + _vec("e_q") + _vec("e_omega")
           + _vec("omega") + _vec("omega_d") + _vec("u") + _vec("s") + ["V"] + _vec("upsilon")
           + _vec("bound") + _vec("omega_d_dot") + _mat("Q") + _mat("Q_d"))


@dataclass(frozen=True)
class ScenarioConfig:
    kind: str = "pdav"
    params: RigidBodyParams = field(default_factory=RigidBodyParams)
    perturbed: bool = False
    j_error: float = 0.14
    c_error: float = 0.03
    pdav_gains: PdavGains = field(default_factory=PdavGains)
    benchmark_gains: BenchmarkGains = field(default_factory=BenchmarkGains)
    h: float = DEFAULT_STEP
    t_end: float = 20.0
    omega0: tuple = (0.0, 0.3, 0.0)
    switch_time: float = 10.0
    euler_coefficients: str = "exact"
    stride: int = 1
    psi_after: float = 2.0
    lyapunov_window: tuple = (0.1, 0.9)
    out: str = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        check_step(self.h)
        if not self.t_end > 0:
            raise ValueError(f"t_end must be positive, got {self.t_end}")
        if int(self.stride) != self.stride or self.stride < 1:
            raise ValueError(f"stride must be a positive integer, got {self.stride}")
        if self.euler_coefficients not in EULER_SETS:
            raise ValueError(f"euler_coefficients must be one of {sorted(EULER_SETS)}")
        if not self.switch_time > 0:
            raise ValueError(f"switch_time must be positive, got {self.switch_time}")
        if self.j_error <= -1.0 or self.c_error < -1.0:
            raise ValueError("perturbation factors must keep J_hat positive and c_hat >= 0")
        t0, t1 = self.lyapunov_window
        if not t0 < t1:
            raise ValueError(f"lyapunov_window must be increasing, got {self.lyapunov_window}")

    @property
    def estimates(self):
        if self.perturbed:
            return ModelEstimate.perturbed(self.params, self.j_error, self.c_error)
        return ModelEstimate.exact(self.params)

    @property
    def initial_state(self):
        return BodyState(np.eye(3), np.array(self.omega0, dtype=float))


class TimeSeriesRecord:
    """Rows of :data:`COLUMNS`, one per retained step."""

    def __init__(self, data, label=""):
        self.data = np.asarray(data, dtype=float)
        self.label = label

    def __len__(self):
        return len(self.data)

    def __getitem__(self, name):
        return self.data[:, COLUMNS.index(name)]

    def vec(self, name):
        return np.stack([self[c] for c in _vec(name)], axis=1)

    def mat(self, name):
        return np.stack([self[c] for c in _mat(name)], axis=1).reshape(-1, 3, 3)

    @property
    def t(self):
        return self["t"]

    def to_csv(self, path):
        np.savetxt(path, self.data, fmt="%.17g", delimiter=",", header=",".join(COLUMNS), comments="")

    @classmethod
    def from_csv(cls, path):
        with open(path) as fh:
            header = fh.readline().strip().split(",")
        if header != COLUMNS:
            raise ValueError(f"{path}: unexpected CSV header")
        return cls(np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2))


def diagnostics_row(t, state, desired, u, cfg, est):
    """One record row; every diagnostic is computed from ``state`` and ``desired``."""
    p, gains = cfg.params, cfg.pdav_gains
    q = pointing(state)
    diag = pdav_control(state, desired, gains, est)
    ups = upsilon(state, desired, gains, est, p)
    bound = [ultimate_bound(ups[j], p.J[j, j], est.J_hat[j, j], gains.gamma) for j in range(3)]
    return np.concatenate([
        [t], q, desired.q_d, [diag.psi, ae.psi_r(q, desired.q_d)], diag.e_q_b, diag.e_omega_b,
        state.omega_b, desired.omega_d_b, u, diag.s, [diag.V], ups, bound,
        desired.omega_d_dot_b, state.Q.ravel(), desired.Q_d.ravel(),
    ])


def _run(cfg, desired_fn, control_fn, est, label):
    """Integrate the closed loop and record every ``cfg.stride``-th step.

    Raises:
        DomainError: with ``.t`` set, if the pointing direction reaches the
            antipode of the target.
    """
    p, h = cfg.params, cfg.h
    n = int(round(cfg.t_end / h))
    state = cfg.initial_state
    rows = []
    t = 0.0
    try:
        for k in range(n + 1):
            t = k * h
            if k % cfg.stride == 0 or k == n:
                desired = desired_fn(t)
                rows.append(diagnostics_row(t, state, desired, control_fn(t, state), cfg, est))
            if k < n:
                state = step(state, control_fn, p, t, h)
    except ae.DomainError as exc:
        raise ae.DomainError(f"{label}: pointing left the admissible set near t = {t:.4f} s ({exc})",
                             t=t) from exc
    return TimeSeriesRecord(np.array(rows), label)


def run_pdav(cfg, use_estimates=None):
    """Closed loop under the PDAV law tracking the combined tilt/twist/spin maneuver."""
    if use_estimates is not None:
        cfg = replace(cfg, perturbed=bool(use_estimates))
    est = cfg.estimates
    traj = PdavTrajectory(cfg.euler_coefficients)

    def control(t, state):
        return pdav_control(state, traj(t), cfg.pdav_gains, est).u

    label = "pdav-perturbed" if cfg.perturbed else "pdav"
    rec = _run(cfg, traj, control, est, label)
    return rec, compute_metrics(rec, cfg)


def run_stabilize_compare(cfg):
    """Both benchmark stabilizers through the two fixed setpoints, true model in both.

    Returns ``((rec_benchmark, rec_modified), (metrics_benchmark, metrics_modified))``.
    """
    cfg = replace(cfg, perturbed=False)
    est = cfg.estimates
    schedule = SetpointSchedule(stabilization_targets(cfg.switch_time))
    records, metrics = [], []
    for label, law in (("benchmark", benchmark_control), ("modified", modified_benchmark_control)):
        def control(t, state, law=law):
            return law(state, schedule(t).q_d, cfg.benchmark_gains, cfg.params)
        rec = _run(cfg, schedule, control, est, label)
        records.append(rec)
        metrics.append(compute_metrics(rec, cfg, legs=[t0 for _, t0 in schedule.targets]))
    return tuple(records), tuple(metrics)


def time_to_threshold(t, values, threshold, t_start=-math.inf, t_end=math.inf):
    """First sample time in ``[t_start, t_end)`` after which ``values`` stays below ``threshold``.

    Returns ``inf`` if the last sample of the window is not below threshold.
    """
    t = np.asarray(t)
    values = np.asarray(values)
    mask = (t >= t_start) & (t < t_end)
    tw, vw = t[mask], values[mask]
    if len(tw) == 0:
        return math.inf
    above = np.nonzero(vw >= threshold)[0]
    if len(above) == 0:
        return float(tw[0])
    last = above[-1]
    if last == len(tw) - 1:
        return math.inf
    return float(tw[last + 1])


def fit_lyapunov_rate(t, V, t0, t1):
    """Least-squares slope of ``ln V`` against ``t`` on ``[t0, t1]``.

    Raises:
        ValueError: if the window has fewer than two samples or ``V`` drops
            to ``V_FLOOR`` or below inside it.
    """
    t = np.asarray(t)
    V = np.asarray(V)
    mask = (t >= t0) & (t <= t1)
    if mask.sum() < 2:
        raise ValueError(f"window [{t0}, {t1}] holds fewer than two samples")
    if np.any(V[mask] <= V_FLOOR):
        raise ValueError(f"V underflows {V_FLOOR:g} inside [{t0}, {t1}]")
    slope, _ = np.polyfit(t[mask], np.log(V[mask]), 1)
    return float(slope)


@dataclass
class RunMetrics:
    values: dict

    def __getitem__(self, key):
        return self.values[key]

    def to_text(self):
        return "".join(f"{k} = {v!r}\n" for k, v in self.values.items())

    def write(self, path):
        Path(path).write_text(self.to_text())


def compute_metrics(rec, cfg, legs=(0.0,), threshold=0.01):
    t = rec.t
    psi = rec["psi"]
    out = {"label": rec.label}
    bounds = list(legs) + [math.inf]
    for i in range(len(legs)):
        out[f"leg{i + 1}_time_to_psi"] = time_to_threshold(t, psi, threshold, bounds[i], bounds[i + 1])
    after = t >= cfg.psi_after
    out["max_psi_after"] = float(psi[after].max()) if after.any() else math.nan
    out["max_psi_before"] = float(psi[~after].max()) if (~after).any() else math.nan
    try:
        out["lyapunov_slope"] = fit_lyapunov_rate(t, rec["V"], *cfg.lyapunov_window)
    except ValueError:
        out["lyapunov_slope"] = math.nan
    out["peak_u"] = float(np.linalg.norm(rec.vec("u"), axis=1).max())
    out["final_e_omega"] = float(np.linalg.norm(rec.vec("e_omega")[-1]))
    out["max_abs_s_tail"] = float(np.abs(rec.vec("s")[t >= 0.75 * t[-1]]).max())
    return RunMetrics(out)


def write_outputs(out_dir, rec, metrics, prefix=""):
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rec.to_csv(out_dir / f"{prefix}timeseries.csv")
    metrics.write(out_dir / f"{prefix}metrics.txt")
