"""Geometric pointing-direction and angular-velocity tracking on the two-sphere."""
from .attitude_errors import DomainError
from .controllers import (BenchmarkGains, ModelEstimate, PdavGains, benchmark_control,
                          modified_benchmark_control, pdav_control)
from .harness import ScenarioConfig, run_pdav, run_stabilize_compare
from .rigid_body import BodyState, RigidBodyParams
from .trajectories import DesiredState, PdavTrajectory, desired_state

__all__ = [
    "BenchmarkGains", "BodyState", "DesiredState", "DomainError", "ModelEstimate", "PdavGains",
    "PdavTrajectory", "RigidBodyParams", "ScenarioConfig", "benchmark_control", "desired_state",
    "modified_benchmark_control", "pdav_control", "run_pdav", "run_stabilize_compare",
]
