"""Perturbed-model PDAV runs over a range of sliding gains.

For each gamma, reports the sliding-variable envelope in the final quarter of
the run next to the predicted radius |upsilon_j| J_jj / (gamma J_hat_jj), and
the same ratio sampled while the commanded motion is still steady (constant
spin, before the ramp-down).
"""
import argparse
from dataclasses import replace

import numpy as np

from pdav.controllers import PdavGains
from pdav.harness import ScenarioConfig, run_pdav


def ratio_at(rec, t):
    k = int(np.argmin(np.abs(rec.t - t)))
    s, b = np.abs(rec.vec("s")[k]), rec.vec("bound")[k]
    return float(s[2] / b[2]) if b[2] > 0 else np.inf


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gammas", type=float, nargs="+", default=[5.0, 10.0, 20.0, 40.0])
    ap.add_argument("--probe-times", type=float, nargs="+", default=[7.0, 9.0, 12.0])
    args = ap.parse_args()

    base = ScenarioConfig(perturbed=True)
    print(f"{'gamma':>6}{'tail max|s3|':>14}{'tail radius3':>14}{'tail ratio':>12}"
          + "".join(f"{f'ratio@{t:g}s':>12}" for t in args.probe_times) + f"{'max psi>2s':>12}")
    for g in args.gammas:
        rec, m = run_pdav(replace(base, pdav_gains=PdavGains(gamma=g)))
        tail = rec.t >= 0.75 * rec.t[-1]
        s3 = np.abs(rec["s3"][tail]).max()
        r3 = rec["bound3"][tail].max()
        print(f"{g:>6g}{s3:>14.3e}{r3:>14.3e}{s3 / r3:>12.1f}"
              + "".join(f"{ratio_at(rec, t):>12.2f}" for t in args.probe_times) + f"{m['max_psi_after']:>12.2e}")


if __name__ == "__main__":
    main()
