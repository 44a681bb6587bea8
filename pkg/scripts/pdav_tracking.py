"""PDAV tracking maneuver with the true model and with 14% / 3% parameter errors."""
import argparse
from dataclasses import replace

from pdav.harness import ScenarioConfig, run_pdav, write_outputs

KEYS = ("leg1_time_to_psi", "max_psi_before", "max_psi_after", "lyapunov_slope", "peak_u",
        "final_e_omega", "max_abs_s_tail")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out/pdav")
    ap.add_argument("--coefficients", default="exact", choices=["exact", "printed"])
    args = ap.parse_args()

    base = ScenarioConfig(euler_coefficients=args.coefficients)
    rows = {}
    for perturbed in (False, True):
        rec, m = run_pdav(replace(base, perturbed=perturbed))
        write_outputs(f"{args.out}/{rec.label}", rec, m)
        rows[rec.label] = m
    print(f"{'metric':<20}" + "".join(f"{k:>18}" for k in rows))
    for key in KEYS:
        print(f"{key:<20}" + "".join(f"{m[key]:>18.4g}" for m in rows.values()))


if __name__ == "__main__":
    main()
