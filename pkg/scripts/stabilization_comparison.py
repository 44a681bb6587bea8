"""Benchmark vs modified stabilizer through the 179 deg and 89 deg setpoints.

Prints settling times per leg and writes both time series.
"""
import argparse

from pdav.harness import ScenarioConfig, run_stabilize_compare, write_outputs


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out/stabilize-compare")
    ap.add_argument("--switch-time", type=float, default=10.0)
    args = ap.parse_args()

    cfg = ScenarioConfig(kind="stabilize-compare", switch_time=args.switch_time)
    recs, metrics = run_stabilize_compare(cfg)
    print(f"{'controller':<12}{'leg 1 [s]':>12}{'leg 2 [s]':>12}{'peak |u|':>12}")
    for rec, m in zip(recs, metrics):
        write_outputs(args.out, rec, m, prefix=f"{rec.label}_")
        print(f"{rec.label:<12}{m['leg1_time_to_psi']:>12.3f}{m['leg2_time_to_psi'] - cfg.switch_time:>12.3f}"
              f"{m['peak_u']:>12.3f}")
    print(f"(leg 2 measured from the switch at {cfg.switch_time:g} s; psi < 0.01 settling)")


if __name__ == "__main__":
    main()
