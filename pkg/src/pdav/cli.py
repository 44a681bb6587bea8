"""Command-line entry point.

    pdav pdav [--perturbed] [--out DIR] ...
    pdav stabilize-compare [--out DIR] ...
    pdav check [--seed N]

Exit codes: 0 success, 1 configuration error, 2 run aborted because the
pointing direction reached the antipode of its target.
"""
import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from .attitude_errors import DomainError
from .config import ConfigError, load_config
from .harness import ScenarioConfig, run_pdav, run_stabilize_compare, write_outputs

log = logging.getLogger("pdav")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


def build_parser():
    parser = _Parser(prog="pdav", description="Pointing-direction and spin tracking simulations on the two-sphere.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_ in (("pdav", "PDAV tracking maneuver"),
                        ("stabilize-compare", "benchmark vs modified stabilizer through two setpoints"),
                        ("check", "run the built-in invariant suite")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", type=Path, help="flat key = value scenario file")
        p.add_argument("--dt", type=float, help="integration step [s], 0 < dt <= 0.01")
        p.add_argument("--t-end", type=float, help="run length [s]")
        p.add_argument("--perturbed", action=argparse.BooleanOptionalAction, default=None,
                       help="controller uses J_hat = (1 + j_error) J, c_hat = (1 + c_error) c")
        p.add_argument("--stride", type=int, help="record every N-th step")
        p.add_argument("--out", type=Path, help="output directory")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def resolve_config(args):
    """Defaults, then the config file, then command-line flags."""
    kind = args.command if args.command != "check" else "pdav"
    cfg = load_config(args.config, ScenarioConfig(kind=kind)) if args.config else ScenarioConfig(kind=kind)
    flags = {}
    if args.dt is not None:
        flags["h"] = args.dt
    if args.t_end is not None:
        flags["t_end"] = args.t_end
    if args.perturbed is not None:
        flags["perturbed"] = args.perturbed
    if args.stride is not None:
        flags["stride"] = args.stride
    if args.out is not None:
        flags["out"] = str(args.out)
    try:
        return replace(cfg, **flags)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _prepare_out(cfg):
    out = Path(cfg.out or f"out/{cfg.kind}")
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {out}: {exc.strerror}") from None
    probe = out / ".write-test"
    try:
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise ConfigError(f"output directory {out} is not writable: {exc.strerror}") from None
    return out


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    try:
        args = build_parser().parse_args(argv)
        if args.verbose:
            log.setLevel(logging.INFO)
        if args.command == "check":
            from .checks import run_checks
            results = run_checks(seed=args.seed)
            for r in results:
                print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}")
            return 0 if all(r.passed for r in results) else 1
        cfg = resolve_config(args)
        out = _prepare_out(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    try:
        if cfg.kind == "pdav":
            rec, metrics = run_pdav(cfg)
            write_outputs(out, rec, metrics)
        else:
            recs, metrics = run_stabilize_compare(cfg)
            for rec, m in zip(recs, metrics):
                write_outputs(out, rec, m, prefix=f"{rec.label}_")
    except DomainError as exc:
        print(f"aborted at t = {exc.t:.4f} s: {exc}", file=sys.stderr)
        return 2
    log.info("wrote results to %s", out)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
