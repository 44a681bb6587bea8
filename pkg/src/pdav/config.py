"""Flat ``key = value`` scenario files.

Unspecified keys keep the defaults of :class:`~pdav.harness.ScenarioConfig`,
which reproduce the published parameter set. Example::

    # perturbed run with a stiffer sliding-surface gain
    perturbed = true
    gamma = 20
    j_diag = 0.0294, 0.0305, 0.0495
"""
from dataclasses import replace

from .controllers import BenchmarkGains, PdavGains
from .harness import ScenarioConfig
from .rigid_body import RigidBodyParams


class ConfigError(ValueError):
    pass


def _floats(n):
    def parse(text):
        vals = [float(x) for x in text.replace(";", ",").split(",") if x.strip()]
        if len(vals) != n:
            raise ValueError(f"expected {n} comma-separated numbers, got {len(vals)}")
        return tuple(vals)
    return parse


def _bool(text):
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _int(text):
    return int(text)


def _float(text):
    return float(text)


def _word(text):
    return text.strip()


PARSERS = {
    "j_diag": _floats(3), "c": _float, "tau": _floats(3),
    "lambda": _float, "eta": _float, "gamma": _float,
    "k_r": _floats(3), "k_omega": _floats(3),
    "perturbed": _bool, "j_error": _float, "c_error": _float,
    "dt": _float, "t_end": _float, "stride": _int, "switch_time": _float,
    "omega0": _floats(3), "euler_coefficients": _word,
    "psi_after": _float, "lyapunov_window": _floats(2),
}


def apply_overrides(cfg, values):
    """Return ``cfg`` with the parsed ``values`` (config-file keys) applied.

    Raises:
        ValueError: from the invariant checks of the rebuilt dataclasses.
    """
    p, g, b = cfg.params, cfg.pdav_gains, cfg.benchmark_gains
    params = RigidBodyParams(values.get("j_diag", p.J), values.get("c", p.c), values.get("tau", p.tau))
    gains = PdavGains(values.get("lambda", g.Lambda), values.get("eta", g.eta), values.get("gamma", g.gamma))
    bench = BenchmarkGains(values.get("k_r", b.K_r), values.get("k_omega", b.K_omega))
    direct = {"perturbed", "j_error", "c_error", "t_end", "stride", "switch_time", "omega0",
              "euler_coefficients", "psi_after", "lyapunov_window"}
    kw = {k: v for k, v in values.items() if k in direct}
    if "dt" in values:
        kw["h"] = values["dt"]
    return replace(cfg, params=params, pdav_gains=gains, benchmark_gains=bench, **kw)


def parse_config_text(text, source="<config>"):
    """Parse file contents into ``{key: (value, line_number)}``."""
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in PARSERS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            entries[key] = (PARSERS[key](value), lineno)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: malformed value for {key!r}: {exc}") from None
    return entries


def config_from_entries(entries, base=None, source="<config>"):
    base = base or ScenarioConfig()
    try:
        return apply_overrides(base, {k: v for k, (v, _) in entries.items()})
    except ValueError as exc:
        # blame the first line that fails on its own
        for key, (value, lineno) in sorted(entries.items(), key=lambda kv: kv[1][1]):
            try:
                apply_overrides(base, {key: value})
            except ValueError as single:
                raise ConfigError(f"{source}:{lineno}: {key}: {single}") from None
        raise ConfigError(f"{source}: inconsistent settings: {exc}") from None


def load_config(path, base=None):
    """Read a scenario file into a :class:`ScenarioConfig`.

    Raises:
        ConfigError: on unreadable files, unknown keys, malformed values or
            invariant violations; the message names the offending line.
    """
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return config_from_entries(parse_config_text(text, str(path)), base, str(path))
