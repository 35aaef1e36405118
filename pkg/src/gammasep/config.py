"""Run configuration: a flat key=value file plus flag overrides.

Every random seed is an explicit field, so a persisted config pins the
whole run; the config hash embedded in output files covers all fields
except the output directory.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, fields
from pathlib import Path


class ConfigError(ValueError):
    """Bad configuration file or value."""


@dataclass
class RunConfig:
    input_path: str = "data/magic04.data"
    output_dir: str = "runs/reproduction"
    sentinel_policy: str = "both"
    outlier_rule: str = "three-sigma"
    iqr_multiplier: float = 1.5
    sigma_multiplier: float = 3.0
    n_folds: int = 10
    fold_seed: int = 1301
    ica_seed: int = 77
    rfe_seed: int = 19
    mc_seed: int = 4025
    mc_draws: int = 1_000_000
    variance_target: float = 0.95
    n_features: int = 5
    alpha: float = 0.05
    per_fold_transform: bool = False
    force_anova: bool = False
    workers: int = 1
    tolerance_overrides: dict = field(default_factory=dict)

    def seeds(self):
        return {"fold_seed": self.fold_seed, "ica_seed": self.ica_seed,
                "rfe_seed": self.rfe_seed, "mc_seed": self.mc_seed}

    def to_text(self):
        lines = []
        for f in fields(self):
            if f.name in ("tolerance_overrides", "output_dir"):
                continue
            value = getattr(self, f.name)
            if isinstance(value, bool):
                value = "true" if value else "false"
            lines.append(f"{f.name}={value}")
        for key in sorted(self.tolerance_overrides):
            lines.append(f"tolerance.{key}={self.tolerance_overrides[key]}")
        return "\n".join(lines) + "\n"

    def config_hash(self):
        return hashlib.sha256(self.to_text().encode("ascii")).hexdigest()[:16]

    def stamp(self):
        """One-line provenance header embedded in every output file."""
        seeds = " ".join(f"{k}={v}" for k, v in self.seeds().items())
        return f"gammasep config={self.config_hash()} {seeds}"


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}
_BOOL_FIELDS = {"per_fold_transform", "force_anova"}
_INT_FIELDS = {"n_folds", "fold_seed", "ica_seed", "rfe_seed", "mc_seed",
               "mc_draws", "n_features", "workers"}
_FLOAT_FIELDS = {"iqr_multiplier", "sigma_multiplier", "variance_target",
                 "alpha"}
_STR_FIELDS = {"input_path", "output_dir", "sentinel_policy", "outlier_rule"}


def _coerce(key, raw):
    if key in _BOOL_FIELDS:
        if raw not in ("true", "false"):
            raise ConfigError(f"{key} must be true or false, got {raw!r}")
        return raw == "true"
    try:
        if key in _INT_FIELDS:
            return int(raw)
        if key in _FLOAT_FIELDS:
            return float(raw)
    except ValueError:
        raise ConfigError(f"bad numeric value for {key}: {raw!r}") from None
    return raw


def load_config(path):
    """Parse a flat key=value file; '#' starts a comment line."""
    config = RunConfig()
    for line_no, line in enumerate(
            Path(path).read_text(encoding="ascii").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{line_no}: expected key=value")
        key, _, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if key.startswith("tolerance."):
            try:
                config.tolerance_overrides[key[len("tolerance."):]] = float(raw)
            except ValueError:
                raise ConfigError(
                    f"{path}:{line_no}: bad tolerance value {raw!r}") from None
            continue
        if key not in _FIELD_TYPES or key == "tolerance_overrides":
            raise ConfigError(f"{path}:{line_no}: unknown key {key!r}")
        setattr(config, key, _coerce(key, raw))
    validate_config(config)
    return config


def validate_config(config):
    if config.sentinel_policy not in ("empty-cell", "value-99999", "both"):
        raise ConfigError(f"bad sentinel_policy {config.sentinel_policy!r}")
    if config.outlier_rule not in ("iqr-fence", "three-sigma"):
        raise ConfigError(f"bad outlier_rule {config.outlier_rule!r}")
    if config.n_folds < 2:
        raise ConfigError("n_folds must be at least 2")
    if not 0.0 < config.variance_target <= 1.0:
        raise ConfigError("variance_target must be in (0, 1]")
    if not 1 <= config.n_features <= 10:
        raise ConfigError("n_features must be in [1, 10]")
    if config.workers < 1:
        raise ConfigError("workers must be at least 1")
    if config.mc_draws < 1000:
        raise ConfigError("mc_draws must be at least 1000")
    return config
