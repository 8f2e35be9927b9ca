"""Plain-text key=value configuration for the verification suites.

Recognized keys:

    seed.<suite>       integer RNG seed for one suite (default 0)
    tol.<check_id>     positive float overriding one check's tolerance
    points.<label>     integer point budget for one sampled cloud
    output_dir         directory receiving reports and cached point clouds

Lines starting with ``#`` and blank lines are ignored.  Unknown keys,
unknown suites, unknown check ids, and nonpositive tolerances are rejected
at load time.  The only environment hook is ISOSPEC_OUTPUT_DIR, which
overrides the configured output directory (and is itself overridden by an
explicit CLI flag).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from pathlib import Path

from .checks import DEFAULT_POINT_BUDGETS, SUITE_NAMES, known_check_ids

__all__ = ["ConfigError", "SuiteConfig", "default_config", "load_config"]


class ConfigError(ValueError):
    """A configuration file or override failed validation."""


@dataclass(frozen=True)
class SuiteConfig:
    seeds: dict[str, int] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=dict)
    points: dict[str, int] = field(default_factory=dict)
    output_dir: Path = Path("reports")

    def seed_for(self, suite: str) -> int:
        return self.seeds.get(suite, 0)

    def tolerance_for(self, check_id: str, default: float) -> float:
        return self.tolerances.get(check_id, default)

    def points_for(self, label: str, default: int) -> int:
        return self.points.get(label, default)

    def with_overrides(
        self,
        seed: int | None = None,
        points: int | None = None,
        output_dir: str | None = None,
    ) -> "SuiteConfig":
        """Apply CLI flags: one seed for every suite, the leaf point budget,
        and the report directory."""
        cfg = self
        if seed is not None:
            cfg = replace(cfg, seeds={name: seed for name in SUITE_NAMES})
        if points is not None:
            if points < 100:
                raise ConfigError("point budget must be at least 100")
            cfg = replace(cfg, points={**cfg.points, "m1-otfkm-11": points})
        if output_dir is not None:
            cfg = replace(cfg, output_dir=Path(output_dir))
        return cfg


def _validated(seeds, tolerances, points, output_dir) -> SuiteConfig:
    for suite in seeds:
        if suite not in SUITE_NAMES:
            raise ConfigError(f"unknown suite in seed.{suite}")
    valid_ids = known_check_ids()
    for check_id, tol in tolerances.items():
        if check_id not in valid_ids:
            raise ConfigError(f"unknown check id in tol.{check_id}")
        if not tol > 0:
            raise ConfigError(f"tolerance for {check_id} must be positive")
    for label, budget in points.items():
        if label not in DEFAULT_POINT_BUDGETS:
            raise ConfigError(f"unknown point budget label points.{label}")
        if budget < 100:
            raise ConfigError(f"point budget for {label} must be at least 100")
    return SuiteConfig(seeds, tolerances, points, Path(output_dir))


def default_config() -> SuiteConfig:
    return load_config(None)


def load_config(path: str | Path | None) -> SuiteConfig:
    """Parse a key=value file (or defaults when ``path`` is None)."""
    seeds: dict[str, int] = {}
    tolerances: dict[str, float] = {}
    points: dict[str, int] = {}
    output_dir = "reports"

    if path is not None:
        try:
            lines = Path(path).read_text().splitlines()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        for lineno, raw in enumerate(lines, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            try:
                if key.startswith("seed."):
                    seeds[key[len("seed."):]] = int(value)
                elif key.startswith("tol."):
                    tolerances[key[len("tol."):]] = float(value)
                elif key.startswith("points."):
                    points[key[len("points."):]] = int(value)
                elif key == "output_dir":
                    output_dir = value
                else:
                    raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            except ValueError as exc:
                if isinstance(exc, ConfigError):
                    raise
                raise ConfigError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc

    env_dir = os.environ.get("ISOSPEC_OUTPUT_DIR")
    if env_dir:
        output_dir = env_dir
    return _validated(seeds, tolerances, points, output_dir)
