"""Run configuration shared by the CLI and the service layer."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .errors import ConfigError


@dataclass
class RunConfig:
    """Knobs for a reproducible run; the default seed pins determinism.

    ``angular_base`` is the level-1 angular count of the polar grids used
    by the ellipticity sweeps (the count doubles with each level).
    """

    truncation: int = 1 << 16
    tolerance: float = 1e-9
    levels: int = 12
    angular_base: int = 64
    seed: int = 42
    out: str | None = None
    format: str = "json"

    def __post_init__(self):
        if self.truncation <= 0 or self.levels <= 0 or self.angular_base <= 0:
            raise ConfigError("truncation, levels and angular_base must be positive")
        if not self.tolerance > 0:
            raise ConfigError("tolerance must be positive")
        if self.seed < 0:
            raise ConfigError("seed must be nonnegative")
        if self.format not in {"json", "csv"}:
            raise ConfigError(f"unknown output format {self.format!r}")

    def to_dict(self) -> dict:
        return asdict(self)
