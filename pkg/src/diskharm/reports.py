"""Report records shared by the norm and verification layers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field


def encode_float(x):
    """JSON-safe float: infinities become the string 'inf' / '-inf'."""
    if x is None:
        return None
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def decode_p(p):
    """Accept 'inf' (string) or a number for an exponent."""
    if isinstance(p, str):
        if p.strip().lower() in {"inf", "infinity", "oo"}:
            return math.inf
        return float(p)
    return float(p)


@dataclass
class NormReport:
    """Outcome of a norm computation.

    ``value`` is the computed number (``math.inf`` together with
    ``infinite=True`` marks a detected blow-up); ``error_estimate`` bounds
    the discretization error; ``grid`` records the discretization used;
    ``extrapolated`` carries a Richardson-style limit when the radial trend
    certifies one.
    """

    kind: str
    p: float
    value: float
    error_estimate: float
    grid: dict = field(default_factory=dict)
    infinite: bool = False
    extrapolated: float | None = None
    notes: tuple = ()
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.error_estimate < 0:
            raise ValueError("error estimate must be nonnegative")
        if not self.infinite and not math.isfinite(self.value):
            raise ValueError("finite report with non-finite value")

    @property
    def best(self) -> float:
        """Preferred scalar: the certified extrapolation when available."""
        if self.infinite:
            return math.inf
        return self.value if self.extrapolated is None else self.extrapolated

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "p": encode_float(self.p),
            "value": encode_float(None if self.infinite else self.value),
            "infinite": self.infinite,
            "error_estimate": encode_float(self.error_estimate),
            "extrapolated": encode_float(self.extrapolated),
            "grid": self.grid,
            "notes": list(self.notes),
            "diagnostics": self.diagnostics,
        }
