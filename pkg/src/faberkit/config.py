"""Run configuration for the command-line suites."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigurationError
from .geometry import parse_complex

SUITES = ("auto", "convex", "theorem-a", "theorem-b", "corollary")


@dataclass(frozen=True)
class MatrixSpec:
    path: str | None = None
    family: str = "random-dense"
    size: int = 8
    seed: int = 0
    count: int = 1
    shift: complex = 0j
    scale: float = 1.0

    @classmethod
    def from_dict(cls, d: dict) -> "MatrixSpec":
        if not isinstance(d, dict):
            raise ConfigurationError("'matrix' must be an object")
        try:
            return cls(
                path=d.get("path"),
                family=str(d.get("family", "random-dense")),
                size=int(d.get("size", 8)),
                seed=int(d.get("seed", 0)),
                count=int(d.get("count", 1)),
                shift=parse_complex(d.get("shift", 0.0)),
                scale=float(d.get("scale", 1.0)),
            )
        except (TypeError, ValueError) as exc:
            raise ConfigurationError(f"bad matrix spec: {exc}") from exc


@dataclass(frozen=True)
class RunConfig:
    domain: dict
    matrix: MatrixSpec = field(default_factory=MatrixSpec)
    suite: str = "auto"
    n_range: tuple = (1, 10)
    nodes: int = 1024
    n_angles: int = 720
    tolerance: float = 1e-6
    out: str = "out"

    def __post_init__(self):
        lo, hi = self.n_range
        if not (0 <= lo <= hi):
            raise ConfigurationError(f"n_range must be ascending and nonnegative, got {self.n_range}")
        if not self.tolerance > 0:
            raise ConfigurationError("tolerance must be positive")
        if self.suite not in SUITES:
            raise ConfigurationError(f"suite must be one of {SUITES}")
        if self.nodes < 64:
            raise ConfigurationError("nodes must be >= 64")

    @property
    def degrees(self):
        return list(range(self.n_range[0], self.n_range[1] + 1))

    @classmethod
    def from_dict(cls, d: dict, **overrides) -> "RunConfig":
        if not isinstance(d, dict):
            raise ConfigurationError("config must be a JSON object")
        if "domain" not in d:
            raise ConfigurationError("config needs a 'domain' object")
        n_range = d.get("n_range", [1, 10])
        if not (isinstance(n_range, (list, tuple)) and len(n_range) == 2):
            raise ConfigurationError("n_range must be [lo, hi]")
        kwargs = dict(
            domain=d["domain"],
            matrix=MatrixSpec.from_dict(d.get("matrix", {})),
            suite=str(d.get("suite", "auto")),
            n_range=(int(n_range[0]), int(n_range[1])),
            nodes=int(d.get("nodes", 1024)),
            n_angles=int(d.get("n_angles", 720)),
            tolerance=float(d.get("tolerance", 1e-6)),
            out=str(d.get("out", "out")),
        )
        kwargs.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kwargs)


def load_config(path, **overrides) -> RunConfig:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"malformed JSON in {path}: {exc}") from exc
    return RunConfig.from_dict(data, **overrides)
