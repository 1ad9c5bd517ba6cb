"""Workbench configuration, stored as a small JSON document."""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import asdict, dataclass
from pathlib import Path

from . import gbcore
from .closure import set_closure_caps
from .errors import SkodaError

ENV_VAR = "SKODA_CONFIG"


@dataclass
class Config:
    field: object = "Q"
    order: object = "grevlex"
    max_pairs: int = 200_000
    max_degree: int = 40
    closure_max_N: int = 6
    closure_max_s: int = 8
    verbosity: int = 0
    workers: int = 1
    corpus: list = dataclasses.field(default_factory=list)

    def validate(self) -> "Config":
        for name in ("max_pairs", "max_degree", "closure_max_s", "workers"):
            if not isinstance(getattr(self, name), int) or getattr(self, name) < 1:
                raise SkodaError(f"config value {name} must be a positive integer")
        if not isinstance(self.closure_max_N, int) or self.closure_max_N < 0:
            raise SkodaError("config value closure_max_N must be a non-negative integer")
        return self

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "Config":
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise SkodaError(f"unknown config keys: {sorted(extra)}")
        return cls(**data).validate()

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2) + "\n")

    @classmethod
    def load(cls, path) -> "Config":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise SkodaError(f"cannot read config {path}: {exc}") from None
        return cls.from_json(data)

    def apply(self) -> None:
        """Install the caps process-wide."""
        gbcore.set_default_caps(gbcore.Caps(self.max_pairs, self.max_degree))
        set_closure_caps(self.closure_max_s, self.closure_max_N)


def resolve(path=None) -> Config:
    """Explicit path, else ``$SKODA_CONFIG``, else defaults."""
    path = path or os.environ.get(ENV_VAR)
    if path:
        return Config.load(path)
    return Config().validate()
