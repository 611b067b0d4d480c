"""Working precision shared by the character, Birkhoff and matrix layers."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, replace

CONFIG_ENV = "TREERENORM_CONFIG"


@dataclass(frozen=True)
class Config:
    """``max_degree`` bounds tree degrees (and pole orders), ``z_hi`` the
    ``z``-order targeted in character values, ``tau_cap`` the TAU-degree kept
    in flow computations."""

    max_degree: int = 5
    z_hi: int = 6
    tau_cap: int = 4

    def __post_init__(self):
        if self.max_degree < 1:
            raise ValueError("max_degree must be >= 1")
        if self.z_hi < self.max_degree:
            raise ValueError("z_hi must be >= max_degree")
        if self.tau_cap < 2:
            raise ValueError("tau_cap must be >= 2")

    @property
    def pole_bound(self) -> int:
        return self.max_degree

    @property
    def work_hi(self) -> int:
        # primitive series carry extra orders so products of up to
        # max_degree simple poles still reach z_hi
        return self.z_hi + self.max_degree

    def replace(self, **kw) -> Config:
        return replace(self, **kw)

    def to_json(self) -> dict:
        return asdict(self)


DEFAULT = Config()


def load_config(path: str | None = None) -> Config:
    """Config from a JSON file (explicit path or ``$TREERENORM_CONFIG``)."""
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return DEFAULT
    with open(path) as fh:
        return Config(**json.load(fh))
