import os
from dataclasses import dataclass, field, fields, replace
from typing import Dict, List, Optional, Tuple

import yaml

from star_src.constants import *
from star_src.exception import StarParamsError, SuiteConfigError


@dataclass(frozen=True)
class SamplingBox:
    """Half-widths of the uniform sampling boxes a in [-a_box, a_box], l in [-l_box, l_box]."""
    a_box: float = DEFAULT_A_BOX
    l_box: float = DEFAULT_L_BOX


@dataclass(frozen=True)
class StarParams:
    """
    Settings of one deformed-product evaluation.

    method selects the path: "conjugation" (tau(T u *0 T v)), "kernel"
    (direct quadrature of the oscillatory kernel) or "flat" (the twist forced
    to the identity, i.e. the Weyl product). oversample is the centred padding
    factor applied to the l-axes by the conjugation path.
    """
    hbar: float = DEFAULT_HBAR
    method: str = DEFAULT_METHOD
    interpolation: str = DEFAULT_INTERPOLATION
    oversample: int = DEFAULT_OVERSAMPLE
    truncation_order: int = DEFAULT_TRUNCATION_ORDER

    def __post_init__(self):
        if not self.hbar > 0:
            raise StarParamsError(f"hbar must be positive, got {self.hbar}.")
        if self.method not in STAR_METHODS:
            raise StarParamsError(f"method must be one of {STAR_METHODS}, got '{self.method}'.")
        if self.interpolation not in INTERPOLATIONS:
            raise StarParamsError(f"interpolation must be one of {INTERPOLATIONS}, got '{self.interpolation}'.")
        oversample = int(self.oversample)
        if oversample < 1 or oversample & (oversample - 1):
            raise StarParamsError(f"oversample must be a power of two >= 1, got {self.oversample}.")
        if not 0 <= self.truncation_order <= MAX_MOYAL_ORDER:
            raise StarParamsError(f"truncation_order must lie in [0, {MAX_MOYAL_ORDER}].")

    def with_hbar(self, hbar: float) -> "StarParams":
        return replace(self, hbar=hbar)


@dataclass(frozen=True)
class GridSpec:
    points_per_axis: int = DEFAULT_GRID_POINTS
    extent: float = DEFAULT_EXTENT
    a_extent: Optional[float] = None

    def to_dict(self) -> Dict[str, float]:
        return {"points_per_axis": self.points_per_axis, "extent": self.extent}


@dataclass
class SuiteConfig:
    """
    Verification-suite configuration.

    Defaults mirror configs/suite.yaml; `from_yaml` loads a file and keyword
    overrides (from CLI flags) win over file values.
    """
    name: str = DEFAULT_SUITE_NAME
    checks: List[str] = field(default_factory=list)
    hbar_list: Tuple[float, ...] = DEFAULT_HBAR_LIST
    grid: GridSpec = field(default_factory=GridSpec)
    oracle_grid: GridSpec = field(default_factory=lambda: GridSpec(64, 8.0))
    idempotent_points: int = 256
    seed: int = DEFAULT_SEED
    box: SamplingBox = field(default_factory=SamplingBox)
    samples: int = 1000
    quadruples: int = 100
    product_hbar: float = 2.0
    transform_hbar: float = 2.0
    dilation_hbar: float = 1.0
    decay_hbar: float = 0.25
    interpolation: str = DEFAULT_INTERPOLATION
    oversample: int = 4
    transvections: int = 5
    tolerances: Dict[str, float] = field(default_factory=dict)

    @classmethod
    def from_yaml(cls, path: Optional[str] = SUITE_CONFIG_FILEPATH, **overrides) -> "SuiteConfig":
        raw = {}
        if path is not None:
            if not os.path.exists(path):
                raise SuiteConfigError(f"Suite configuration '{path}' does not exist.")
            try:
                with open(path, "r", encoding="utf-8") as f:
                    raw = yaml.safe_load(f) or {}
            except yaml.YAMLError as e:
                raise SuiteConfigError(f"Could not parse '{path}': {e}") from e
        raw.update({k: v for k, v in overrides.items() if v is not None})
        return cls.from_dict(raw)

    @classmethod
    def from_dict(cls, raw: Dict) -> "SuiteConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise SuiteConfigError(f"Unknown suite configuration keys: {sorted(unknown)}")
        values = dict(raw)
        for key in ("grid", "oracle_grid"):
            if isinstance(values.get(key), dict):
                values[key] = GridSpec(**values[key])
        if isinstance(values.get("box"), dict):
            values["box"] = SamplingBox(**values["box"])
        if "hbar_list" in values:
            values["hbar_list"] = tuple(float(h) for h in values["hbar_list"])
        if "checks" in values:
            values["checks"] = list(values["checks"] or [])
        if "tolerances" in values:
            values["tolerances"] = {k: float(v) for k, v in (values["tolerances"] or {}).items()}
        return cls(**values)

    def star_params(self, hbar: float, method: str = "conjugation") -> StarParams:
        return StarParams(hbar=hbar, method=method, interpolation=self.interpolation,
                          oversample=self.oversample)
