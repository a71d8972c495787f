"""Sweep configuration: TOML with dotted section keys.

    physics.g_hz = 334e3
    physics.kappa_hz = 74e3
    physics.g_tau = 0.03
    physics.n_pair = 2
    state.a = {min = 0, max = 6, count = 61}
    state.b = [0.25, 2.0]
    outputs.quantities = ["n_ss", "eta"]
    run.threads = 4

Any axis in ``GRID_AXES`` may be a scalar, an explicit list, or a
``{min, max, count}`` spec.  Frequencies are linear (Hz); conversion to
angular units happens when rows are built.
"""
from __future__ import annotations

import copy
import math
import sys
from dataclasses import dataclass, field

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from ..errors import ConfigError
from ..reservoir import DERIVED_COHERENCE_WEIGHT

QUANTITIES = ("n_ss", "n_th", "concurrence", "eta", "w_net", "t_r", "t_eff")
MODES = ("moments", "full_density_matrix")
CYCLE_MODES = ("entry", "pointwise")

# canonical order: parameter columns and nesting of gridded axes follow it
GRID_AXES = ("a", "b", "c", "phi", "g_hz", "kappa_hz", "g_tau", "n_pair", "delta_hz")
_SECTION_OF = {"a": "state", "b": "state", "c": "state", "phi": "state",
               "g_hz": "physics", "kappa_hz": "physics", "g_tau": "physics",
               "n_pair": "physics", "delta_hz": "physics"}

DEFAULTS = {
    "physics": {
        "g_hz": 334e3,
        "kappa_hz": 74e3,
        "g_tau": 0.03,
        "n_pair": 2.0,
        "delta_hz": 0.0,
        "delta_range_hz": [-1e6, 0.0],
        "omega_a_hz": None,
        "allow_out_of_range": False,
    },
    "state": {"a": 1.0, "b": 1.0, "c": 1.0, "phi": 0.0},
    "outputs": {"csv": "sweep.csv", "quantities": ["n_ss", "n_th", "concurrence", "eta"]},
    "run": {
        "mode": "moments",
        "fock_dim": 0,
        "fock_cap": 400,
        "tol": 1e-9,
        "threads": 1,
        "coherence_weight": DERIVED_COHERENCE_WEIGHT,
        "cycle_mode": "pointwise",
        "steps": 101,
        "fock_dims": [8, 12, 16, 20, 24, 28, 32],
        "order_g_taus": [0.04, 0.02, 0.01, 0.005],
        "order_dim": 8,
        "order_samples": 5,
        "order_delta_tau": 0.5,
        "seed": 1234,
        "study_g_taus": [0.03, 0.17],
        "study_delta_count": 41,
    },
}


def expand_grid(spec, name: str = "axis") -> np.ndarray:
    """Values of one axis from a scalar, list, or ``{min, max, count}`` table."""
    if isinstance(spec, bool):
        raise ConfigError(f"{name}: boolean is not a valid grid value")
    if isinstance(spec, (int, float)):
        return np.array([float(spec)])
    if isinstance(spec, (list, tuple)):
        if not spec:
            raise ConfigError(f"{name}: empty value list")
        try:
            return np.array([float(v) for v in spec])
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{name}: non-numeric entry in {spec!r}") from exc
    if isinstance(spec, dict):
        missing = {"min", "max", "count"} - set(spec)
        extra = set(spec) - {"min", "max", "count"}
        if missing or extra:
            raise ConfigError(f"{name}: grid spec needs exactly min, max, count (got {sorted(spec)})")
        count = spec["count"]
        if not isinstance(count, int) or isinstance(count, bool) or count < 1:
            raise ConfigError(f"{name}: count must be a positive integer")
        lo, hi = float(spec["min"]), float(spec["max"])
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ConfigError(f"{name}: non-finite bounds")
        if count == 1:
            return np.array([lo])
        if hi < lo:
            raise ConfigError(f"{name}: max < min")
        return np.linspace(lo, hi, count)
    raise ConfigError(f"{name}: unsupported grid spec {spec!r}")


@dataclass
class SweepConfig:
    physics: dict = field(default_factory=dict)
    state: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    run: dict = field(default_factory=dict)
    name: str = "custom"

    def axis_values(self) -> dict[str, np.ndarray]:
        out = {}
        for ax in GRID_AXES:
            out[ax] = expand_grid(getattr(self, _SECTION_OF[ax])[ax], ax)
        return out

    def gridded_axes(self) -> list[str]:
        return [ax for ax, v in self.axis_values().items() if len(v) > 1]

    @property
    def quantities(self) -> list[str]:
        return list(self.outputs["quantities"])

    @property
    def threads(self) -> int:
        return int(self.run["threads"])

    def validate(self) -> "SweepConfig":
        for section in ("physics", "state", "outputs", "run"):
            unknown = set(getattr(self, section)) - set(DEFAULTS[section])
            if unknown:
                raise ConfigError(f"unknown {section} keys: {sorted(unknown)}")
        axes = self.axis_values()
        gridded = [ax for ax, v in axes.items() if len(v) > 1]
        if len(gridded) > 2:
            raise ConfigError(f"at most 2 gridded axes per sweep, got {gridded}")
        bad = [q for q in self.quantities if q not in QUANTITIES]
        if bad or not self.quantities:
            raise ConfigError(f"unknown quantities {bad}; choose from {QUANTITIES}")
        if self.run["mode"] not in MODES:
            raise ConfigError(f"run.mode must be one of {MODES}")
        if self.run["cycle_mode"] not in CYCLE_MODES:
            raise ConfigError(f"run.cycle_mode must be one of {CYCLE_MODES}")
        if int(self.run["threads"]) < 1:
            raise ConfigError("run.threads must be >= 1")
        if int(self.run["steps"]) < 2:
            raise ConfigError("run.steps must be >= 2")
        lo, hi = self._delta_range()
        if not self.physics["allow_out_of_range"]:
            if lo < -1e6 or hi > 0.0:
                raise ConfigError("physics.delta_range_hz must lie within [-1e6, 0] "
                                  "(set physics.allow_out_of_range = true to override)")
            d = axes["delta_hz"]
            if d.min() < lo or d.max() > hi:
                raise ConfigError(f"physics.delta_hz outside delta_range_hz [{lo}, {hi}]")
        for ax in ("g_hz", "g_tau", "n_pair"):
            if np.any(axes[ax] <= 0):
                raise ConfigError(f"{ax} must be positive")
        if np.any(axes["kappa_hz"] < 0):
            raise ConfigError("kappa_hz must be non-negative")
        if np.any(axes["a"] < 0) or np.any(axes["b"] < 0) or np.any(axes["c"] < 0):
            raise ConfigError("state amplitudes a, b, c must be non-negative")
        return self

    def _delta_range(self):
        r = self.physics["delta_range_hz"]
        if not isinstance(r, (list, tuple)) or len(r) != 2:
            raise ConfigError("physics.delta_range_hz must be a two-element list [min, max]")
        lo, hi = float(r[0]), float(r[1])
        if lo > hi:
            raise ConfigError("physics.delta_range_hz has min > max")
        return lo, hi

    @property
    def delta_final_hz(self) -> float:
        return self._delta_range()[0]


def _merge(base: dict, over: dict, where: str = "") -> dict:
    out = copy.deepcopy(base)
    for k, v in over.items():
        if k not in out:
            raise ConfigError(f"unknown key {where}{k}")
        if isinstance(out[k], dict) and isinstance(v, dict):
            out[k] = _merge(out[k], v, f"{where}{k}.")
        else:
            out[k] = v
    return out


def config_from_dict(data: dict, name: str = "custom", base: dict | None = None) -> SweepConfig:
    merged = _merge(DEFAULTS if base is None else base, data)
    return SweepConfig(physics=merged["physics"], state=merged["state"], outputs=merged["outputs"],
                       run=merged["run"], name=name).validate()


def parse_toml(text: str) -> dict:
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config parse error: {exc}") from exc


def load_config(path) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config parse error in {path}: {exc}") from exc


def parse_override(item: str) -> dict:
    """``"run.threads=8"`` -> ``{"run": {"threads": 8}}`` (value parsed as TOML)."""
    if "=" not in item:
        raise ConfigError(f"override {item!r} is not KEY=VALUE")
    key, value = item.split("=", 1)
    key = key.strip()
    if key.count(".") != 1:
        raise ConfigError(f"override key {key!r} must be section.name")
    return parse_toml(f"{key} = {value.strip()}")


def deep_update(base: dict, extra: dict) -> dict:
    out = copy.deepcopy(base)
    for k, v in extra.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = deep_update(out[k], v)
        else:
            out[k] = v
    return out
