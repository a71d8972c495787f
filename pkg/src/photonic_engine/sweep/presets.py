"""Built-in configurations for the figure scans."""
from __future__ import annotations

import math

from ..errors import ConfigError

_FIG = {"physics": {"g_hz": 334e3, "kappa_hz": 74e3, "g_tau": 0.03, "n_pair": 2.0}}
_ENGINE_Q = ["n_ss", "n_th", "concurrence", "eta", "w_net"]

PRESETS = {
    "fig3": {
        "description": "a, b grids over [0, 6] with c = 1: n_ss, n_th, concurrence, eta",
        "kind": "sweep",
        "config": {
            **_FIG,
            "state": {"a": {"min": 0.0, "max": 6.0, "count": 61},
                      "b": {"min": 0.0, "max": 6.0, "count": 61}, "c": 1.0, "phi": 0.0},
            "outputs": {"csv": "fig3.csv", "quantities": ["n_ss", "n_th", "concurrence", "eta"]},
        },
    },
    "fig5": {
        "description": "eta(b) at a = c = 1 for N_pair in {1, 2}, with concurrence",
        "kind": "sweep",
        "config": {
            "physics": {**_FIG["physics"], "n_pair": [1.0, 2.0]},
            "state": {"a": 1.0, "b": {"min": 0.0, "max": 6.0, "count": 601}, "c": 1.0, "phi": 0.0},
            "outputs": {"csv": "fig5.csv", "quantities": _ENGINE_Q},
        },
    },
    "fig_phase": {
        "description": "eta(phi) over [0, 4 pi] at a = c = 1 for b in {0.25, 2}",
        "kind": "sweep",
        "config": {
            **_FIG,
            "state": {"a": 1.0, "b": [0.25, 2.0], "c": 1.0,
                      "phi": {"min": 0.0, "max": 4.0 * math.pi, "count": 401}},
            "outputs": {"csv": "fig_phase.csv", "quantities": _ENGINE_Q},
        },
    },
    "fig7a": {
        "description": "doubly-excited scan: a grid with b = 1, c = 0, N_pair in {1, 2}",
        "kind": "sweep",
        "config": {
            "physics": {**_FIG["physics"], "n_pair": [1.0, 2.0]},
            "state": {"a": {"min": 0.0, "max": 6.0, "count": 601}, "b": 1.0, "c": 0.0, "phi": 0.0},
            "outputs": {"csv": "fig7a.csv", "quantities": _ENGINE_Q},
        },
    },
    "fig7b": {
        "description": "ground-state scan: c grid with a = 0, b = 1, N_pair in {1, 2}",
        "kind": "sweep",
        "config": {
            "physics": {**_FIG["physics"], "n_pair": [1.0, 2.0]},
            "state": {"a": 0.0, "b": 1.0, "c": {"min": 0.0, "max": 6.0, "count": 601}, "phi": 0.0},
            "outputs": {"csv": "fig7b.csv", "quantities": _ENGINE_Q},
        },
    },
    "fig9": {
        "description": "n_ss and n_th versus detuning for g tau in {0.03, 0.17}",
        "kind": "sweep",
        "config": {
            "physics": {**_FIG["physics"], "n_pair": 1.0, "g_tau": [0.03, 0.17],
                        "delta_hz": {"min": -1e6, "max": 0.0, "count": 201}},
            "state": {"a": 1.0, "b": 5.0, "c": 1.0, "phi": 0.0},
            "outputs": {"csv": "fig9.csv", "quantities": ["n_ss", "n_th"]},
        },
    },
    "fig2": {
        "description": "engine cycle at a = 1, b = 5, c = 1, g tau = 0.17 for N_pair in {1, 2}",
        "kind": "cycle",
        "config": {
            "physics": {**_FIG["physics"], "g_tau": 0.17, "n_pair": [1.0, 2.0]},
            "state": {"a": 1.0, "b": 5.0, "c": 1.0, "phi": 0.0},
            "outputs": {"csv": "fig2_cycle.csv"},
            "run": {"cycle_mode": "pointwise", "steps": 101},
        },
    },
    "convergence": {
        "description": "Fock-dimension, expansion-order and interaction-time studies",
        "kind": "converge",
        "config": {
            "physics": {"g_hz": 334e3, "kappa_hz": 740e3, "g_tau": 0.01, "n_pair": 1.0},
            "state": {"a": 1.0, "b": 1.0, "c": 1.0, "phi": 0.0},
            "outputs": {"csv": "convergence.csv"},
        },
    },
}


def get_preset(name: str) -> dict:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}") from None


def list_presets():
    return [(name, p["kind"], p["description"]) for name, p in PRESETS.items()]
