"""Parameter sweeps, cycle traces and convergence reports with a CLI front end."""
from .config import QUANTITIES, SweepConfig, config_from_dict, expand_grid, load_config
from .presets import PRESETS, get_preset, list_presets
from .runner import (
    evaluate_point,
    grid_points,
    order_residuals,
    random_density_matrix,
    run_convergence_study,
    run_cycle_preset,
    run_sweep,
)

__all__ = [
    "PRESETS", "QUANTITIES", "SweepConfig", "config_from_dict", "evaluate_point", "expand_grid",
    "get_preset", "grid_points", "list_presets", "load_config", "order_residuals",
    "random_density_matrix", "run_convergence_study", "run_cycle_preset", "run_sweep",
]
