"""Grid evaluation, cycle traces and convergence studies behind the CLI."""
from __future__ import annotations

import csv
import io
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..atoms import AtomPairState, PureFamilyParams, build_pure_family, concurrence
from ..cavity import (
    FockSpace,
    auto_fock_dim,
    exact_map,
    joint_unitary,
    steady_state_moments,
    steady_state_numeric,
    superoperator_second_order,
)
from ..engine import CYCLE_CSV_COLUMNS, cycle_rows, efficiency_closed_form, effective_temperature, run_cycle
from ..errors import ConfigError, DomainError
from ..reservoir import TWO_PI, InteractionParams, reservoir_coefficients, reservoir_temperature
from .config import GRID_AXES, SweepConfig

FLAG_COLUMN = "above_threshold"


def fmt(x) -> str:
    """Locale-independent scientific notation with 12 significant digits."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.11e}"


def write_table(path, header, rows):
    """UTF-8, comma-separated, LF line endings; strings pass through, numbers via ``fmt``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, str) else fmt(v) for v in row])
    data = buf.getvalue()
    if path is None:
        return data
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(data)
    return data


def params_for(point: dict, physics: dict) -> InteractionParams:
    return InteractionParams.from_hz(point["g_hz"], point["kappa_hz"], point["g_tau"], n_pair=point["n_pair"],
                                     delta=TWO_PI * point["delta_hz"], omega_a_hz=physics.get("omega_a_hz"))


def state_for(point: dict) -> AtomPairState:
    return build_pure_family(PureFamilyParams(point["a"], point["b"], point["c"], point["phi"]))


def grid_points(config: SweepConfig) -> list[dict]:
    """All grid points in canonical nesting order (first gridded axis outermost)."""
    axes = config.axis_values()
    names = list(GRID_AXES)
    return [dict(zip(names, map(float, combo))) for combo in itertools.product(*(axes[n] for n in names))]


@dataclass(frozen=True)
class RowResult:
    point: dict
    values: dict
    above_threshold: bool


def evaluate_point(point: dict, config: SweepConfig) -> RowResult:
    """Every requested quantity at one grid point; NaN above threshold."""
    quantities = config.quantities
    run = config.run
    state = state_for(point)
    params = params_for(point, config.physics)
    coeffs = reservoir_coefficients(state, params, coherence_weight=run["coherence_weight"], strict=False)
    values = {}
    if not coeffs.below_threshold:
        for q in quantities:
            values[q] = concurrence(state) if q == "concurrence" else math.nan
        return RowResult(point, values, True)

    n_ss, _ = steady_state_moments(coeffs)
    n_th = coeffs.n_th
    if run["mode"] == "full_density_matrix":
        dim = int(run["fock_dim"]) or auto_fock_dim(n_ss, cap=int(run["fock_cap"]))
        rho = steady_state_numeric(coeffs, FockSpace(dim), tol=float(run["tol"]))
        n_ss = rho.mean_n()
    for q in quantities:
        if q == "n_ss":
            values[q] = n_ss
        elif q == "n_th":
            values[q] = n_th
        elif q == "concurrence":
            values[q] = concurrence(state)
        elif q == "eta":
            values[q] = efficiency_closed_form(coeffs)
        elif q == "w_net":
            res, _ = run_cycle(state, params, TWO_PI * config.delta_final_hz, steps=int(run["steps"]),
                               mode="entry", coherence_weight=run["coherence_weight"])
            values[q] = res.w_net
        elif q == "t_r":
            values[q] = reservoir_temperature(coeffs, params.omega_a)
        elif q == "t_eff":
            try:
                values[q] = effective_temperature(params.omega_a, n_ss, n_th)
            except DomainError:
                values[q] = math.inf
    return RowResult(point, values, False)


@dataclass
class SweepResult:
    header: list
    rows: list
    flagged: int
    csv_text: str


def _map_ordered(fn, items, threads):
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        # map preserves input order whatever the completion order
        return list(pool.map(fn, items))


def run_sweep(config: SweepConfig, out=None, threads: int | None = None) -> SweepResult:
    threads = config.threads if threads is None else threads
    points = grid_points(config)
    results = _map_ordered(lambda p: evaluate_point(p, config), points, threads)
    header = list(GRID_AXES) + config.quantities + [FLAG_COLUMN]
    rows = []
    for r in results:
        rows.append([r.point[ax] for ax in GRID_AXES] + [r.values[q] for q in config.quantities]
                    + ["1" if r.above_threshold else "0"])
    text = write_table(out, header, rows)
    return SweepResult(header=header, rows=rows, flagged=sum(r.above_threshold for r in results), csv_text=text)


@dataclass
class CycleReport:
    point: dict
    result: object
    points: list
    q23_refined: float

    @property
    def quadrature_difference(self) -> float:
        return self.result.q23 - self.q23_refined


def run_cycle_preset(config: SweepConfig, out=None, threads: int | None = None, steps: int | None = None):
    """Cycle trace for every grid point; the trace rows carry the gridded parameter values."""
    threads = config.threads if threads is None else threads
    steps = int(config.run["steps"]) if steps is None else steps
    mode = config.run["cycle_mode"]
    weight = config.run["coherence_weight"]
    delta_final = TWO_PI * config.delta_final_hz
    gridded = config.gridded_axes()

    def one(point):
        state = state_for(point)
        params = params_for(point, config.physics)
        res, pts = run_cycle(state, params, delta_final, steps, mode=mode, coherence_weight=weight)
        fine, _ = run_cycle(state, params, delta_final, 4 * (steps - 1) + 1, mode=mode, coherence_weight=weight)
        return CycleReport(point, res, pts, fine.q23)

    reports = _map_ordered(one, grid_points(config), threads)
    header = gridded + list(CYCLE_CSV_COLUMNS)
    rows = []
    for rep in reports:
        omega_ref = params_for(rep.point, config.physics).omega_a
        for row in cycle_rows(rep.points, omega_ref):
            rows.append([rep.point[ax] for ax in gridded] + [row[0]] + list(row[1:]))
    text = write_table(out, header, rows)
    return reports, text


def random_density_matrix(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Ginibre-distributed mixed state of the given rank (full rank by default)."""
    k = dim if rank is None else rank
    g = rng.standard_normal((dim, k)) + 1j * rng.standard_normal((dim, k))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def order_residuals(g_taus, dim: int = 8, samples: int = 5, delta_tau: float = 0.5, seed: int = 1234,
                    g: float = 1.0):
    """Max Frobenius distance between exact and second-order maps for each g*tau, plus the log-log slope."""
    rng = np.random.default_rng(seed)
    inputs = [(random_density_matrix(dim, rng), AtomPairState(random_density_matrix(4, rng)))
              for _ in range(samples)]
    space = FockSpace(dim)
    res = []
    for gt in g_taus:
        tau = gt / g
        params = InteractionParams(g=g, tau=tau, kappa=0.0, delta=delta_tau / tau)
        U = joint_unitary(params, space)
        worst = 0.0
        for rho_c, atoms in inputs:
            diff = exact_map(rho_c, atoms, U).rho - superoperator_second_order(rho_c, atoms, params).rho
            worst = max(worst, float(np.linalg.norm(diff)))
        res.append(worst)
    slope = float(np.polyfit(np.log(g_taus), np.log(res), 1)[0])
    return np.array(res), slope


CONVERGENCE_COLUMNS = ("study", "quantity", "param", "x", "value")


def run_convergence_study(config: SweepConfig, out=None):
    """Long-format report: truncation, expansion order and interaction time."""
    if config.gridded_axes():
        raise ConfigError("convergence study runs at a single physics point; remove grids")
    run = config.run
    point = grid_points(config)[0]
    state = state_for(point)
    params = params_for(point, config.physics)
    weight = run["coherence_weight"]
    coeffs = reservoir_coefficients(state, params, coherence_weight=weight)
    rows = []

    n_ref, _ = steady_state_moments(coeffs)
    rows.append(("fock_dim", "n_ss_moments", math.nan, math.nan, n_ref))
    for d in run["fock_dims"]:
        rho = steady_state_numeric(coeffs, FockSpace(int(d)), tol=float(run["tol"]))
        rows.append(("fock_dim", "n_ss", math.nan, float(d), rho.mean_n()))
        rows.append(("fock_dim", "tail_mass", math.nan, float(d), rho.tail_mass))

    g_taus = [float(x) for x in run["order_g_taus"]]
    res, slope = order_residuals(g_taus, dim=int(run["order_dim"]), samples=int(run["order_samples"]),
                                 delta_tau=float(run["order_delta_tau"]), seed=int(run["seed"]))
    for gt, r in zip(g_taus, res):
        rows.append(("order", "residual", math.nan, gt, r))
    rows.append(("order", "slope", math.nan, math.nan, slope))

    lo, hi = config._delta_range()
    deltas = np.linspace(lo, hi, int(run["study_delta_count"]))
    for gt in run["study_g_taus"]:
        for dh in deltas:
            p = params.replace(tau=float(gt) / params.g, delta=TWO_PI * float(dh))
            c = reservoir_coefficients(state, p, coherence_weight=weight, strict=False)
            if c.below_threshold:
                n_ss, _ = steady_state_moments(c)
                n_th = c.n_th
            else:
                n_ss = n_th = math.nan
            rows.append(("interaction_time", "n_th", float(gt), float(dh), n_th))
            rows.append(("interaction_time", "n_ss", float(gt), float(dh), n_ss))

    text = write_table(out, CONVERGENCE_COLUMNS, rows)
    return rows, slope, text
