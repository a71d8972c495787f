"""Thermodynamics of the four-stroke photonic engine.

Heats and works are in rate units (rad/s times photons; multiply by hbar for
joules).  The cavity frequency moves with the detuning: the frequency offset
from the stroke-entry value is taken equal to ``delta``.  Every photon number
depends on delta only through even functions, so this choice fixes the stroke
direction (expansion lowers omega_c for ``delta_final < 0``) and nothing else.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from .atoms import AtomPairState
from .cavity.dynamics import steady_state_moments
from .errors import DomainError
from .reservoir import (
    DERIVED_COHERENCE_WEIGHT,
    HBAR,
    K_B,
    InteractionParams,
    ReservoirCoefficients,
    reservoir_coefficients,
)

STAGES = ("heating", "expansion", "cooling", "compression")
MODES = ("entry", "pointwise")


def field_entropy(n_th: float) -> float:
    """Entropy ``S/k_B`` of a thermal mode with mean occupation ``n_th``."""
    if n_th < 0:
        raise DomainError(f"thermal number must be non-negative, got {n_th}")
    if n_th == 0:
        return 0.0
    return (n_th + 1.0) * math.log1p(n_th) - n_th * math.log(n_th)


def effective_temperature(omega_c: float, n_ss: float, n_th: float) -> float:
    """Effective temperature (K) of the field during an iso-energetic stroke."""
    if n_th < 0 or n_ss < 0:
        raise DomainError("photon numbers must be non-negative")
    if n_th == 0:
        if n_ss == 0:
            return 0.0
        raise DomainError("effective temperature diverges for n_th -> 0 with n_ss > 0")
    return HBAR * omega_c * n_ss / (n_th * K_B * math.log1p(1.0 / n_th))


def efficiency_closed_form(coeffs: ReservoirCoefficients, params: InteractionParams | None = None) -> float:
    coeffs.require_below_threshold()
    drive2 = abs(coeffs.drive_strength) ** 2
    if drive2 == 0.0:
        return 0.0
    return 1.0 / (1.0 + coeffs.gamma ** 2 * coeffs.n_th / drive2)


@dataclass(frozen=True)
class CyclePoint:
    stage: str
    delta: float
    omega_c: float
    n_ss: float
    n_th: float
    q_cum: float = 0.0
    w_cum: float = 0.0

    def omega_c_offset(self, omega_ref: float) -> float:
        return self.omega_c - omega_ref


@dataclass(frozen=True)
class CycleResult:
    """Outcome of one cycle.

    ``q23`` is the heat absorbed on expansion and ``q41`` the (positive) heat
    discarded on compression; ``w23``/``w41`` are work delivered by the field,
    so ``w_net = w23 + w41 = q23 - q41``.  ``q12``/``q34`` are the isochoric
    heats (n change times omega_c); ``q12 + q34`` is reported, not assumed zero.
    """

    q23: float
    q41: float
    w23: float
    w41: float
    w_net: float
    eta: float
    eta_closed_form: float
    t_eff_hot: float
    t_eff_cold: float
    entropy: float
    entropy_compression: float
    q12: float
    q34: float
    no_work: bool
    mode: str

    @property
    def isochoric_residual(self) -> float:
        return self.q12 + self.q34


def _photon_numbers(state, params, delta, coherence_weight):
    coeffs = reservoir_coefficients(state, params.replace(delta=delta), coherence_weight=coherence_weight)
    n_ss, _ = steady_state_moments(coeffs)
    return n_ss, coeffs.n_th, coeffs


def run_cycle(state: AtomPairState, params: InteractionParams, delta_final: float, steps: int = 101, *,
              mode: str = "entry", coherence_weight: float = DERIVED_COHERENCE_WEIGHT):
    """Run heating, expansion (delta 0 -> delta_final), cooling and compression.

    ``mode="entry"`` freezes the photon numbers at their resonant values, which
    is the assumption behind the closed-form efficiency; ``"pointwise"``
    re-evaluates them at each quadrature node.  Returns ``(CycleResult, points)``.
    """
    if not delta_final < 0:
        raise DomainError(f"delta_final must be negative, got {delta_final}")
    if steps < 2:
        raise DomainError("need at least two quadrature nodes per stroke")
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}")

    omega0 = params.omega_a
    n_ss0, n_th0, coeffs0 = _photon_numbers(state, params, 0.0, coherence_weight)
    deltas = np.linspace(0.0, delta_final, steps)
    if mode == "entry":
        n_ss = np.full(steps, n_ss0)
        n_th = np.full(steps, n_th0)
    else:
        pairs = [_photon_numbers(state, params, float(dl), coherence_weight)[:2] for dl in deltas]
        n_ss = np.array([p[0] for p in pairs])
        n_th = np.array([p[1] for p in pairs])
    omega = omega0 + deltas

    # integrate over the offset: d omega = d delta, and omega0 ~ 1e15 would eat digits
    # expansion: omega falls; heat in = -int n_ss d omega
    q23 = float(-trapezoid(n_ss, deltas))
    # compression runs omega back up; discarded heat = int n_th d omega (positive)
    q41 = float(-trapezoid(n_th, deltas))
    w23 = q23
    w41 = -q41
    w_net = w23 + w41
    q12 = omega0 * (n_ss[0] - n_th[0])
    q34 = omega[-1] * (n_th[-1] - n_ss[-1])

    no_work = not q23 > 0
    eta = 0.0 if no_work else 1.0 - q41 / q23
    eta_cf = efficiency_closed_form(coeffs0)
    t_hot = effective_temperature(omega0, n_ss0, n_th0) if n_th0 > 0 else (0.0 if n_ss0 == 0 else math.inf)
    t_cold = effective_temperature(omega0, n_th0, n_th0)

    points = []
    q = w = 0.0
    points.append(CyclePoint("heating", 0.0, omega0, n_ss[0], n_th[0], q, w))
    q += q12
    points.append(CyclePoint("heating", 0.0, omega0, n_ss[0], n_th[0], q, w))
    for k in range(1, steps):
        dq = -0.5 * (n_ss[k] + n_ss[k - 1]) * (deltas[k] - deltas[k - 1])
        q += dq
        w += dq
        points.append(CyclePoint("expansion", deltas[k], omega[k], n_ss[k], n_th[k], q, w))
    q += q34
    points.append(CyclePoint("cooling", deltas[-1], omega[-1], n_ss[-1], n_th[-1], q, w))
    for k in range(steps - 1, 0, -1):
        dq = -0.5 * (n_th[k] + n_th[k - 1]) * (deltas[k - 1] - deltas[k])
        q += dq
        w += dq
        points.append(CyclePoint("compression", deltas[k - 1], omega[k - 1], n_ss[k - 1], n_th[k - 1], q, w))

    result = CycleResult(
        q23=q23, q41=q41, w23=w23, w41=w41, w_net=w_net, eta=eta, eta_closed_form=eta_cf,
        t_eff_hot=t_hot, t_eff_cold=t_cold, entropy=field_entropy(n_th[0]),
        entropy_compression=field_entropy(n_th[-1]), q12=q12, q34=q34, no_work=no_work, mode=mode,
    )
    return result, points


CYCLE_CSV_COLUMNS = ("stage", "delta", "omega_c_offset", "n_ss", "n_th", "q_cum", "w_cum")


def cycle_rows(points, omega_ref: float):
    for p in points:
        yield (p.stage, p.delta, p.omega_c - omega_ref, p.n_ss, p.n_th, p.q_cum, p.w_cum)


def write_cycle_csv(path, points, omega_ref: float):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CYCLE_CSV_COLUMNS)
        for row in cycle_rows(points, omega_ref):
            w.writerow([row[0]] + [f"{v:.11e}" for v in row[1:]])
