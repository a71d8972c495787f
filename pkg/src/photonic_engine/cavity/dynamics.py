"""Time evolution and steady states of the cavity master equation."""
from __future__ import annotations

import csv
import logging
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConvergenceError, InvalidDimensionError, TraceDriftError, TruncationError
from ..reservoir import InteractionParams, ReservoirCoefficients
from .fock import DEFAULT_TAIL_TOL, CavityState, FockSpace, auto_fock_dim, tail_mass
from .integrate import integrate
from .master import Generator

log = logging.getLogger(__name__)

TRACE_ABORT = 1e-6
NULLSPACE_MAX_DIM = 32


@dataclass
class Trajectory:
    times: np.ndarray
    n_mean: np.ndarray
    a_mean: np.ndarray
    trace_err: np.ndarray
    min_eig: np.ndarray
    tail_mass: np.ndarray
    final: CavityState
    states: list = field(default_factory=list, repr=False)
    steps_accepted: int = 0
    steps_rejected: int = 0

    CSV_COLUMNS = ("t", "n_mean", "re_a", "im_a", "trace_err", "min_eig", "tail_mass")

    def rows(self):
        for i in range(len(self.times)):
            yield (self.times[i], self.n_mean[i], self.a_mean[i].real, self.a_mean[i].imag,
                   self.trace_err[i], self.min_eig[i], self.tail_mass[i])

    def to_csv(self, path):
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(self.CSV_COLUMNS)
            for row in self.rows():
                w.writerow([f"{v:.11e}" for v in row])


def _observe(rho: np.ndarray, nvec: np.ndarray, sqrt_k: np.ndarray):
    n = float(np.real(np.dot(nvec, np.diag(rho))))
    a = complex(np.sum(sqrt_k * np.diagonal(rho, offset=-1)))
    tr = abs(np.trace(rho).real - 1.0)
    lam = float(np.linalg.eigvalsh(rho)[0])
    return n, a, tr, lam, tail_mass(rho)


def evolve(initial: CavityState, coeffs: ReservoirCoefficients, t_final: float, tol: float = 1e-10, *,
           include_heff: bool = False, tail_tol: float | None = DEFAULT_TAIL_TOL,
           record_states: bool = False, max_steps: int = 2_000_000) -> Trajectory:
    """Integrate the master equation from ``initial`` for ``t_final`` seconds.

    Raises TraceDriftError if the trace wanders by more than 1e-6 and
    TruncationError if the top 10% of Fock levels ever hold more than
    ``tail_tol`` (pass ``None`` to skip that check).
    """
    if not coeffs.gamma > 0:
        cap = 1.0 / abs(coeffs.gamma) if coeffs.gamma != 0 else t_final
        if t_final > cap:
            warnings.warn(f"above threshold (gamma={coeffs.gamma:.3g}); capping t_final at {cap:.3g} s",
                          stacklevel=2)
            t_final = cap
    d = initial.dim
    space = FockSpace(d)
    gen = Generator.build(coeffs, space, include_heff)
    nvec = np.arange(d, dtype=float)
    sqrt_k = np.sqrt(np.arange(1, d, dtype=float))

    times, ns, as_, trs, lams, tails, states = [], [], [], [], [], [], []

    def record(t, rho):
        n, a, tr, lam, tail = _observe(rho, nvec, sqrt_k)
        if tr > TRACE_ABORT:
            raise TraceDriftError(f"trace drift {tr:.3g} at t={t:.6g} s (n={n:.4g}, min eig={lam:.3g})",
                                  time=t, trace_error=tr)
        times.append(t)
        ns.append(n)
        as_.append(a)
        trs.append(tr)
        lams.append(lam)
        tails.append(tail)
        if record_states:
            states.append(rho.copy())

    def symmetrize(rho):
        return 0.5 * (rho + rho.conj().T)

    rho0 = np.array(initial.rho, dtype=complex)
    record(0.0, rho0)
    scale = coeffs.rate_scale() * d
    h0 = min(t_final, 0.1 / scale) if scale > 0 else t_final
    _, rho, acc, rej = integrate(gen, rho0, t_final, tol, h0=h0, max_steps=max_steps,
                                 post_step=symmetrize, on_accept=record)
    tails_arr = np.array(tails)
    if tail_tol is not None and tails_arr.max() >= tail_tol:
        worst = float(tails_arr.max())
        raise TruncationError(
            f"tail mass {worst:.3g} exceeds {tail_tol:.1g} at dim {d}; try dim >= {int(d * 1.5) + 4}",
            tail_mass=worst, suggested_dim=int(d * 1.5) + 4)
    log.debug("evolve: %d accepted, %d rejected steps", acc, rej)
    return Trajectory(
        times=np.array(times), n_mean=np.array(ns), a_mean=np.array(as_), trace_err=np.array(trs),
        min_eig=np.array(lams), tail_mass=tails_arr, final=CavityState(rho, check=False),
        states=states, steps_accepted=acc, steps_rejected=rej,
    )


def steady_state_moments(coeffs: ReservoirCoefficients, params: InteractionParams | None = None):
    """Stationary ``(n_ss, <a>_ss)`` of the first-moment and photon-number equations."""
    coeffs.require_below_threshold()
    a_ss = -1j * coeffs.drive_strength / coeffs.gamma
    n_ss = coeffs.n_th + abs(coeffs.drive_strength) ** 2 / coeffs.gamma ** 2
    return float(n_ss), complex(a_ss)


def steady_state_second_moment(coeffs: ReservoirCoefficients) -> complex:
    """Stationary ``<a^2>`` from closing the moment equation with the mu terms.

    ``d<a^2>/dt = -2i F <a> - 2 gamma <a^2> - 2 mu*`` with ``F`` the drive
    strength, so ``<a^2>_ss = <a>_ss^2 - mu*/gamma``.
    """
    _, a_ss = steady_state_moments(coeffs)
    return complex(a_ss ** 2 - np.conj(coeffs.mu) / coeffs.gamma)


def fock_dim_for(coeffs: ReservoirCoefficients, cap: int = 400) -> int:
    n_ss, _ = steady_state_moments(coeffs)
    return auto_fock_dim(n_ss, cap=cap)


def _spectral_gap(gen: Generator) -> float:
    if gen.space.dim > NULLSPACE_MAX_DIM:
        return float("nan")
    ev = np.linalg.eigvals(gen.superoperator())
    re = np.sort(-ev.real)
    return float(re[1]) if len(re) > 1 else float("nan")


def steady_state_nullspace(coeffs: ReservoirCoefficients, space: FockSpace, *,
                           include_heff: bool = False) -> CavityState:
    d = space.dim
    if d > NULLSPACE_MAX_DIM:
        raise InvalidDimensionError(f"null-space solver limited to dim <= {NULLSPACE_MAX_DIM}, got {d}")
    gen = Generator.build(coeffs, space, include_heff)
    L = gen.superoperator()
    # replace one (redundant) equation by the trace condition
    A = L.copy()
    b = np.zeros(d * d, dtype=complex)
    A[0, :] = 0.0
    A[0, np.arange(d) * (d + 1)] = 1.0
    b[0] = 1.0
    v = np.linalg.solve(A, b)
    rho = v.reshape(d, d, order="F")
    rho = 0.5 * (rho + rho.conj().T)
    return CavityState(rho / np.trace(rho).real, check=False)


def steady_state_numeric(coeffs: ReservoirCoefficients, space: FockSpace, tol: float = 1e-9, *,
                         method: str = "auto", include_heff: bool = False,
                         max_time: float | None = None) -> CavityState:
    """Numerical fixed point of the master equation.

    ``method`` is ``"nullspace"`` (dense linear solve, dim <= 32),
    ``"integrate"`` (long-time evolution until the generator residual falls
    below ``tol`` times the largest rate) or ``"auto"``.
    """
    coeffs.require_below_threshold()
    if method == "auto":
        method = "nullspace" if space.dim <= NULLSPACE_MAX_DIM else "integrate"
    gen = Generator.build(coeffs, space, include_heff)
    target = tol * coeffs.rate_scale()
    if method == "nullspace":
        state = steady_state_nullspace(coeffs, space, include_heff=include_heff)
        resid = float(np.max(np.abs(gen(state.rho))))
        if resid > target:
            raise ConvergenceError(f"null-space residual {resid:.3g} above {target:.3g}",
                                   residual=resid, spectral_gap=_spectral_gap(gen))
        return state
    if method != "integrate":
        raise ValueError(f"unknown method {method!r}")

    horizon = max_time if max_time is not None else 400.0 / coeffs.gamma
    chunk = 2.0 / coeffs.gamma
    rho = CavityState.thermal(space.dim, max(coeffs.n_th, 0.0)).rho
    elapsed = 0.0
    resid = math.inf
    while elapsed < horizon:
        traj = evolve(CavityState(rho, check=False), coeffs, chunk, tol=min(1e-10, tol * 1e-2),
                      include_heff=include_heff, tail_tol=None)
        rho = np.array(traj.final.rho)
        elapsed += chunk
        resid = float(np.max(np.abs(gen(rho))))
        if resid <= target:
            return CavityState(rho, check=False)
    raise ConvergenceError(
        f"no stationarity after {elapsed:.3g} s (residual {resid:.3g}, target {target:.3g})",
        residual=resid, spectral_gap=_spectral_gap(gen) if space.dim <= NULLSPACE_MAX_DIM else 2 * coeffs.gamma)
