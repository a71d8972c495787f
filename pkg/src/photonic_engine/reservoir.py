"""Coefficients of the cavity master equation generated by the atom-pair beam.

Rates are in s^-1 (angular units, hbar = 1).  Detunings are equal for both
atoms, ``delta = omega_a - omega_c``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import constants

from .atoms import AtomPairState
from .errors import AboveThresholdError, DomainError

HBAR = constants.hbar
K_B = constants.k
TWO_PI = 2.0 * math.pi
# 791 nm barium intercombination line
OMEGA_791NM = TWO_PI * constants.c / 791e-9

SERIES_SWITCH = 1e-6
MARKOV_LIMIT = 0.2

# Weight of Re(rho_23 + rho_32) in the p1/p2 brackets.  0.5 is what the
# second-order expansion of the two-atom propagator gives; 1.0 reproduces the
# printed rate formulas, which can make p1 negative (e.g. the subradiant state).
DERIVED_COHERENCE_WEIGHT = 0.5
PRINTED_COHERENCE_WEIGHT = 1.0


@dataclass(frozen=True)
class InteractionParams:
    g: float
    tau: float
    kappa: float
    delta: float = 0.0
    n_pair: float = 1.0
    omega_a: float = OMEGA_791NM

    def __post_init__(self):
        if not self.g > 0:
            raise DomainError(f"g must be positive, got {self.g}")
        if not self.tau > 0:
            raise DomainError(f"tau must be positive, got {self.tau}")
        if not self.kappa >= 0:
            raise DomainError(f"kappa must be non-negative, got {self.kappa}")
        if not self.n_pair > 0:
            raise DomainError(f"n_pair must be positive, got {self.n_pair}")

    @classmethod
    def from_hz(cls, g_hz, kappa_hz, g_tau, n_pair=1.0, delta=0.0, omega_a_hz=None):
        """Build from linear frequencies (g/2pi, kappa/2pi) and the product g*tau."""
        g = TWO_PI * g_hz
        omega_a = OMEGA_791NM if omega_a_hz is None else TWO_PI * omega_a_hz
        return cls(g=g, tau=g_tau / g, kappa=TWO_PI * kappa_hz, delta=delta,
                   n_pair=n_pair, omega_a=omega_a)

    @property
    def g_tau(self) -> float:
        return self.g * self.tau

    @property
    def r_a(self) -> float:
        """Pair injection rate, ``n_pair / tau``."""
        return self.n_pair / self.tau

    @property
    def is_markovian(self) -> bool:
        return self.g_tau < MARKOV_LIMIT

    def replace(self, **changes) -> "InteractionParams":
        fields = dict(g=self.g, tau=self.tau, kappa=self.kappa, delta=self.delta,
                      n_pair=self.n_pair, omega_a=self.omega_a)
        fields.update(changes)
        return InteractionParams(**fields)


@dataclass(frozen=True)
class DetuningEnvelope:
    R: complex
    D: complex
    E: complex
    a1: float
    b1: float


def sinc(x):
    """Unnormalized ``sin(x)/x``."""
    return np.sinc(np.asarray(x) / np.pi)


def detuning_envelope(delta: float, tau: float) -> DetuningEnvelope:
    x = delta * tau
    if abs(x) < SERIES_SWITCH:
        # sinc(x/2) = 1 - x^2/24, cos(x/2) - sinc(x/2) = -x^2/12 + O(x^4)
        a1 = 0.5 - x * x / 48.0
        b1 = -x / 12.0
    else:
        h = 0.5 * x
        s = math.sin(h) / h
        a1 = 0.5 * s
        b1 = (math.cos(h) - s) / x
    D = (a1 + 1j * b1) * np.exp(0.5j * x)
    return DetuningEnvelope(R=complex(2.0 * D), D=complex(D), E=complex(D), a1=a1, b1=b1)


@dataclass(frozen=True)
class ReservoirCoefficients:
    """All scalar inputs of the cavity master equation.

    ``gain`` (= p1) and ``loss`` (= p2 + kappa/2) multiply the two
    single-photon dissipators; ``push_pull`` multiplies ``a a^dag`` in the
    effective Hamiltonian and ``const_shift`` is its c-number part.
    """

    p1: float
    p2: float
    mu: complex
    alpha: complex
    gamma: float
    n_th: float
    drive_strength: complex
    push_pull: float
    const_shift: float
    kappa: float
    envelope: DetuningEnvelope

    @property
    def gain(self) -> float:
        return self.p1

    @property
    def loss(self) -> float:
        return self.p2 + 0.5 * self.kappa

    @property
    def margin(self) -> float:
        return self.gamma

    @property
    def below_threshold(self) -> bool:
        return self.gamma > 0

    def require_below_threshold(self):
        if not self.gamma > 0:
            raise AboveThresholdError(-self.gamma)

    def rate_scale(self) -> float:
        """Largest rate magnitude; used to normalize stationarity residuals."""
        return max(abs(self.p1), abs(self.loss), abs(self.mu), abs(self.drive_strength),
                   abs(self.push_pull), 1e-300)

    def replace(self, **changes) -> "ReservoirCoefficients":
        d = {f: getattr(self, f) for f in self.__dataclass_fields__}
        d.update(changes)
        return ReservoirCoefficients(**d)


def _check_hermitian(state: AtomPairState):
    # AtomPairState already validates; guards against hand-built rho arrays
    rho = np.asarray(state.rho)
    if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
        raise DomainError("atomic density matrix is not Hermitian")


def reservoir_coefficients(state: AtomPairState, params: InteractionParams, *,
                           coherence_weight: float = DERIVED_COHERENCE_WEIGHT,
                           strict: bool = True) -> ReservoirCoefficients:
    """Evaluate p1, p2, mu, alpha, gamma, n_th and the H_eff couplings.

    With ``strict=False`` an above-threshold input (gamma <= 0) returns a
    record with ``n_th = nan`` instead of raising.
    """
    _check_hermitian(state)
    r = state.rho
    g, tau, n_pair = params.g, params.tau, params.n_pair
    env = detuning_envelope(params.delta, tau)
    re_r, im_r = env.R.real, env.R.imag
    x = params.delta * tau

    scale = g * g * tau * n_pair * re_r
    coh = coherence_weight * (r[1, 2] + r[2, 1]).real
    singles = 0.5 * (r[1, 1] + r[2, 2]).real
    p1 = scale * (r[0, 0].real + singles + coh)
    p2 = scale * (r[3, 3].real + singles + coh)
    mu = scale * r[3, 0] * np.exp(1j * x)
    alpha = (r[0, 2] + r[1, 3] + r[0, 1] + r[2, 3]) * sinc(0.5 * x) * np.exp(-0.5j * x)

    gamma = 0.5 * params.kappa + (p2 - p1)
    if gamma > 0:
        n_th = p1 / gamma
    elif strict:
        raise AboveThresholdError(-gamma)
    else:
        n_th = math.nan

    r_a = params.r_a
    gt2 = (g * tau) ** 2
    return ReservoirCoefficients(
        p1=float(p1), p2=float(p2), mu=complex(mu), alpha=complex(alpha),
        gamma=float(gamma), n_th=float(n_th),
        drive_strength=complex(g * n_pair * alpha),
        push_pull=float(-r_a * (r[3, 3] - r[0, 0]).real * im_r * gt2),
        const_shift=float(-0.5 * r_a * (r[1, 1] - r[2, 2]).real * im_r * gt2),
        kappa=float(params.kappa),
        envelope=env,
    )


def reservoir_temperature(coeffs: ReservoirCoefficients, omega_a: float) -> float:
    """Temperature (K) whose Boltzmann factor matches the gain/loss ratio."""
    coeffs.require_below_threshold()
    n = coeffs.n_th
    if n < 0:
        raise DomainError(f"negative thermal number {n}")
    if n == 0:
        return 0.0
    return HBAR * omega_a / (K_B * math.log1p(1.0 / n))


def operating_regime(coeffs: ReservoirCoefficients, params: InteractionParams | None = None):
    """Return ``(margin, ok)`` with margin ``p2 + kappa/2 - p1`` (= gamma)."""
    kappa = coeffs.kappa if params is None else params.kappa
    margin = coeffs.p2 + 0.5 * kappa - coeffs.p1
    return margin, bool(margin > 0)
