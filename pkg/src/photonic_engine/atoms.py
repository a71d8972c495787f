"""Two-atom density matrices and their concurrence.

All matrices use the basis order ``|e1 e2>, |e1 g2>, |g1 e2>, |g1 g2>``.
Every other module indexes atomic matrix elements against this order.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidStateError, UnnormalizableStateError

BASIS = ("e1e2", "e1g2", "g1e2", "g1g2")

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-12

SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True)
class AtomPairState:
    """Validated 4x4 density matrix of one injected atom pair."""

    rho: np.ndarray

    def __post_init__(self):
        rho = np.array(self.rho, dtype=complex)
        if rho.shape != (4, 4):
            raise InvalidStateError(f"atom-pair matrix must be 4x4, got {rho.shape}")
        herm = np.max(np.abs(rho - rho.conj().T))
        if herm > HERMITIAN_TOL:
            raise InvalidStateError(f"not Hermitian (max deviation {herm:.3g})")
        tr = np.trace(rho)
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"trace is {tr.real:.15g}, expected 1")
        lam_min = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0]
        if lam_min < -PSD_TOL:
            raise InvalidStateError(f"not positive semidefinite (min eigenvalue {lam_min:.3g})")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    def __getitem__(self, idx):
        """1-based element access, ``state[1, 4]`` is rho_14."""
        i, j = idx
        return self.rho[i - 1, j - 1]

    @classmethod
    def from_ket(cls, psi) -> "AtomPairState":
        psi = np.asarray(psi, dtype=complex).reshape(4)
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise UnnormalizableStateError("zero state vector")
        psi = psi / norm
        return cls(np.outer(psi, psi.conj()))

    @classmethod
    def product(cls, rho1, rho2) -> "AtomPairState":
        """Uncorrelated pair from two single-atom matrices in the ``(e, g)`` basis."""
        return cls(np.kron(np.asarray(rho1, dtype=complex), np.asarray(rho2, dtype=complex)))


@dataclass(frozen=True)
class PureFamilyParams:
    """Amplitudes of ``a|ee> + b(|ge> + e^{i phi}|eg>) + c|gg>`` (unnormalized)."""

    a: float
    b: float
    c: float
    phi: float = 0.0


def pure_family_ket(params: PureFamilyParams) -> np.ndarray:
    a, b, c = float(params.a), float(params.b), float(params.c)
    norm2 = a * a + 2.0 * b * b + c * c
    if norm2 == 0.0:
        raise UnnormalizableStateError("a, b and c are all zero")
    psi = np.array([a, b * np.exp(1j * params.phi), b, c], dtype=complex)
    return psi / np.sqrt(norm2)


def build_pure_family(params: PureFamilyParams) -> AtomPairState:
    psi = pure_family_ket(params)
    return AtomPairState(np.outer(psi, psi.conj()))


def bell_states() -> dict[str, AtomPairState]:
    s = 1.0 / np.sqrt(2.0)
    kets = {
        "phi+": [s, 0, 0, s],
        "phi-": [s, 0, 0, -s],
        "psi+": [0, s, s, 0],
        "psi-": [0, s, -s, 0],
    }
    return {name: AtomPairState.from_ket(k) for name, k in kets.items()}


def spin_flip(state: AtomPairState) -> np.ndarray:
    """Return ``(sy x sy) rho* (sy x sy)``."""
    return SIGMA_YY @ state.rho.conj() @ SIGMA_YY


def _psd_sqrt(rho: np.ndarray) -> np.ndarray:
    lam, vec = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    if lam[0] < -PSD_TOL:
        raise InvalidStateError(f"not positive semidefinite (min eigenvalue {lam[0]:.3g})")
    # eigenvalues within PSD_TOL of zero are rounding noise; sqrt would amplify them to ~1e-6
    lam = np.where(np.abs(lam) < PSD_TOL, 0.0, lam)
    return (vec * np.sqrt(lam)) @ vec.conj().T


def concurrence_spectrum(state: AtomPairState) -> np.ndarray:
    """Eigenvalues of ``sqrt(sqrt(rho) rho~ sqrt(rho))``, descending.

    Computed as the singular values of ``sqrt(rho) (sy x sy) sqrt(rho)*``,
    whose Gram matrix is exactly ``sqrt(rho) rho~ sqrt(rho)``; the SVD keeps
    small values accurate where an eigen-solve plus square root would not.
    """
    root = _psd_sqrt(state.rho)
    return np.linalg.svd(root @ SIGMA_YY @ root.conj(), compute_uv=False)


def concurrence(state: AtomPairState) -> float:
    lam = concurrence_spectrum(state)
    c = lam[0] - lam[1] - lam[2] - lam[3]
    return float(min(1.0, max(0.0, c)))


def pure_concurrence(psi) -> float:
    """``2|w z - x y|`` for a normalized ket ``(w, x, y, z)``."""
    w, x, y, z = np.asarray(psi, dtype=complex).reshape(4)
    return float(2.0 * abs(w * z - x * y))
