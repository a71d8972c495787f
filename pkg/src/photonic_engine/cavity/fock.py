"""Truncated Fock space and the cavity density matrix."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from ..errors import InvalidDimensionError, InvalidStateError

DEFAULT_TAIL_TOL = 1e-6


@dataclass(frozen=True)
class FockSpace:
    dim: int
    a: np.ndarray = field(init=False, repr=False)
    ad: np.ndarray = field(init=False, repr=False)
    n: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 2:
            raise InvalidDimensionError(f"Fock dimension must be an integer >= 2, got {self.dim}")
        d = int(self.dim)
        a = np.diag(np.sqrt(np.arange(1, d, dtype=float)), k=1).astype(complex)
        ad = a.conj().T.copy()
        n = np.diag(np.arange(d, dtype=float)).astype(complex)
        for m in (a, ad, n):
            m.setflags(write=False)
        object.__setattr__(self, "dim", d)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "ad", ad)
        object.__setattr__(self, "n", n)

    @property
    def identity(self) -> np.ndarray:
        return np.eye(self.dim, dtype=complex)


def build_fock(dim: int) -> FockSpace:
    return FockSpace(dim)


def tail_levels(dim: int) -> int:
    """Number of Fock levels in the top 10% of the space (at least one)."""
    return max(1, math.ceil(0.1 * dim))


def tail_mass(rho: np.ndarray) -> float:
    pops = np.real(np.diag(rho))
    return float(np.sum(pops[-tail_levels(len(pops)):]))


@dataclass(frozen=True)
class CavityState:
    """Cavity density matrix on a truncated Fock space.

    Hermiticity, trace and positivity are checked at construction unless
    ``check=False`` (used for intermediate maps that leak at the top level).
    """

    rho: np.ndarray
    check: bool = field(default=True, repr=False, compare=False)

    HERMITIAN_TOL = 1e-10
    TRACE_TOL = 1e-8
    PSD_TOL = 1e-8

    def __post_init__(self):
        rho = np.array(self.rho, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] < 2:
            raise InvalidStateError(f"cavity matrix must be square with dim >= 2, got {rho.shape}")
        if self.check:
            herm = np.max(np.abs(rho - rho.conj().T))
            if herm > self.HERMITIAN_TOL:
                raise InvalidStateError(f"cavity state not Hermitian (deviation {herm:.3g})")
            tr = np.trace(rho).real
            if abs(tr - 1.0) > self.TRACE_TOL:
                raise InvalidStateError(f"cavity trace {tr:.12g} differs from 1")
            lam = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0]
            if lam < -self.PSD_TOL:
                raise InvalidStateError(f"cavity state not positive (min eigenvalue {lam:.3g})")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    @property
    def tail_mass(self) -> float:
        return tail_mass(self.rho)

    def trusted(self, tol: float = DEFAULT_TAIL_TOL) -> bool:
        return self.tail_mass < tol

    @property
    def trace(self) -> float:
        return float(np.trace(self.rho).real)

    @property
    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(0.5 * (self.rho + self.rho.conj().T))[0])

    def mean_n(self) -> float:
        return float(np.real(np.dot(np.arange(self.dim), np.diag(self.rho))))

    def mean_a(self) -> complex:
        # <a> = Tr(a rho) = sum_k sqrt(k) rho[k, k-1]
        k = np.arange(1, self.dim)
        return complex(np.sum(np.sqrt(k) * np.diagonal(self.rho, offset=-1)))

    def mean_a2(self) -> complex:
        k = np.arange(2, self.dim)
        return complex(np.sum(np.sqrt(k * (k - 1)) * np.diagonal(self.rho, offset=-2)))

    @classmethod
    def vacuum(cls, dim: int) -> "CavityState":
        return cls.fock(dim, 0)

    @classmethod
    def fock(cls, dim: int, k: int) -> "CavityState":
        rho = np.zeros((dim, dim), dtype=complex)
        rho[k, k] = 1.0
        return cls(rho)

    @classmethod
    def thermal(cls, dim: int, n_mean: float) -> "CavityState":
        """Thermal state renormalized on the truncated space."""
        k = np.arange(dim)
        if n_mean == 0:
            p = (k == 0).astype(float)
        else:
            p = stats.geom.pmf(k + 1, 1.0 / (1.0 + n_mean))
        return cls(np.diag(p / p.sum()).astype(complex))

    @classmethod
    def coherent(cls, dim: int, amplitude: complex) -> "CavityState":
        k = np.arange(dim)
        logc = -0.5 * abs(amplitude) ** 2 - 0.5 * np.array([math.lgamma(j + 1) for j in k])
        if amplitude == 0:
            psi = (k == 0).astype(complex)
        else:
            psi = np.exp(logc + k * np.log(complex(amplitude)))
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))


def auto_fock_dim(n_ss: float, cap: int = 400) -> int:
    """Smallest comfortable truncation for a displaced thermal state of mean ``n_ss``."""
    n_ss = max(0.0, float(n_ss))
    d = int(math.ceil(n_ss + 8.0 * math.sqrt(n_ss) + 12.0))
    if d > cap:
        raise InvalidDimensionError(f"required Fock dimension {d} exceeds cap {cap}")
    return max(d, 2)
