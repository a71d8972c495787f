"""Lindblad generator of the cavity under the effective reservoir."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..reservoir import ReservoirCoefficients
from .fock import CavityState, FockSpace


@dataclass(frozen=True)
class Generator:
    """Precomputed operators for repeated right-hand-side evaluations."""

    space: FockSpace
    H: np.ndarray
    gain: float
    loss: float
    mu: complex

    @classmethod
    def build(cls, coeffs: ReservoirCoefficients, space: FockSpace, include_heff: bool = False):
        a, ad = space.a, space.ad
        F = coeffs.drive_strength
        H = F * ad + np.conj(F) * a
        if include_heff:
            H = H + coeffs.push_pull * (a @ ad) + coeffs.const_shift * space.identity
        return cls(space=space, H=H, gain=coeffs.gain, loss=coeffs.loss, mu=coeffs.mu)

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        sp = self.space
        a, ad = sp.a, sp.ad
        aad = a @ ad
        ada = ad @ a
        H = self.H
        out = -1j * (H @ rho - rho @ H)
        if self.gain:
            out += self.gain * (2.0 * ad @ rho @ a - aad @ rho - rho @ aad)
        if self.loss:
            out += self.loss * (2.0 * a @ rho @ ad - ada @ rho - rho @ ada)
        if self.mu:
            a2 = a @ a
            ad2 = ad @ ad
            out += self.mu * (2.0 * a @ rho @ a - a2 @ rho - rho @ a2)
            out += np.conj(self.mu) * (2.0 * ad @ rho @ ad - ad2 @ rho - rho @ ad2)
        return out

    def superoperator(self) -> np.ndarray:
        """Dense matrix of the generator acting on column-stacked ``vec(rho)``.

        Uses ``vec(A rho B) = (B^T kron A) vec(rho)``.
        """
        sp = self.space
        a, ad = sp.a, sp.ad
        eye = sp.identity

        def sandwich(left, right):
            return np.kron(right.T, left)

        def anti(op):
            return np.kron(eye, op) + np.kron(op.T, eye)

        L = -1j * (np.kron(eye, self.H) - np.kron(self.H.T, eye))
        L += self.gain * (2.0 * sandwich(ad, a) - anti(a @ ad))
        L += self.loss * (2.0 * sandwich(a, ad) - anti(ad @ a))
        if self.mu:
            L += self.mu * (2.0 * sandwich(a, a) - anti(a @ a))
            L += np.conj(self.mu) * (2.0 * sandwich(ad, ad) - anti(ad @ ad))
        return L


def lindblad_rhs(cavity, coeffs: ReservoirCoefficients, include_heff: bool = False) -> np.ndarray:
    """``d rho / dt`` of the cavity master equation.

    The drive ``g N_pair (alpha a^dag + alpha* a)`` is always present; the
    frequency pushing/pulling part of H_eff only with ``include_heff``.
    """
    rho = cavity.rho if isinstance(cavity, CavityState) else np.asarray(cavity, dtype=complex)
    return Generator.build(coeffs, FockSpace(rho.shape[0]), include_heff)(rho)
