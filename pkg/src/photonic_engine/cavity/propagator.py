"""Exact and second-order maps for one atom pair crossing the cavity.

The joint propagator is assembled entry by entry from single-atom blocks

    U_i = [[A_i, B_i],      A_i = cos(W_n t/2) - i d_i t/2 sinc(W_n t/2)
           [C_i, G_i]]      B_i = -i g t sinc(W_n t/2) a
                            C_i = -i g t sinc(W_{n-1} t/2) a^dag
                            G_i = cos(W_{n-1} t/2) + i d_i t/2 sinc(W_{n-1} t/2)

with ``u_{(k1 k2),(l1 l2)} = U1[k1, l1] @ U2[k2, l2]``.  Rabi frequencies are
scalar functions of the diagonal number operator.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ..atoms import AtomPairState
from ..errors import DimensionMismatchError
from ..reservoir import MARKOV_LIMIT, InteractionParams, detuning_envelope, sinc
from .fock import CavityState, FockSpace

TOP_LEVEL_MODES = ("closed", "open")


@dataclass(frozen=True)
class JointUnitary:
    U: np.ndarray
    g: float
    tau: float
    delta1: float
    delta2: float
    dim: int
    top_level: str
    unitarity_defect: float

    def block(self, i: int, j: int) -> np.ndarray:
        """Operator-valued entry ``u_ij`` (1-based, as in the atomic basis)."""
        d = self.dim
        return self.U[(i - 1) * d:i * d, (j - 1) * d:j * d]


def _single_atom_blocks(g, tau, delta, space: FockSpace, top_level: str):
    d = space.dim
    n = np.arange(d, dtype=float)
    # occupation of the partner level reached by emission; in "closed" mode the
    # top level has no partner, which is what the truncated Hamiltonian implies
    up = n + 1.0
    if top_level == "closed":
        up[-1] = 0.0
    w_up = np.sqrt(delta * delta + 4.0 * g * g * up) * tau / 2.0
    w_dn = np.sqrt(delta * delta + 4.0 * g * g * n) * tau / 2.0
    h = delta * tau / 2.0
    A = np.diag(np.cos(w_up) - 1j * h * sinc(w_up))
    G = np.diag(np.cos(w_dn) + 1j * h * sinc(w_dn))
    B = -1j * g * tau * (np.diag(sinc(w_up)) @ space.a)
    C = -1j * g * tau * (np.diag(sinc(w_dn)) @ space.ad)
    return A, B, C, G


def single_atom_unitary(g, tau, delta, space: FockSpace, top_level="closed") -> np.ndarray:
    """(2d)x(2d) propagator of one atom, basis ``(e, g) x Fock``."""
    A, B, C, G = _single_atom_blocks(g, tau, delta, space, top_level)
    return np.block([[A, B], [C, G]])


def joint_unitary(params: InteractionParams, space: FockSpace, *, delta2: float | None = None,
                  top_level: str = "closed") -> JointUnitary:
    if top_level not in TOP_LEVEL_MODES:
        raise ValueError(f"top_level must be one of {TOP_LEVEL_MODES}")
    g, tau = params.g, params.tau
    d1 = params.delta
    d2 = d1 if delta2 is None else delta2
    A1, B1, C1, G1 = _single_atom_blocks(g, tau, d1, space, top_level)
    A2, B2, C2, G2 = _single_atom_blocks(g, tau, d2, space, top_level)
    u = [
        [A1 @ A2, A1 @ B2, B1 @ A2, B1 @ B2],
        [A1 @ C2, A1 @ G2, B1 @ C2, B1 @ G2],
        [C1 @ A2, C1 @ B2, G1 @ A2, G1 @ B2],
        [C1 @ C2, C1 @ G2, G1 @ C2, G1 @ G2],
    ]
    U = np.block(u)
    defect = float(np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0]))))
    return JointUnitary(U=U, g=g, tau=tau, delta1=d1, delta2=d2, dim=space.dim,
                        top_level=top_level, unitarity_defect=defect)


def _cavity_matrix(cavity) -> np.ndarray:
    return cavity.rho if isinstance(cavity, CavityState) else np.asarray(cavity, dtype=complex)


def exact_map(cavity, atoms: AtomPairState, U: JointUnitary) -> CavityState:
    """``Tr_atoms[U (rho_a x rho_c) U^dag]``.

    The result is not re-validated: with ``top_level="open"`` probability
    leaks out of the top Fock level, visible as ``1 - trace``.
    """
    rho_c = _cavity_matrix(cavity)
    d = U.dim
    if rho_c.shape != (d, d):
        raise DimensionMismatchError(f"cavity dim {rho_c.shape} does not match unitary dim {d}")
    joint = U.U @ np.kron(atoms.rho, rho_c) @ U.U.conj().T
    out = np.einsum("iaib->ab", joint.reshape(4, d, 4, d))
    return CavityState(out, check=False)


def superoperator_second_order(cavity, atoms: AtomPairState, params: InteractionParams, *,
                               delta2: float | None = None, printed: bool = False) -> CavityState:
    """Expansion of the exact map through second order in ``g tau``.

    ``printed=True`` uses the published term list verbatim, including its
    ``a a^dag`` in the ``rho_44`` damping term and the sign of the
    ``rho_33`` ``a^dag rho a`` term; it is kept for comparison only and is
    neither trace preserving nor accurate at second order.
    """
    rho = _cavity_matrix(cavity)
    d = rho.shape[0]
    space = FockSpace(d)
    a, ad = space.a, space.ad
    if params.g_tau > MARKOV_LIMIT:
        warnings.warn(f"g*tau = {params.g_tau:.3g} outside the Markovian regime", stacklevel=2)
    r = atoms.rho
    eps = params.g_tau
    e2 = eps * eps
    tau = params.tau
    dl1 = params.delta
    dl2 = dl1 if delta2 is None else delta2
    env1 = detuning_envelope(dl1, tau)
    env2 = detuning_envelope(dl2, tau)
    D, E = env1.D, env2.D
    R = D + E
    s1 = float(sinc(dl1 * tau / 2.0))
    s2 = float(sinc(dl2 * tau / 2.0))
    ph1 = np.exp(-0.5j * dl1 * tau)
    ph2 = np.exp(-0.5j * dl2 * tau)

    aad = a @ ad
    ada = ad @ a
    a2 = a @ a
    ad2 = ad @ ad
    up = ad @ rho @ a      # a^dag rho a
    dn = a @ rho @ ad      # a rho a^dag
    cR = np.conj(R)

    if printed:
        t11 = rho - e2 * (cR * rho @ aad + R * aad @ rho - (s1 ** 2 + s2 ** 2) * up)
        t22 = rho - e2 * (E * rho @ aad + np.conj(D) * rho @ ada + np.conj(E) * aad @ rho
                          + D * ada @ rho - (s1 ** 2 * up + s2 ** 2 * dn))
        t33 = rho - e2 * (np.conj(E) * rho @ ada + D * rho @ aad + E * ada @ rho
                          + np.conj(D) * aad @ rho - (s1 ** 2 * dn) + s2 ** 2 * up)
        t44 = rho - e2 * (cR * aad @ rho + R * rho @ aad - (s1 ** 2 + s2 ** 2) * dn)
    else:
        t11 = rho - e2 * (R * aad @ rho + cR * rho @ aad - (s1 ** 2 + s2 ** 2) * up)
        x22 = D * aad + np.conj(E) * ada
        t22 = rho - e2 * (x22 @ rho + rho @ x22.conj().T - s1 ** 2 * up - s2 ** 2 * dn)
        x33 = np.conj(D) * ada + E * aad
        t33 = rho - e2 * (x33 @ rho + rho @ x33.conj().T - s1 ** 2 * dn - s2 ** 2 * up)
        t44 = rho - e2 * (cR * ada @ rho + R * rho @ ada - (s1 ** 2 + s2 ** 2) * dn)

    out = r[0, 0] * t11 + r[1, 1] * t22 + r[2, 2] * t33 + r[3, 3] * t44

    # single-excitation coherences: first order in g tau
    raise_c = rho @ ad - ad @ rho
    k_dag = (r[0, 1] * s2 * ph2 + r[0, 2] * s1 * ph1 + r[1, 3] * s1 * ph1 + r[2, 3] * s2 * ph2)
    first = 1j * eps * k_dag * raise_c
    out = out + first + first.conj().T

    # two-photon and exchange coherences
    two = e2 * s1 * s2 * r[0, 3] * ph1 * ph2 * (2.0 * ad @ rho @ ad - ad2 @ rho - rho @ ad2)
    out = out + two + two.conj().T
    if printed:
        x23 = up + dn - rho @ aad - ada @ rho
        x32 = up + dn - ada @ rho - rho @ aad
        ex = e2 * s1 * s2 * (r[1, 2] * ph1 * np.conj(ph2) * x23 + r[2, 1] * np.conj(ph1) * ph2 * x32)
        out = out + ex
    else:
        ex = e2 * s1 * s2 * r[1, 2] * ph1 * np.conj(ph2) * (up + dn - rho @ aad - ada @ rho)
        out = out + ex + ex.conj().T
    return CavityState(out, check=False)


def markov_step(cavity, atoms: AtomPairState, params: InteractionParams, dt: float, *,
                second_order: bool = True, space: FockSpace | None = None) -> np.ndarray:
    """One coarse-grained collision step ``rho + r_a dt (S - 1) rho`` plus cavity loss."""
    rho = _cavity_matrix(cavity)
    d = rho.shape[0]
    space = space or FockSpace(d)
    if second_order:
        s_rho = superoperator_second_order(rho, atoms, params).rho
    else:
        s_rho = exact_map(rho, atoms, joint_unitary(params, space)).rho
    a, ad = space.a, space.ad
    ada = ad @ a
    loss = 0.5 * params.kappa * (2.0 * a @ rho @ ad - rho @ ada - ada @ rho)
    return rho + params.r_a * dt * (s_rho - rho) + dt * loss
