"""Cavity mode on a truncated Fock space: maps, master equation, steady states."""
from .dynamics import (
    Trajectory,
    evolve,
    fock_dim_for,
    steady_state_moments,
    steady_state_nullspace,
    steady_state_numeric,
    steady_state_second_moment,
)
from .fock import CavityState, FockSpace, auto_fock_dim, build_fock, tail_mass
from .master import Generator, lindblad_rhs
from .propagator import (
    JointUnitary,
    exact_map,
    joint_unitary,
    markov_step,
    single_atom_unitary,
    superoperator_second_order,
)

__all__ = [
    "CavityState", "FockSpace", "Generator", "JointUnitary", "Trajectory",
    "auto_fock_dim", "build_fock", "evolve", "exact_map", "fock_dim_for", "joint_unitary",
    "lindblad_rhs", "markov_step", "single_atom_unitary", "steady_state_moments",
    "steady_state_nullspace", "steady_state_numeric", "steady_state_second_moment",
    "superoperator_second_order", "tail_mass",
]
