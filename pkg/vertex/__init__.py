"""Lattice vertex algebras on truncated Fock spaces"""

from vertex.lattice import EvenLattice, load_lattice_config, resolve_lattice
from vertex.fock import FockSpace, FockState, Piece
from vertex.modes import ModeOp, OpMatrix, general_mode, heisenberg, mode_matrix, vertex_mode
from vertex.virasoro import virasoro, virasoro_matrix
from vertex.integral import IntegralForm, h_basis_lattice, integral_closure
from vertex.series import OperatorSeries, exp_zero_mode, null_root_curve
from vertex.checks import build_space, check_lattice_va, check_power_modes, verify_commutators

__all__ = [
    'EvenLattice',
    'load_lattice_config',
    'resolve_lattice',
    'FockSpace',
    'FockState',
    'Piece',
    'ModeOp',
    'OpMatrix',
    'general_mode',
    'heisenberg',
    'mode_matrix',
    'vertex_mode',
    'virasoro',
    'virasoro_matrix',
    'IntegralForm',
    'h_basis_lattice',
    'integral_closure',
    'OperatorSeries',
    'exp_zero_mode',
    'null_root_curve',
    'build_space',
    'check_lattice_va',
    'check_power_modes',
    'verify_commutators',
]
