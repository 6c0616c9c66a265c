"""
Virasoro operators of the Heisenberg part, L_n = 1/2 sum_ij G^ij sum_m :b_i(m) b_j(n-m):
"""
from fractions import Fraction
from typing import List, Tuple

from vertex.fock import FockSpace, FockState, Piece
from vertex.modes import OpMatrix, heisenberg, operator_matrix


def boson(space: FockSpace, i: int, m: int, state: FockState) -> FockState:
    """b_i(m) in the weight-lowering convention: m > 0 annihilates, m < 0 creates"""
    return heisenberg(space, space.lattice.basis_vector(i), -m, state)


def virasoro(space: FockSpace, n: int, state: FockState) -> FockState:
    """L_n on a state; c = rank, L_0 e^beta = beta^2/2 e^beta and L_-1 = D"""
    ginv = space.lattice.inverse_gram
    rank = space.rank
    bound = space.mode_bound
    out = FockState()
    for m in range(n - bound, bound + 1):
        right = max(m, n - m)
        left = n - right
        for j in range(rank):
            first = boson(space, j, right, state)
            if first.is_zero():
                continue
            for i in range(rank):
                if ginv[i][j]:
                    out = out + boson(space, i, left, first).scale(ginv[i][j])
    return out.scale(Fraction(1, 2))


def central_term(space: FockSpace, m: int, n: int):
    """C(m+1, 3) c/2 when m + n = 0"""
    if m + n:
        return 0
    return Fraction((m + 1) * m * (m - 1) * space.rank, 12)


def virasoro_matrix(space: FockSpace, n: int, piece: Piece) -> OpMatrix:
    """Matrix of L_n from a piece to the piece of weight lowered by n"""
    return operator_matrix(space, lambda s: virasoro(space, n, s), piece, Piece(piece.sector, piece.weight - n))


def omega_pairs(indices: List[int]) -> List[Tuple[str, str]]:
    """omega(L_m) = -L_(-m), omega(c) = -c"""
    return [(f"L_{m}", f"-L_{-m}") for m in indices] + [("c", "-c")]
