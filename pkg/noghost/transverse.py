"""
Transverse spaces T_beta = {v of L_0-weight 1 : L_i v = 0 = gamma(-i) v for i > 0}, their
intersection with the integral form and the Gram determinant of the contravariant form
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import Matrix, factorint

from core.lattice import IntegerSystem, RationalLattice
from vertex.fock import FockSpace, FockState, Piece, as_fraction
from vertex.integral import h_basis_lattice
from vertex.lattice import EvenLattice
from vertex.modes import OpMatrix, heisenberg, operator_matrix
from vertex.virasoro import virasoro
from utils.constants import ErrorCode
from utils.errors import VerificationError
from utils.report import Report

logger = logging.getLogger("zlift")


@dataclass
class TransverseLattice:
    """T_beta intersected with Lambda, in coordinates of the monomial basis of the weight 1 piece"""
    sector: Tuple[int, ...]
    gamma: Tuple[int, ...]
    piece: Piece
    basis: List[List[Fraction]]
    gram: List[List[int]]
    rational_dimension: int
    virasoro_dimension: int

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def lattice(self) -> RationalLattice:
        return RationalLattice.from_generators(self.basis, len(self.basis[0]) if self.basis else 0)

    @property
    def determinant(self) -> int:
        if not self.gram:
            return 1
        return int(Matrix(self.gram).det(method="bareiss"))


def transverse_space(lattice: EvenLattice, beta: Sequence[int]) -> FockSpace:
    """Smallest Fock space holding the weight 1 piece of sector beta"""
    osc = 1 - lattice.ground_weight(beta)
    window = max(1, max(abs(c) for c in beta))
    return FockSpace(lattice, sector_window=window, weight_bound=1, mode_bound=max(2, osc + 1))


def _constraints(space: FockSpace, beta: Tuple[int, ...], gamma: Tuple[int, ...],
                 piece: Piece, with_gamma: bool) -> List[OpMatrix]:
    ground = space.lattice.ground_weight(beta)
    ops: List[Tuple[Callable[[FockState], FockState], int]] = []
    for i in range(1, piece.weight - ground + 1):
        ops.append((lambda s, i=i: virasoro(space, i, s), i))
        if with_gamma:
            # gamma(-i) lowers the weight by i
            ops.append((lambda s, i=i: heisenberg(space, gamma, -i, s), i))
    return [operator_matrix(space, fn, piece, Piece(beta, piece.weight - drop)) for fn, drop in ops]


def _rational_kernel_dimension(matrices: List[OpMatrix], dim: int) -> int:
    if not matrices:
        return dim
    stacked = Matrix.vstack(*[m.to_matrix() for m in matrices])
    return dim - stacked.rank()


def _integer_row(values: Sequence[Fraction]) -> Dict[int, int]:
    d = 1
    for v in values:
        d = lcm(d, v.denominator)
    return {j: int(v * d) for j, v in enumerate(values) if v}


def pairing(space: FockSpace, u: FockState, v: FockState, beta: Tuple[int, ...]) -> Fraction:
    """<u, v> with b_i(k) adjoint to b_i(-k) and <e^beta, e^beta> = 1"""
    total = Fraction(0)
    poly = u.terms.get(beta)
    if poly is None:
        return total
    for monom, c in poly.items():
        state = v
        for pos, e in enumerate(monom[:space.u_index]):
            if e:
                i, k = space.mode_of(pos)
                for _ in range(e):
                    state = heisenberg(space, space.lattice.basis_vector(i), -k, state)
        image = state.terms.get(beta)
        if image is not None:
            const = image.get(space.ring.zero_monom)
            if const:
                total += as_fraction(c) * as_fraction(const)
    return total


def transverse_lattice(space: FockSpace, beta: Sequence[int], gamma: Sequence[int]) -> TransverseLattice:
    """Solve for T_beta in the weight 1 piece, intersect with Lambda and take the Gram matrix

    EMPTY_WINDOW if beta^2/2 > 1 or the piece is outside the window, DEGENERATE if (beta, gamma) = 0.
    """
    lat = space.lattice
    beta, gamma = tuple(beta), tuple(gamma)
    if lat.norm(gamma) != 0 or not any(gamma):
        raise VerificationError(ErrorCode.CONFIG_INVALID, f"{gamma} is not a nonzero norm 0 vector")
    if lat.inner(beta, gamma) == 0:
        raise VerificationError(ErrorCode.DEGENERATE, f"(beta, gamma) = 0 for beta={beta}, gamma={gamma}")
    piece = Piece(beta, 1)
    if lat.ground_weight(beta) > 1 or not space.in_window(piece):
        raise VerificationError(ErrorCode.EMPTY_WINDOW, f"no weight 1 piece in sector {beta}",
                                {"ground_weight": lat.ground_weight(beta)})

    dim = space.dimension(piece)
    constraints = _constraints(space, beta, gamma, piece, with_gamma=True)
    rational_dim = _rational_kernel_dimension(constraints, dim)
    virasoro_dim = _rational_kernel_dimension(_constraints(space, beta, gamma, piece, with_gamma=False), dim)

    lam_basis = h_basis_lattice(space, [piece]).lattice(piece).basis()
    system = IntegerSystem(len(lam_basis))
    for m in constraints:
        images = [m.apply(b) for b in lam_basis]
        for r in range(len(m.columns[0]) if m.columns else 0):
            system.add_equation(_integer_row([img[r] for img in images]))
    _, kernel = system.solve()
    basis = [[sum((c * b[j] for c, b in zip(coeffs, lam_basis)), Fraction(0)) for j in range(dim)]
             for coeffs in kernel]

    states = [space.from_vector(piece, v) for v in basis]
    gram = []
    for u in states:
        row = []
        for v in states:
            value = pairing(space, u, v, beta)
            if value.denominator != 1:
                raise VerificationError(ErrorCode.NON_INTEGRAL, f"contravariant form takes value {value} on T_{beta}")
            row.append(int(value))
        gram.append(row)
    logger.debug(f"T_{beta} for gamma={gamma}: rank {len(basis)} of {dim}, Q-dimension {rational_dim}")
    return TransverseLattice(beta, gamma, piece, basis, gram, rational_dim, virasoro_dim)


def transverse_defects(space: FockSpace, tl: TransverseLattice) -> List[int]:
    """Basis vectors breaking one of the defining conditions"""
    bad = []
    for k, v in enumerate(tl.basis):
        for m in _constraints(space, tl.sector, tl.gamma, tl.piece, with_gamma=True):
            if any(m.apply(v)):
                bad.append(k)
                break
    return bad


def discriminant_report(space: FockSpace, beta: Sequence[int], gammas: Iterable[Sequence[int]],
                        report: Optional[Report] = None) -> Report:
    """Gram determinants of T_beta over several gamma; every prime of d_gamma must divide (beta, gamma)"""
    beta = tuple(beta)
    report = report or Report(suite="noghost", params={"beta": beta})
    label = ",".join(map(str, beta))
    dets = []
    pairings = []
    for gamma in gammas:
        gamma = tuple(gamma)
        glabel = ",".join(map(str, gamma))

        def one(gamma=gamma):
            tl = transverse_lattice(space, beta, gamma)
            d = tl.determinant
            t = space.lattice.inner(beta, gamma)
            primes = sorted(factorint(abs(d))) if d else []
            stray = [p for p in primes if t % p]
            defects = transverse_defects(space, tl)
            dets.append(d)
            pairings.append(t)
            return d != 0 and not stray and not defects and tl.rank == tl.rational_dimension, {
                "det": d, "t": t, "primes": primes, "stray_primes": stray, "rank": tl.rank,
                "rational_dimension": tl.rational_dimension, "defects": defects,
            }

        report.run(f"transverse.({label}).({glabel})", one)
    g = 0
    for d in dets:
        g = gcd(g, d)
    report.add(f"discriminant.({label})", bool(dets),
               {"determinants": dets, "pairings": pairings, "gcd": g, "unimodular": g == 1})
    return report
