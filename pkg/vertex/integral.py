"""
Integral form of a lattice vertex algebra, built per graded piece as the closure of the
ground states e^beta under integral generator modes
"""
import logging
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from core.lattice import IntLatticeBasis, RationalLattice
from vertex.fock import FockSpace, FockState, Piece
from vertex.lattice import add
from vertex.modes import ModeOp, OpMatrix, h_polynomial, mode_matrix
from utils.cache import CacheStore
from utils.constants import TOOLKIT_VERSION, ErrorCode, Membership, ModeKind
from utils.errors import VerificationError

logger = logging.getLogger("zlift")

_SEVERITY = {Membership.MEMBER: 0, Membership.NOT_IN_LATTICE: 1, Membership.DENOMINATOR: 2}


def default_generators(space: FockSpace, piece: Piece) -> List[ModeOp]:
    """Modes e^(+-b_i)_n and h_n(b_i), n >= 1, whose target piece stays in the window"""
    lat = space.lattice
    ops = []
    for i in range(space.rank):
        for sign in (1, -1):
            alpha = lat.basis_vector(i, sign)
            target_sector = add(piece.sector, alpha)
            if not all(abs(c) <= space.sector_window for c in target_sector):
                continue
            norm = lat.norm(alpha)
            # e^alpha_n lands in weight w + alpha^2/2 - n - 1
            for target_weight in range(lat.ground_weight(target_sector), space.weight_bound + 1):
                ops.append(ModeOp(ModeKind.VERTEX, piece.weight + norm // 2 - 1 - target_weight, alpha))
        for n in range(1, space.weight_bound - piece.weight + 1):
            ops.append(ModeOp(ModeKind.H_GEN, n, lat.basis_vector(i)))
    return ops


class IntegralForm:
    """Per-piece lattices Lambda(beta, w) in the coordinates of the piece's monomial basis"""

    def __init__(self, space: FockSpace, lattices: Dict[Piece, RationalLattice], rounds: int = 0,
                 outside: Optional[Callable[[Piece], RationalLattice]] = None):
        self.space = space
        self.lattices = lattices
        self.rounds = rounds
        self.outside = outside
        self._outside: Dict[Piece, RationalLattice] = {}

    def lattice(self, piece: Piece) -> RationalLattice:
        if piece in self.lattices:
            return self.lattices[piece]
        if self.outside is None:
            raise VerificationError(ErrorCode.OUT_OF_WINDOW, f"piece {piece} is outside the window")
        if piece not in self._outside:
            self._outside[piece] = self.outside(piece)
        return self._outside[piece]

    def extended(self) -> 'IntegralForm':
        """Same lattices on the window; pieces beyond it are filled in from the h-basis span"""
        def outside(piece: Piece) -> RationalLattice:
            return h_basis_lattice(self.space, [piece]).lattices[piece]

        return IntegralForm(self.space, self.lattices, self.rounds, outside)

    def classify_vector(self, piece: Piece, vec: Sequence) -> Membership:
        return self.lattice(piece).classify(vec)

    def classify(self, state: FockState) -> Membership:
        """Worst membership over the homogeneous components of a state"""
        worst = Membership.MEMBER
        for beta, w, poly in self.space.components(state):
            piece = Piece(beta, w)
            verdict = self.classify_vector(piece, self.space.vector(self.space.state(beta, poly), piece))
            if _SEVERITY[verdict] > _SEVERITY[worst]:
                worst = verdict
        return worst

    def contains(self, state: FockState) -> bool:
        return self.classify(state) is Membership.MEMBER

    def basis_states(self, piece: Piece) -> List[FockState]:
        return [self.space.from_vector(piece, v) for v in self.lattice(piece).basis()]

    def preserved_by(self, matrix: OpMatrix, factor: Fraction = Fraction(1)) -> Tuple[Membership, Optional[List[Fraction]]]:
        """Whether factor * matrix maps Lambda(source) into Lambda(target); returns the first offending image"""
        source = self.lattice(matrix.source)
        target = self.lattice(matrix.target)
        for vec in source.basis():
            image = [factor * x for x in matrix.apply(vec)]
            verdict = target.classify(image)
            if verdict is not Membership.MEMBER:
                return verdict, image
        return Membership.MEMBER, None

    def __eq__(self, other) -> bool:
        return isinstance(other, IntegralForm) and self.lattices == other.lattices

    def ranks(self) -> Dict[str, int]:
        return {str(p): lat.rank for p, lat in self.lattices.items()}


def _zero_lattice(dim: int) -> RationalLattice:
    return RationalLattice.from_generators([], dim)


def integral_closure(space: FockSpace, rounds: int = 12, seeds: Optional[Dict[Piece, List[List[Fraction]]]] = None,
                     generators=default_generators) -> IntegralForm:
    """Close Z-spans of the seeds under the generator modes until no piece grows

    Seeds default to e^beta in every ground piece. NOT_STABILIZED if some piece still
    grows after `rounds` rounds.
    """
    pieces = space.pieces
    lattices = {p: _zero_lattice(space.dimension(p)) for p in pieces}
    if seeds is None:
        seeds = {Piece(b, space.lattice.ground_weight(b)): [[Fraction(1)]] for b in space.sector_list}
    for piece, vecs in seeds.items():
        lattices[piece] = lattices[piece].add(vecs)

    matrices: Dict[Tuple[Piece, ModeOp], OpMatrix] = {}
    ops = {p: generators(space, p) for p in pieces}
    grown = set(seeds)
    for round_no in range(1, rounds + 1):
        pending: Dict[Piece, List[List[Fraction]]] = {}
        for piece in pieces:
            if piece not in grown or not lattices[piece].rank:
                continue
            for op in ops[piece]:
                key = (piece, op)
                if key not in matrices:
                    matrices[key] = mode_matrix(space, op, piece)
                m = matrices[key]
                target = lattices[m.target]
                for vec in lattices[piece].basis():
                    image = m.apply(vec)
                    if any(image) and not target.membership(image):
                        pending.setdefault(m.target, []).append(image)
        if not pending:
            logger.debug(f"integral form of {space.lattice.name} stable after {round_no} rounds")
            return IntegralForm(space, lattices, round_no)
        grown = set()
        for piece, vecs in pending.items():
            lattices[piece] = lattices[piece].add(vecs)
            grown.add(piece)
        logger.debug(f"closure round {round_no}: {len(grown)} pieces grew")
    raise VerificationError(
        ErrorCode.NOT_STABILIZED,
        f"integral form still growing after {rounds} rounds",
        {"pieces": ", ".join(sorted(str(p) for p in grown))},
    )


def h_basis_lattice(space: FockSpace, pieces: Optional[Sequence[Piece]] = None) -> IntegralForm:
    """Span of prod h_(k)(b_i) e^beta over colored partitions: the integral form in closed form"""
    lattices = {}
    for piece in (space.pieces if pieces is None else pieces):
        m = piece.weight - space.lattice.ground_weight(piece.sector)
        vectors = []
        for monom in space.basis(piece):
            poly = space.ring.one
            for pos, e in enumerate(monom[:space.u_index]):
                if e:
                    i, k = space.mode_of(pos)
                    poly = poly * h_polynomial(space, space.lattice.basis_vector(i), k) ** e
            vectors.append(space.vector(space.state(piece.sector, poly), piece))
        lattices[piece] = RationalLattice.from_generators(vectors, space.dimension(piece))
        logger.debug(f"h-basis piece {piece}: oscillator weight {m}, rank {len(vectors)}")
    return IntegralForm(space, lattices)


def form_payload(form: IntegralForm) -> Dict:
    """JSON-ready per-piece HNF bases; pieces sorted so equal forms serialize identically"""
    pieces = []
    for piece in sorted(form.lattices):
        lat = form.lattices[piece]
        pieces.append({
            "sector": list(piece.sector), "weight": piece.weight, "dim": lat.ambient_dim,
            "denominator": lat.denominator, "basis": [list(col) for col in lat.lattice.basis],
        })
    return {"rounds": form.rounds, "pieces": pieces}


def form_from_payload(space: FockSpace, payload: Dict) -> IntegralForm:
    lattices = {}
    for entry in payload["pieces"]:
        piece = Piece(tuple(entry["sector"]), entry["weight"])
        lattices[piece] = RationalLattice(IntLatticeBasis(entry["dim"], entry["basis"]), entry["denominator"])
    return IntegralForm(space, lattices, payload["rounds"])


def cached_closure(space: FockSpace, rounds: int = 12, cache: Optional[CacheStore] = None) -> IntegralForm:
    """integral_closure keyed by the gram matrix and window; cache hits rebuild the same bases"""
    if cache is None:
        return integral_closure(space, rounds)
    params = {
        "gram": [list(row) for row in space.lattice.gram], "window": space.sector_window,
        "weight": space.weight_bound, "mode_bound": space.mode_bound, "rounds": rounds,
        "toolkit": TOOLKIT_VERSION,
    }
    payload = cache.get_or_compute("integral-closure", params,
                                   lambda: form_payload(integral_closure(space, rounds)))
    return form_from_payload(space, payload)
