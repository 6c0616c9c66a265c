"""
Fock space of a lattice vertex algebra: states, graded pieces and their monomial bases

A state is a finite sum of f * e^beta with f a polynomial in the oscillators x_(i,k),
where x_(i,k) stands for b_i(k) applied to e^beta (k > 0 raises the weight by k).
"""
import logging
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.rings import ring

from core.partitions import colored_partition_count, partitions_of
from vertex.lattice import EvenLattice, Vector
from utils.constants import ErrorCode
from utils.errors import VerificationError

logger = logging.getLogger("zlift")

Exponents = Tuple[int, ...]


def qq(c) -> object:
    """Exact scalar (int, Fraction or ground element) as an element of QQ"""
    if isinstance(c, Fraction):
        return QQ(c.numerator, c.denominator)
    return QQ(c)


def as_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


class Piece(NamedTuple):
    """Graded piece of sector beta and L_0-weight w"""
    sector: Vector
    weight: int

    def __str__(self) -> str:
        return f"({','.join(map(str, self.sector))};{self.weight})"


class FockState:
    """sum over sectors beta of f_beta e^beta"""

    __slots__ = ["terms"]

    def __init__(self, terms: Optional[Dict[Vector, object]] = None):
        self.terms: Dict[Vector, object] = {}
        for beta, poly in (terms or {}).items():
            if poly:
                self.terms[tuple(beta)] = poly

    def __add__(self, other: 'FockState') -> 'FockState':
        out = dict(self.terms)
        for beta, poly in other.terms.items():
            out[beta] = out[beta] + poly if beta in out else poly
        return FockState(out)

    def __sub__(self, other: 'FockState') -> 'FockState':
        return self + other.scale(-1)

    def scale(self, c) -> 'FockState':
        c = qq(c)
        return FockState({beta: poly * c for beta, poly in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockState):
            return False
        return (self - other).is_zero()

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def __repr__(self) -> str:
        body = " + ".join(f"({poly})e^{beta}" for beta, poly in sorted(self.terms.items())) or "0"
        return f"FockState({body})"


class FockSpace:
    """Oscillator ring, graded pieces within a sector window and weight bound

    Oscillator modes run up to `mode_bound`; anything needing a higher mode raises
    OUT_OF_WINDOW. The default bound leaves room for operators moving a state `reach`
    sector steps outside the window and raising its weight by `margin`.
    """

    def __init__(self, lattice: EvenLattice, sector_window: Optional[int] = None,
                 weight_bound: Optional[int] = None, mode_bound: Optional[int] = None, margin: int = 4,
                 reach: int = 2):
        self.lattice = lattice
        self.rank = lattice.rank
        self.sector_window = lattice.sector_window if sector_window is None else sector_window
        self.weight_bound = lattice.weight_bound if weight_bound is None else weight_bound
        if self.sector_window < 0:
            raise VerificationError(ErrorCode.EMPTY_WINDOW, f"negative sector window {self.sector_window}")
        self.sector_list = lattice.sectors(self.sector_window)
        if mode_bound is None:
            lowest = min(lattice.ground_weight(b) for b in lattice.sectors(self.sector_window + reach))
            mode_bound = max(1, self.weight_bound - lowest + margin)
        self.mode_bound = mode_bound
        names = [f"x{i}_{k}" for i in range(self.rank) for k in range(1, mode_bound + 1)] + ["u"]
        self.ring, *gens = ring(",".join(names), QQ)
        self.u = gens[-1]
        self.u_index = len(gens) - 1
        self._vars = {}
        self._mode_of: List[Tuple[int, int]] = []
        for pos, (i, k) in enumerate((i, k) for i in range(self.rank) for k in range(1, mode_bound + 1)):
            self._vars[(i, k)] = gens[pos]
            self._mode_of.append((i, k))
        self._basis_cache: Dict[Piece, List[Exponents]] = {}
        logger.debug(f"FockSpace {lattice.name}: window {self.sector_window}, weight <= {self.weight_bound}, "
                     f"modes <= {mode_bound}")

    # oscillators

    def var(self, i: int, k: int):
        if k > self.mode_bound:
            raise VerificationError(ErrorCode.OUT_OF_WINDOW, f"oscillator mode {k} exceeds bound {self.mode_bound}")
        return self._vars[(i, k)]

    def has_var(self, i: int, k: int) -> bool:
        return 1 <= k <= self.mode_bound

    def mode_of(self, position: int) -> Tuple[int, int]:
        return self._mode_of[position]

    def direction(self, gamma: Sequence[int], k: int):
        """gamma(k) for k > 0 as a linear form in the x_(i,k)"""
        out = self.ring.zero
        for i, c in enumerate(gamma):
            if c:
                out += c * self.var(i, k)
        return out

    def oscillator_weight(self, monom: Exponents) -> int:
        return sum(e * self._mode_of[pos][1] for pos, e in enumerate(monom[:self.u_index]) if e)

    # states

    def vacuum(self) -> FockState:
        return self.ground((0,) * self.rank)

    def ground(self, beta: Sequence[int]) -> FockState:
        return FockState({tuple(beta): self.ring.one})

    def state(self, beta: Sequence[int], poly) -> FockState:
        return FockState({tuple(beta): poly})

    def components(self, state: FockState) -> Iterator[Tuple[Vector, int, object]]:
        """Homogeneous pieces (sector, weight, polynomial) of a state"""
        for beta, poly in sorted(state.items()):
            by_weight: Dict[int, Dict] = {}
            g = self.lattice.ground_weight(beta)
            for monom, c in poly.items():
                by_weight.setdefault(g + self.oscillator_weight(monom), {})[monom] = c
            for w in sorted(by_weight):
                yield beta, w, self.ring(by_weight[w])

    def weight_of(self, beta: Sequence[int], monom: Exponents) -> int:
        return self.lattice.ground_weight(beta) + self.oscillator_weight(monom)

    # pieces

    @property
    def pieces(self) -> List[Piece]:
        out = []
        for beta in self.sector_list:
            for w in range(self.lattice.ground_weight(beta), self.weight_bound + 1):
                out.append(Piece(beta, w))
        return out

    def in_window(self, piece: Piece) -> bool:
        return (all(abs(c) <= self.sector_window for c in piece.sector)
                and self.lattice.ground_weight(piece.sector) <= piece.weight <= self.weight_bound)

    def fits_modes(self, piece: Piece) -> bool:
        """Piece is empty or its monomials only need oscillator modes up to mode_bound"""
        return piece.weight - self.lattice.ground_weight(piece.sector) <= self.mode_bound

    def basis(self, piece: Piece) -> List[Exponents]:
        """Oscillator monomials of the piece, highest modes first"""
        cached = self._basis_cache.get(piece)
        if cached is None:
            m = piece.weight - self.lattice.ground_weight(piece.sector)
            cached = sorted(_colored_monomials(self.rank, m, self.mode_bound, self.u_index + 1), reverse=True)
            self._basis_cache[piece] = cached
        return cached

    def dimension(self, piece: Piece) -> int:
        return len(self.basis(piece))

    def expected_dimension(self, piece: Piece) -> int:
        return colored_partition_count(self.rank, piece.weight - self.lattice.ground_weight(piece.sector))

    def basis_state(self, piece: Piece, j: int) -> FockState:
        return self.state(piece.sector, self.ring({self.basis(piece)[j]: QQ(1)}))

    def vector(self, state: FockState, piece: Piece) -> List[Fraction]:
        """Coordinates of a state lying in the piece"""
        basis = self.basis(piece)
        index = {m: j for j, m in enumerate(basis)}
        vec = [Fraction(0)] * len(basis)
        for beta, poly in state.items():
            for monom, c in poly.items():
                j = index.get(monom) if beta == piece.sector else None
                if j is None:
                    raise ValueError(f"state has a component outside piece {piece}")
                vec[j] = as_fraction(c)
        return vec

    def from_vector(self, piece: Piece, vec: Sequence) -> FockState:
        terms = {m: qq(Fraction(c)) for m, c in zip(self.basis(piece), vec) if c}
        return self.state(piece.sector, self.ring(terms))


def _colored_monomials(rank: int, m: int, mode_bound: int, length: int) -> List[Exponents]:
    """Exponent vectors of monomials of oscillator weight m in rank colors"""
    out = []
    for lam in partitions_of(m):
        if lam.parts and lam.parts[0] > mode_bound:
            raise VerificationError(ErrorCode.OUT_OF_WINDOW, f"weight {m} needs oscillator modes beyond {mode_bound}")
        per_part = []
        for k, mult in enumerate(lam.exponents, start=1):
            if mult:
                per_part.append((k, _compositions(mult, rank)))
        for choice in product(*(options for _, options in per_part)):
            exps = [0] * length
            for (k, _), split in zip(per_part, choice):
                for i, e in enumerate(split):
                    exps[i * mode_bound + (k - 1)] += e
            out.append(tuple(exps))
    return out


@lru_cache(maxsize=None)
def _compositions(total: int, slots: int) -> Tuple[Tuple[int, ...], ...]:
    """Weak compositions of total into `slots` parts"""
    if slots == 1:
        return ((total,),)
    out = []
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, slots - 1):
            out.append((first,) + rest)
    return tuple(out)

