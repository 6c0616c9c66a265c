"""
Mode operators on the Fock space: Heisenberg modes, vertex operator coefficients,
divided translations, h_n generators and the modes of arbitrary states
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Dict, List, Sequence, Tuple

from sympy import Matrix

from core.symmetric import h_sequence
from vertex.fock import FockSpace, FockState, Piece
from vertex.lattice import Vector, add
from utils.constants import ErrorCode, ModeKind
from utils.errors import VerificationError

logger = logging.getLogger("zlift")

StateMap = Callable[[FockState], FockState]


def heisenberg(space: FockSpace, gamma: Sequence[int], k: int, state: FockState) -> FockState:
    """gamma(k): multiplication for k > 0, (gamma, beta) on e^beta for k = 0,
    and k' sum_j (gamma, b_j) d/dx_(j,k') for k = -k' < 0"""
    lat = space.lattice
    out: Dict[Vector, object] = {}
    if k > 0:
        factor = space.direction(gamma, k)
        for beta, poly in state.items():
            out[beta] = poly * factor
    elif k == 0:
        for beta, poly in state.items():
            out[beta] = poly * lat.inner(gamma, beta)
    else:
        m = -k
        if m > space.mode_bound:
            return FockState()
        gv = lat.gram_vector(gamma)
        for beta, poly in state.items():
            acc = space.ring.zero
            for j, c in enumerate(gv):
                if c:
                    acc += poly.diff(space.var(j, m)) * (c * m)
            out[beta] = acc
    return FockState(out)


class HCache:
    """h_0(alpha), h_1(alpha), ... as oscillator polynomials, from the power sums alpha(k)"""

    def __init__(self, space: FockSpace):
        self.space = space
        self._tables: Dict[Vector, List] = {}

    def __call__(self, alpha: Sequence[int], d: int):
        alpha = tuple(alpha)
        table = self._tables.get(alpha)
        if table is None or len(table) <= d:
            if not any(alpha):
                table = [self.space.ring.one] + [self.space.ring.zero] * d
            else:
                sums = [self.space.direction(alpha, k) for k in range(1, d + 1)]
                table = h_sequence(sums, d, self.space.ring.one)
            self._tables[alpha] = table
        return table[d]


def _h(space: FockSpace):
    cache = getattr(space, "_h_cache", None)
    if cache is None:
        cache = HCache(space)
        space._h_cache = cache
    return cache


def h_polynomial(space: FockSpace, alpha: Sequence[int], n: int):
    """h_n(alpha): coefficient of z^n in exp(sum_k alpha(k) z^k / k)"""
    if n < 0:
        return space.ring.zero
    return _h(space)(alpha, n)


def shifted_expansion(space: FockSpace, poly, shifts: Sequence[int]) -> Dict[int, object]:
    """f(x_(j,k) - shifts_j u^k) = sum_e T_e u^e, as {e: T_e}"""
    pairs = []
    for pos, e_max in enumerate(_max_exponents(poly, space.u_index)):
        if not e_max:
            continue
        j, k = space.mode_of(pos)
        if shifts[j]:
            x = space.var(j, k)
            pairs.append((x, x - shifts[j] * space.u ** k))
    composed = poly.compose(pairs) if pairs else poly
    out: Dict[int, Dict] = {}
    for monom, c in composed.items():
        e = monom[space.u_index]
        stripped = monom[:space.u_index] + (0,) + monom[space.u_index + 1:]
        out.setdefault(e, {})[stripped] = c
    return {e: space.ring(terms) for e, terms in out.items()}


def _max_exponents(poly, length: int) -> List[int]:
    top = [0] * length
    for monom in poly.keys():
        for pos in range(length):
            if monom[pos] > top[pos]:
                top[pos] = monom[pos]
    return top


def vertex_mode(space: FockSpace, alpha: Sequence[int], n: int, state: FockState) -> FockState:
    """e^alpha_n (f e^beta) = eps(alpha, beta) sum_e h_(e-n-1-(alpha,beta))(alpha) T_e e^(alpha+beta)"""
    lat = space.lattice
    alpha = tuple(alpha)
    gv = lat.gram_vector(alpha)
    out = FockState()
    for beta, poly in state.items():
        ab = lat.inner(alpha, beta)
        acc = space.ring.zero
        for e, t in shifted_expansion(space, poly, gv).items():
            d = e - n - 1 - ab
            if d >= 0:
                acc += h_polynomial(space, alpha, d) * t
        if acc:
            out = out + space.state(add(alpha, beta), acc * lat.cocycle(alpha, beta))
    return out


def translation(space: FockSpace, state: FockState) -> FockState:
    """D: derivation with D x_(i,k) = k x_(i,k+1) and D e^beta = beta(1) e^beta"""
    out: Dict[Vector, object] = {}
    for beta, poly in state.items():
        acc = poly * space.direction(beta, 1) if any(beta) else space.ring.zero
        for pos, e_max in enumerate(_max_exponents(poly, space.u_index)):
            if not e_max:
                continue
            i, k = space.mode_of(pos)
            acc += poly.diff(space.var(i, k)) * space.var(i, k + 1) * k
        out[beta] = acc
    return FockState(out)


def divided_translation(space: FockSpace, n: int, state: FockState) -> FockState:
    """D^(n) = D^n / n!"""
    for _ in range(n):
        state = translation(space, state)
    return state.scale(Fraction(1, factorial(n)))


def h_generator(space: FockSpace, alpha: Sequence[int], n: int, state: FockState) -> FockState:
    """Multiplication by h_n(alpha)"""
    h = h_polynomial(space, alpha, n)
    return FockState({beta: poly * h for beta, poly in state.items()})


def general_mode(space: FockSpace, u: FockState, n: int, state: FockState) -> FockState:
    """u_n applied to a state, for any state u

    Oscillators of u are peeled off one at a time with
    (a_(-k) v)_n = sum_j C(k+j-1, j) (a_(-k-j) v_(n+j) - (-1)^k v_(n-k-j) a_j)
    where a = b_i and a_m acts as b_i(-m); e^alpha itself uses vertex_mode.
    """
    out = FockState()
    for alpha, poly in u.items():
        for monom, c in poly.items():
            out = out + _monomial_mode(space, alpha, monom, n, state).scale(c)
    return out


def _monomial_mode(space: FockSpace, alpha: Vector, monom, n: int, state: FockState) -> FockState:
    if state.is_zero():
        return state
    pos = next((p for p in range(space.u_index) if monom[p]), None)
    if pos is None:
        return vertex_mode(space, alpha, n, state)
    i, k = space.mode_of(pos)
    rest = monom[:pos] + (monom[pos] - 1,) + monom[pos + 1:]
    direction = space.lattice.basis_vector(i)
    v_weight = space.weight_of(alpha, rest)
    out = FockState()
    for beta, w, poly in space.components(state):
        comp = space.state(beta, poly)
        ground = space.lattice.ground_weight(add(alpha, beta))
        j = 0
        # v_(n+j) vanishes once the weight drops below the target ground weight
        while v_weight + w - n - j - 1 >= ground:
            inner = _monomial_mode(space, alpha, rest, n + j, comp)
            if not inner.is_zero():
                term = heisenberg(space, direction, k + j, inner)
                out = out + term.scale(comb(k + j - 1, j))
            j += 1
        sign = -1 if k % 2 == 0 else 1
        for j in range(0, space.mode_bound + 1):
            lowered = heisenberg(space, direction, -j, comp)
            if lowered.is_zero():
                continue
            term = _monomial_mode(space, alpha, rest, n - k - j, lowered)
            out = out + term.scale(sign * comb(k + j - 1, j))
    return out


def state_weight(space: FockSpace, u: FockState) -> int:
    weights = {w for _, w, _ in space.components(u)}
    if len(weights) != 1:
        raise ValueError("state is not homogeneous")
    return weights.pop()


@dataclass(frozen=True)
class ModeOp:
    """One operator of a mode family: HEISENBERG gamma(k), VERTEX e^alpha_n, DIV_TRANSLATION D^(n), H_GEN h_n(alpha)"""
    kind: ModeKind
    index: int
    vector: Tuple[int, ...] = ()

    def apply(self, space: FockSpace, state: FockState) -> FockState:
        if self.kind is ModeKind.HEISENBERG:
            return heisenberg(space, self.vector, self.index, state)
        if self.kind is ModeKind.VERTEX:
            return vertex_mode(space, self.vector, self.index, state)
        if self.kind is ModeKind.DIV_TRANSLATION:
            return divided_translation(space, self.index, state)
        return h_generator(space, self.vector, self.index, state)

    def target(self, space: FockSpace, piece: Piece) -> Piece:
        if self.kind is ModeKind.VERTEX:
            alpha = self.vector
            shift = space.lattice.norm(alpha) // 2 - self.index - 1
            return Piece(add(piece.sector, alpha), piece.weight + shift)
        return Piece(piece.sector, piece.weight + self.index)

    def __str__(self) -> str:
        vec = ",".join(map(str, self.vector))
        return {
            ModeKind.HEISENBERG: f"({vec})({self.index})",
            ModeKind.VERTEX: f"e^({vec})_{self.index}",
            ModeKind.DIV_TRANSLATION: f"D^({self.index})",
            ModeKind.H_GEN: f"h_{self.index}({vec})",
        }[self.kind]


@dataclass
class OpMatrix:
    """Matrix of an operator from one graded piece to another, columns indexed by the source basis"""
    source: Piece
    target: Piece
    columns: List[List[Fraction]]

    @property
    def shape(self) -> Tuple[int, int]:
        rows = len(self.columns[0]) if self.columns else 0
        return rows, len(self.columns)

    def to_matrix(self) -> Matrix:
        rows, cols = self.shape
        return Matrix(rows, cols, lambda r, c: self.columns[c][r])

    def apply(self, vec: Sequence[Fraction]) -> List[Fraction]:
        """Image of a source coordinate vector"""
        rows, _ = self.shape
        out = [Fraction(0)] * rows
        for c, x in zip(self.columns, vec):
            if x:
                for r in range(rows):
                    out[r] += x * c[r]
        return out


def operator_matrix(space: FockSpace, fn: StateMap, source: Piece, target: Piece) -> OpMatrix:
    if not space.in_window(target):
        raise VerificationError(ErrorCode.OUT_OF_WINDOW, f"target piece {target} is outside the window")
    columns = []
    for j in range(space.dimension(source)):
        image = fn(space.basis_state(source, j))
        columns.append(space.vector(image, target) if not image.is_zero() else [Fraction(0)] * space.dimension(target))
    return OpMatrix(source, target, columns)


def mode_matrix(space: FockSpace, op: ModeOp, piece: Piece) -> OpMatrix:
    """Matrix of a mode operator on a piece; OUT_OF_WINDOW when its target grading leaves the window"""
    return operator_matrix(space, lambda s: op.apply(space, s), piece, op.target(space, piece))
