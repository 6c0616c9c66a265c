"""
Operator-valued power series on the Fock space and their integrality on the integral form
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from vertex.fock import FockSpace, FockState, Piece
from vertex.integral import IntegralForm
from vertex.lattice import add
from vertex.modes import general_mode, vertex_mode
from utils.constants import ErrorCode, Membership
from utils.errors import VerificationError

logger = logging.getLogger("zlift")

# state, highest order wanted -> [c_0(state), ..., c_n(state)]
Expansion = Callable[[FockState, int], List[FockState]]


@dataclass
class OperatorSeries:
    """sum_n x^n c_n with each c_n an operator shifting sectors by n * step"""
    name: str
    order: int
    step: Tuple[int, ...]
    expand: Expansion
    meta: Dict[str, object] = field(default_factory=dict)

    def target(self, piece: Piece, n: int) -> Piece:
        return Piece(add(piece.sector, self.step, n), piece.weight)

    def coefficients(self, state: FockState, upto: Optional[int] = None) -> List[FockState]:
        return self.expand(state, self.order if upto is None else min(upto, self.order))


def exp_zero_mode(space: FockSpace, alpha: Sequence[int], order: int) -> OperatorSeries:
    """exp(x e^alpha_0) = sum_k x^k (e^alpha_0)^k / k! for a norm 2 vector alpha"""
    alpha = tuple(alpha)
    if space.lattice.norm(alpha) != 2:
        raise VerificationError(ErrorCode.CONFIG_INVALID, f"{alpha} does not have norm 2")

    def expand(state: FockState, upto: int) -> List[FockState]:
        out = [state]
        for k in range(1, upto + 1):
            out.append(vertex_mode(space, alpha, 0, out[-1]).scale(Fraction(1, k)))
        return out

    return OperatorSeries(f"exp(x e^{alpha}_0)", order, alpha, expand, {"alpha": alpha})


def null_root_curve(space: FockSpace, alpha: Sequence[int], gamma: Sequence[int], order: int) -> OperatorSeries:
    """exp(sum_(i>0) x^i/i (alpha(1) e^(i gamma))_0) for gamma of norm 0 and alpha orthogonal to gamma

    The exponential is expanded as sum_r X^r / r! with X = sum_i x^i/i O_i, without
    assuming the O_i commute.
    """
    lat = space.lattice
    alpha, gamma = tuple(alpha), tuple(gamma)
    if not any(gamma) or lat.norm(gamma) != 0:
        raise VerificationError(ErrorCode.CONFIG_INVALID, f"{gamma} is not a nonzero norm 0 vector")
    if lat.inner(alpha, gamma) != 0:
        raise VerificationError(ErrorCode.CONFIG_INVALID, f"{alpha} is not orthogonal to {gamma}")
    generators = {}

    def generator(i: int) -> FockState:
        if i not in generators:
            sector = tuple(i * g for g in gamma)
            generators[i] = space.state(sector, space.direction(alpha, 1))
        return generators[i]

    def expand(state: FockState, upto: int) -> List[FockState]:
        # powers[n] holds the x^n part of X^r applied to state
        powers: List[FockState] = [state] + [FockState() for _ in range(upto)]
        total = list(powers)
        for r in range(1, upto + 1):
            nxt = [FockState() for _ in range(upto + 1)]
            for n in range(r, upto + 1):
                acc = FockState()
                for i in range(1, n - r + 2):
                    prev = powers[n - i]
                    if not prev.is_zero():
                        acc = acc + general_mode(space, generator(i), 0, prev).scale(Fraction(1, i))
                nxt[n] = acc
            powers = nxt
            fact = Fraction(1, factorial(r))
            for n in range(r, upto + 1):
                total[n] = total[n] + powers[n].scale(fact)
        return total

    return OperatorSeries(f"exp(sum x^i/i ({alpha}(1)e^(i{gamma}))_0)", order, gamma, expand,
                          {"alpha": alpha, "gamma": gamma})


def covered_order(space: FockSpace, series: OperatorSeries, piece: Piece) -> int:
    """Largest n <= order with every target piece up to n inside the oscillator modes"""
    n = 0
    while n < series.order and space.fits_modes(series.target(piece, n + 1)):
        n += 1
    return n


def check_series_integrality(space: FockSpace, form: IntegralForm, series: OperatorSeries,
                             pieces: Sequence[Piece]) -> Dict[str, object]:
    """Apply every coefficient up to the series order to a Z-basis of Lambda on each piece

    Targets beyond the sector window are classified against form.extended(). Raises
    WINDOW_OVERFLOW when some piece cannot be followed to the full order and
    INTEGRALITY_VIOLATION on the first image outside Lambda.
    """
    uncovered = []
    for piece in pieces:
        reach = covered_order(space, series, piece)
        if reach < series.order:
            uncovered.append(f"{piece}>{reach}")
    if uncovered:
        raise VerificationError(ErrorCode.WINDOW_OVERFLOW,
                                f"{series.name}: targets need oscillator modes beyond {space.mode_bound}",
                                {"step": series.step, "uncovered": ", ".join(uncovered[:5])})
    lam = form if form.outside is not None else form.extended()
    checked = 0
    beyond = set()
    for piece in pieces:
        for state in lam.basis_states(piece):
            for n, image in enumerate(series.coefficients(state)):
                if image.is_zero():
                    checked += 1
                    continue
                target = series.target(piece, n)
                if not space.in_window(target):
                    beyond.add(target)
                verdict = lam.classify(image)
                checked += 1
                if verdict is not Membership.MEMBER:
                    raise VerificationError(
                        ErrorCode.INTEGRALITY_VIOLATION,
                        f"order {n} coefficient of {series.name} maps a Lambda basis vector of {piece} outside Lambda",
                        {"piece": piece, "order": n, "membership": verdict.value, "image": image},
                    )
    logger.debug(f"{series.name}: {checked} images in Lambda, {len(beyond)} pieces beyond the window")
    return {"series": series.name, "order": series.order, "pieces": len(pieces), "images": checked,
            "pieces_beyond_window": len(beyond)}


def check_group_law(space: FockSpace, series: OperatorSeries, pieces: Sequence[Piece]) -> Tuple[bool, Dict]:
    """c_i c_j = C(i+j, i) c_(i+j): the series is a formal one-parameter group"""
    bad = []
    tested = 0
    for piece in pieces:
        reach = covered_order(space, series, piece)
        for j in range(space.dimension(piece)):
            state = space.basis_state(piece, j)
            coeffs = series.coefficients(state, reach)
            for i in range(1, reach + 1):
                for jj in range(1, reach - i + 1):
                    left = series.coefficients(coeffs[jj], i)[i]
                    tested += 1
                    if left != coeffs[i + jj].scale(comb(i + jj, i)):
                        bad.append((str(piece), i, jj))
    return not bad, {"products": tested, "failures": bad[:5]}
