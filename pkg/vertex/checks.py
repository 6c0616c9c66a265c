"""
Verification suite of the lattice vertex algebra: mode identities, power modes,
integral form closure and integrality of exponential operators
"""
import logging
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from vertex.fock import FockSpace, FockState, Piece
from vertex.integral import IntegralForm, cached_closure, h_basis_lattice, integral_closure
from vertex.lattice import EvenLattice, Vector, add
from vertex.modes import (
    divided_translation, general_mode, h_polynomial, heisenberg, state_weight, translation, vertex_mode
)
from vertex.series import check_group_law, check_series_integrality, exp_zero_mode, null_root_curve
from vertex.virasoro import central_term, omega_pairs, virasoro, virasoro_matrix
from utils.cache import CacheStore
from utils.constants import Membership
from utils.report import Report

logger = logging.getLogger("zlift")

Witness = Tuple[bool, Dict[str, object]]

POWER_MODE_SAMPLES = range(-3, 2)


def low_pieces(space: FockSpace, osc_limit: int) -> List[Piece]:
    """Pieces whose oscillator weight is at most osc_limit"""
    return [p for p in space.pieces if p.weight - space.lattice.ground_weight(p.sector) <= osc_limit]


def sample_states(space: FockSpace, pieces: Sequence[Piece]) -> Iterator[Tuple[Piece, FockState]]:
    for piece in pieces:
        for j in range(space.dimension(piece)):
            yield piece, space.basis_state(piece, j)


def _compare(space: FockSpace, pieces: Sequence[Piece], lhs: Callable[[FockState], FockState],
             rhs: Callable[[FockState], FockState], label: str) -> Witness:
    failures = []
    tested = 0
    for piece, state in sample_states(space, pieces):
        tested += 1
        if lhs(state) != rhs(state):
            failures.append(f"{label} on {piece}")
    return not failures, {"states": tested, "failures": failures[:5]}


# structure

def check_dimensions(space: FockSpace) -> Witness:
    bad = {str(p): (space.dimension(p), space.expected_dimension(p))
           for p in space.pieces if space.dimension(p) != space.expected_dimension(p)}
    return not bad, {"pieces": len(space.pieces), "mismatches": bad}


def check_cocycle(lattice: EvenLattice, sectors: Sequence[Vector]) -> Witness:
    """eps(a, b) eps(b, a) = (-1)^(a, b)"""
    bad = [(a, b) for a in sectors for b in sectors
           if lattice.cocycle(a, b) * lattice.cocycle(b, a) != (-1) ** (lattice.inner(a, b) % 2)]
    return not bad, {"pairs": len(sectors) ** 2, "failures": bad[:5]}


def check_heisenberg(space: FockSpace, pieces: Sequence[Piece], max_index: int = 2) -> Witness:
    """[gamma(i), delta(j)] = j (gamma, delta) delta_(i+j,0)"""
    lat = space.lattice
    failures = []
    for piece, state in sample_states(space, pieces):
        for a in range(space.rank):
            for b in range(space.rank):
                g, d = lat.basis_vector(a), lat.basis_vector(b)
                for i in range(-max_index, max_index + 1):
                    for j in range(-max_index, max_index + 1):
                        left = (heisenberg(space, g, i, heisenberg(space, d, j, state))
                                - heisenberg(space, d, j, heisenberg(space, g, i, state)))
                        right = state.scale(j * lat.inner(g, d)) if i + j == 0 else FockState()
                        if left != right:
                            failures.append((str(piece), a, b, i, j))
    return not failures, {"failures": failures[:5]}


def check_vacuum_and_leading_terms(space: FockSpace) -> Witness:
    """L_n 1 = 0 for n >= -1, e^a_i e^b = 0 for i + (a, b) >= 0 and e^a_(-1-(a,b)) e^b = eps(a, b) e^(a+b)"""
    lat = space.lattice
    failures = []
    vac = space.vacuum()
    for n in range(-1, 4):
        if not virasoro(space, n, vac).is_zero():
            failures.append(f"L_{n}(1)")
    for a in space.sector_list:
        for b in space.sector_list:
            ab = lat.inner(a, b)
            ground = space.ground(b)
            for i in range(-ab, -ab + 3):
                if not vertex_mode(space, a, i, ground).is_zero():
                    failures.append(f"e^{a}_{i} e^{b}")
            lead = vertex_mode(space, a, -1 - ab, ground)
            if lead != space.ground(add(a, b)).scale(lat.cocycle(a, b)):
                failures.append(f"leading e^{a} e^{b}")
    return not failures, {"failures": failures[:5]}


def check_translation(space: FockSpace, pieces: Sequence[Piece], max_index: int = 2) -> Witness:
    """D^(i) D^(j) = C(i+j, i) D^(i+j), L_-1 = D and D^(n) e^a = h_n(a) e^a"""
    failures = []
    for piece, state in sample_states(space, pieces):
        for i in range(max_index + 1):
            for j in range(max_index + 1):
                left = divided_translation(space, i, divided_translation(space, j, state))
                if left != divided_translation(space, i + j, state).scale(comb(i + j, i)):
                    failures.append(f"D^({i})D^({j}) on {piece}")
        if virasoro(space, -1, state) != translation(space, state):
            failures.append(f"L_-1 on {piece}")
    for beta in space.sector_list:
        for n in range(max_index + 2):
            want = space.state(beta, h_polynomial(space, beta, n))
            if divided_translation(space, n, space.ground(beta)) != want:
                failures.append(f"D^({n}) e^{beta}")
    return not failures, {"failures": failures[:5]}


def check_virasoro_relations(space: FockSpace, pieces: Sequence[Piece], max_index: int = 3) -> Witness:
    """[L_m, L_n] = (m-n) L_(m+n) + C(m+1,3) c/2 delta_(m+n,0) with c = rank"""
    failures = []
    tested = 0
    for piece, state in sample_states(space, pieces):
        for m in range(-max_index, max_index + 1):
            for n in range(m + 1, max_index + 1):
                left = virasoro(space, m, virasoro(space, n, state)) - virasoro(space, n, virasoro(space, m, state))
                right = virasoro(space, m + n, state).scale(m - n) + state.scale(central_term(space, m, n))
                tested += 1
                if left != right:
                    failures.append(f"[L_{m},L_{n}] on {piece}")
    return not failures, {"central_charge": space.rank, "commutators": tested, "failures": failures[:5]}


# commutator identities

def verify_commutators(space: FockSpace, pieces: Sequence[Piece], report: Report, prefix: str = "") -> Report:
    """Virasoro against vertex and Heisenberg modes, and the commutator formula for modes of states"""
    lat = space.lattice
    roots = [lat.basis_vector(i, s) for i in range(space.rank) for s in (1, -1)]

    def virasoro_vertex():
        failures = []
        for alpha in roots:
            h = Fraction(lat.norm(alpha), 2)
            for i in range(-1, 3):
                for j in range(-2, 2):
                    coeff = (i + 1) * (h - 1) - j
                    res = _compare(
                        space, pieces,
                        lambda s: (virasoro(space, i, vertex_mode(space, alpha, j, s))
                                   - vertex_mode(space, alpha, j, virasoro(space, i, s))),
                        lambda s: vertex_mode(space, alpha, i + j, s).scale(coeff),
                        f"[L_{i}, e^{alpha}_{j}]")
                    failures += res[1]["failures"]
        return not failures, {"failures": failures[:5]}

    def virasoro_heisenberg():
        failures = []
        for a in range(space.rank):
            gamma = lat.basis_vector(a)
            for i in range(-1, 3):
                for j in range(-2, 3):
                    res = _compare(
                        space, pieces,
                        lambda s: (virasoro(space, i, heisenberg(space, gamma, j, s))
                                   - heisenberg(space, gamma, j, virasoro(space, i, s))),
                        lambda s: heisenberg(space, gamma, j - i, s).scale(j),
                        f"[L_{i}, b_{a}({j})]")
                    failures += res[1]["failures"]
        return not failures, {"failures": failures[:5]}

    def mode_commutators():
        states = [space.ground(r) for r in roots[:2]] + [space.state(lat.basis_vector(0), space.var(0, 1))]
        failures = []
        for u in states:
            for v in states:
                for i in range(0, 2):
                    for j in range(-1, 2):
                        products = [(k, general_mode(space, u, k, v)) for k in range(i + 1)]
                        res = _compare(
                            space, pieces,
                            lambda s: (general_mode(space, u, i, general_mode(space, v, j, s))
                                       - general_mode(space, v, j, general_mode(space, u, i, s))),
                            lambda s: _sum_states(general_mode(space, w, i + j - k, s).scale(comb(i, k))
                                                  for k, w in products),
                            f"[u_{i}, v_{j}]")
                        failures += res[1]["failures"]
        return not failures, {"pairs": len(states) ** 2, "failures": failures[:5]}

    report.run(f"{prefix}commutator.virasoro-vertex", virasoro_vertex)
    report.run(f"{prefix}commutator.virasoro-heisenberg", virasoro_heisenberg)
    report.run(f"{prefix}commutator.modes", mode_commutators)
    return report


def _sum_states(states) -> FockState:
    out = FockState()
    for s in states:
        out = out + s
    return out


# power modes

def power_state(space: FockSpace, a: FockState, k: int) -> FockState:
    """a^0 = 1, a^(k+1) = a_(-1) a^k"""
    out = space.vacuum()
    for _ in range(k):
        out = general_mode(space, a, -1, out)
    return out


def _top_mode(space: FockSpace, a: FockState, state: FockState) -> int:
    """Largest i with a_i state possibly nonzero"""
    wa = state_weight(space, a)
    alpha = next(iter(a.terms))
    top = -1
    for beta, w, _ in space.components(state):
        top = max(top, wa + w - 1 - space.lattice.ground_weight(add(alpha, beta)))
    return top


def _nonnegative_chains(space: FockSpace, a: FockState, count: int, state: FockState) -> Iterator[Tuple[int, FockState]]:
    """(i_1 + ... + i_count, a_(i_1) ... a_(i_count) state) over tuples of nonnegative modes"""
    if count == 0:
        yield 0, state
        return
    for i in range(0, _top_mode(space, a, state) + 1):
        image = general_mode(space, a, i, state)
        if image.is_zero():
            continue
        for rest, out in _nonnegative_chains(space, a, count - 1, image):
            yield i + rest, out


def _negative_tuples(total: int, count: int) -> Iterator[Tuple[int, ...]]:
    """Tuples of `count` negative integers summing to -total"""
    if count == 0:
        if total == 0:
            yield ()
        return
    if total < count:
        return
    for cuts in combinations(range(1, total), count - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(bounds[t] - bounds[t + 1] for t in range(count))


def power_mode_expansion(space: FockSpace, a: FockState, k: int, n: int, state: FockState) -> FockState:
    """sum_j C(k, j) sum a_(i_1) ... a_(i_k) state over i_1..i_j < 0 <= i_(j+1)..i_k with sum n - k + 1"""
    out = FockState()
    for j in range(k + 1):
        for pos_sum, partial in _nonnegative_chains(space, a, k - j, state):
            for modes in _negative_tuples(pos_sum - (n - k + 1), j):
                image = partial
                for i in reversed(modes):
                    image = general_mode(space, a, i, image)
                    if image.is_zero():
                        break
                out = out + image.scale(comb(k, j))
    return out


def check_power_modes(space: FockSpace, a: FockState, k: int, n: int, pieces: Sequence[Piece]) -> Witness:
    """(a^k)_n equals the normal ordered k-fold product of modes of a"""
    ak = power_state(space, a, k)
    ok, witness = _compare(space, pieces,
                           lambda s: general_mode(space, ak, n, s),
                           lambda s: power_mode_expansion(space, a, k, n, s),
                           f"a^{k}_{n}")
    witness.update({"k": k, "n": n, "power_is_zero": ak.is_zero()})
    return ok, witness


def sampled_power_modes(space: FockSpace, a: FockState, k: int, modes: Sequence[int],
                        pieces: Sequence[Piece]) -> Witness:
    """check_power_modes for each n in modes"""
    failures = []
    states = 0
    for n in modes:
        _, witness = check_power_modes(space, a, k, n, pieces)
        states += witness["states"]
        failures += witness["failures"]
    return not failures, {"k": k, "modes": list(modes), "states": states, "failures": failures[:5]}


# integrality

def integral_form_matches(space: FockSpace, form: IntegralForm) -> Witness:
    expected = h_basis_lattice(space)
    bad = [str(p) for p in space.pieces if form.lattice(p) != expected.lattice(p)]
    return not bad, {"rounds": form.rounds, "pieces": len(space.pieces), "mismatches": bad[:5]}


def virasoro_integrality(space: FockSpace, form: IntegralForm, pieces: Sequence[Piece]) -> Witness:
    """L_m preserves Lambda for -1 <= m <= 2, and for all -3 <= m <= 2 on self-dual lattices"""
    lat = space.lattice
    indices = list(range(-3 if lat.is_self_dual else -1, 3))
    failures = []
    tested = 0
    for m in indices:
        for piece in pieces:
            target = Piece(piece.sector, piece.weight - m)
            if not space.in_window(target):
                continue
            verdict, image = form.preserved_by(virasoro_matrix(space, m, piece))
            tested += 1
            if verdict is not Membership.MEMBER:
                failures.append({"m": m, "piece": str(piece), "membership": verdict.value})
    return not failures, {"indices": indices, "self_dual": lat.is_self_dual, "maps": tested,
                          "omega": omega_pairs([m for m in indices if m >= 1]), "failures": failures[:5]}


def conformal_vector_membership(space: FockSpace, form: IntegralForm) -> Membership:
    """Where L_-2 1 sits relative to Lambda"""
    return form.classify(virasoro(space, -2, space.vacuum()))


def choose_vectors(lattice: EvenLattice, radius: int = 1) -> Tuple[Optional[Vector], Optional[Vector], Optional[Vector]]:
    """A norm 2 vector, a nonzero norm 0 vector gamma and a vector orthogonal to gamma (preferring one != +-gamma)"""
    vectors = [v for v in lattice.sectors(radius) if any(v)]
    root = next((v for v in sorted(vectors, reverse=True) if lattice.norm(v) == 2), None)
    gamma = next((v for v in sorted(vectors, reverse=True) if lattice.norm(v) == 0), None)
    alpha = None
    if gamma is not None:
        orth = [v for v in sorted(vectors, reverse=True) if lattice.inner(v, gamma) == 0]
        alpha = next((v for v in orth if v != gamma and v != tuple(-c for c in gamma)), gamma)
    return root, gamma, alpha


def check_lattice_va(space: FockSpace, order: int = 2, osc_limit: int = 1, rounds: int = 12,
                     report: Optional[Report] = None, cache: Optional[CacheStore] = None) -> Report:
    """Full lattice vertex algebra certificate on the space's windows"""
    lat = space.lattice
    report = report or Report(suite="lattice-va", params={
        "lattice": lat.name, "window": space.sector_window, "weight": space.weight_bound,
        "mode_bound": space.mode_bound, "order": order})
    prefix = f"{lat.name}."
    pieces = low_pieces(space, osc_limit)

    report.run(f"{prefix}dimensions", lambda: check_dimensions(space))
    report.run(f"{prefix}cocycle", lambda: check_cocycle(lat, space.sector_list))
    report.run(f"{prefix}heisenberg", lambda: check_heisenberg(space, pieces))
    report.run(f"{prefix}vacuum", lambda: check_vacuum_and_leading_terms(space))
    report.run(f"{prefix}translation", lambda: check_translation(space, pieces))
    report.run(f"{prefix}virasoro", lambda: check_virasoro_relations(space, low_pieces(space, 0)))
    verify_commutators(space, low_pieces(space, 0), report, prefix)

    root, gamma, alpha = choose_vectors(lat)
    power_cases = [("heisenberg", space.state((0,) * space.rank, space.var(0, 1)))]
    if root is not None:
        power_cases.append(("root", space.ground(root)))
    if gamma is not None:
        power_cases.append(("null", space.ground(gamma)))
    for label, a in power_cases:
        for k in range(3):
            report.run(f"{prefix}power-modes.{label}.k{k}",
                       lambda a=a, k=k: sampled_power_modes(space, a, k, POWER_MODE_SAMPLES, space.pieces))

    form: Dict[str, IntegralForm] = {}

    def closure():
        form["closure"] = cached_closure(space, rounds, cache)
        return integral_form_matches(space, form["closure"])

    report.run(f"{prefix}integral-form", closure)
    if "closure" not in form:
        report.skip(f"{prefix}integrality", "integral form unavailable")
        return report
    lam = form["closure"]

    def fixpoint():
        again = integral_closure(space, rounds, seeds={p: lam.lattice(p).basis() for p in space.pieces})
        return again == lam, {"rounds": again.rounds}

    report.run(f"{prefix}integral-form.fixpoint", fixpoint)
    omega = conformal_vector_membership(space, lam)
    report.add(f"{prefix}conformal-vector", omega is Membership.MEMBER or not lat.is_self_dual,
               {"membership": omega.value, "self_dual": lat.is_self_dual})
    report.run(f"{prefix}virasoro-integral", lambda: virasoro_integrality(space, lam, pieces))

    if root is not None:
        series = exp_zero_mode(space, root, order)
        report.run(f"{prefix}exp-zero-mode",
                   lambda: (True, check_series_integrality(space, lam, series, space.pieces)))
        report.run(f"{prefix}exp-zero-mode.group-law", lambda: check_group_law(space, series, low_pieces(space, 0)))
    else:
        report.skip(f"{prefix}exp-zero-mode", "no norm 2 vector in the window")
    if gamma is not None:
        curve = null_root_curve(space, alpha, gamma, order)
        report.run(f"{prefix}null-root-curve",
                   lambda: (True, check_series_integrality(space, lam, curve, space.pieces)))
    else:
        report.skip(f"{prefix}null-root-curve", "no norm 0 vector in the window")
    return report


def build_space(lattice: EvenLattice, sector_window: Optional[int] = None,
                weight_bound: Optional[int] = None, order: int = 2) -> FockSpace:
    """Fock space whose oscillator modes reach every target of an order `order` series step"""
    space = FockSpace(lattice, sector_window, weight_bound, reach=max(2, order))
    logger.info(f"{lattice.name}: {len(space.pieces)} pieces, modes <= {space.mode_bound}")
    return space


__all__ = [
    "build_space", "check_lattice_va", "check_power_modes", "sampled_power_modes", "verify_commutators",
    "power_state", "power_mode_expansion", "virasoro_integrality", "conformal_vector_membership", "choose_vectors",
]
