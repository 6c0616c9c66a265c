"""
Integral forms of U(Witt >= 1) and the degree 0 part of U(Vir)
"""
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import Matrix, Rational

from core.lattice import RationalLattice
from core.partitions import Partition, partition_count, partitions_of
from hopf.curves import Curve
from vertex.virasoro import omega_pairs
from witt.curves import laurent_curve
from witt.enveloping import WittElement, grouplike_from_automorphism
from utils.constants import ErrorCode
from utils.errors import VerificationError
from utils.report import Report

logger = logging.getLogger("zlift")


def witt_liftings(n: int) -> Dict[int, Curve]:
    """Group-like liftings of L_k, k <= n, to order n // k from the curves x -> x - eps x^(k+1)"""
    return {k: grouplike_from_automorphism(laurent_curve(k, n // k, (-n, n))) for k in range(1, n + 1)}


def ordered_basis(n: int) -> List[Tuple[int, ...]]:
    """Ordered monomials L_lambda of degree n, one per partition"""
    return [tuple(sorted(lam.parts)) for lam in partitions_of(n)]


def lifted_monomial(lam: Partition, liftings: Dict[int, Curve]) -> WittElement:
    """a_(1,i_1) a_(2,i_2) ... for lambda = 1^(i_1) 2^(i_2) ..."""
    out = WittElement.one()
    for k in range(1, len(lam.exponents) + 1):
        i = lam.multiplicity(k)
        if i:
            if k not in liftings or liftings[k].order < i:
                raise VerificationError(ErrorCode.DEGREE_OVERFLOW, f"lifting of L_{k} needs order {i}")
            out = out * liftings[k][i]
    return out


def transition_matrix(n: int, liftings: Dict[int, Curve]) -> List[List[Fraction]]:
    """Rows: the lifted monomials in coordinates of the ordered monomials of degree n"""
    basis = ordered_basis(n)
    position = {w: j for j, w in enumerate(basis)}
    rows = []
    for lam in partitions_of(n):
        row = [Fraction(0)] * len(basis)
        for word, c in lifted_monomial(lam, liftings).terms.items():
            if word not in position:
                raise VerificationError(
                    ErrorCode.SINGULAR_REPRESENTATION,
                    f"a_{lam} has a component {word} outside the degree {n} ordered monomials",
                )
            row[position[word]] = Fraction(c)
        rows.append(row)
    return rows


def integral_witt_index(n: int, liftings: Optional[Dict[int, Curve]] = None) -> int:
    """Index of the span of the L_lambda in the span of the lifted monomials, |lambda| = n"""
    liftings = liftings if liftings is not None else witt_liftings(n)
    rows = transition_matrix(n, liftings)
    det = Matrix([[Rational(c.numerator, c.denominator) for c in row] for row in rows]).det(method="bareiss")
    if det == 0:
        raise VerificationError(ErrorCode.SINGULAR_REPRESENTATION, f"lifted monomials of degree {n} are dependent")
    index = Fraction(int(det.q), abs(int(det.p)))
    if index.denominator != 1:
        raise VerificationError(ErrorCode.NON_INTEGRAL, f"transition determinant {det} is not 1/integer",
                                {"n": n, "det": str(det)})
    logger.debug(f"degree {n}: {len(rows)} lifted monomials, index {index}")
    return int(index)


def graded_dimension(n: int) -> int:
    return len(ordered_basis(n))


def admissible_lattice(dims: Iterable[int], eigenvalues: Sequence[int]) -> Tuple[RationalLattice, List[Tuple[int, int]]]:
    """Rational (x, y) with x m + y n/2 in Z for all eigenvalues m and ranks n: the dual of their span"""
    generators = [(m, n) for m in eigenvalues for n in sorted(dims)]
    span = RationalLattice.from_generators([[m, Fraction(n, 2)] for m, n in generators], 2)
    if span.rank < 2:
        raise VerificationError(ErrorCode.DEGENERATE, "the constraints do not span Q^2", {"generators": generators})
    inverse = Matrix([[Rational(x.numerator, x.denominator) for x in v] for v in span.basis()]).inv()
    dual = [[Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) for i in range(2)] for j in range(2)]
    return RationalLattice.from_generators(dual, 2), generators


def first_violation(x: Fraction, y: Fraction, generators: Sequence[Tuple[int, int]]) -> Optional[Tuple[int, int]]:
    for m, n in generators:
        if (x * m + y * Fraction(n, 2)).denominator != 1:
            return m, n
    return None


def virasoro_bracket(a: int, b: int) -> Tuple[Dict[int, int], Fraction]:
    """[L_a, L_b] = (a - b) L_(a+b) + (a^3 - a)/12 delta_(a+b,0) c"""
    central = Fraction(a ** 3 - a, 12) if a + b == 0 else Fraction(0)
    return ({a + b: a - b} if a != b else {}), central


def omega(element: Tuple[Dict[int, int], Fraction]) -> Tuple[Dict[int, int], Fraction]:
    modes, central = element
    return {-m: -c for m, c in modes.items()}, -central


def omega_defects(indices: Iterable[int]) -> List[Tuple[int, int]]:
    """(a, b) where omega([L_a, L_b]) != [omega L_a, omega L_b]"""
    indices = list(indices)
    # omega L_a = -L_(-a), and the two signs cancel in the bracket
    return [(a, b) for a in indices for b in indices if omega(virasoro_bracket(a, b)) != virasoro_bracket(-a, -b)]


def pin_degree_zero(dims: Iterable[int] = (2, 4), eigenvalues: Sequence[int] = (1, 2, 3),
                    report: Optional[Report] = None) -> Report:
    """x L_0 + y c/2 acts integrally on all tested eigenspaces only for (x, y) in Z^2"""
    report = report if report is not None else Report("witt")
    dims = sorted(set(dims))
    lattice, generators = admissible_lattice(dims, eigenvalues)
    report.add("pinning.admissible-lattice", lattice == RationalLattice.from_generators([[1, 0], [0, 1]], 2),
               {"dims": dims, "eigenvalues": list(eigenvalues), "basis": lattice.basis()})
    for x, y, expected in ((Fraction(1), Fraction(0), True), (Fraction(1, 2), Fraction(1, 2), False)):
        violation = first_violation(x, y, generators)
        report.add(f"pinning.sample({x},{y})", (violation is None) == expected,
                   {"admissible": violation is None, "violation": violation})
    bad = omega_defects(range(-3, 4))
    report.add("pinning.omega", not bad, {"pairs": omega_pairs([-1, 0, 1, 2]), "defects": bad})
    return report


def index_certificate(n: int, liftings: Dict[int, Curve]) -> Dict[str, object]:
    return {
        "n": n,
        "index": integral_witt_index(n, liftings),
        "dimension": graded_dimension(n),
        "partitions": partition_count(n),
    }
