"""
Constructive liftings: one-order extension and integral lifting of primitives
"""
import logging
from math import factorial
from typing import Any, Callable, Dict, List, Optional, Tuple

from core.lattice import IntegerSystem
from hopf.algebra import HopfContext, NCPoly, TensorElement, Word, classify
from hopf.curves import Curve, seed_lifting
from hopf.divided import DividedPowerElement, unit_vector
from utils.constants import Classification, ErrorCode
from utils.errors import VerificationError

logger = logging.getLogger("zlift")

# (primitive, order) -> curve lifting it to that order
LiftingOracle = Callable[[Any, int], Curve]


def divided_power_oracle(primitive: DividedPowerElement, order: int) -> Curve:
    """Lift sum r_i Z_(e_i) by the product of the curves sum_n Z_(n e_i) (r_i x)^n"""
    dim = primitive.dim
    one = primitive.one()
    result = Curve.constant(one, order)
    for alpha, r in sorted(primitive.terms.items()):
        if sum(alpha) != 1:
            raise VerificationError(ErrorCode.ORACLE_FAILURE, f"{primitive!r} is not a combination of Z_(e_i)")
        i = alpha.index(1)
        basic = Curve([DividedPowerElement.basis(unit_vector(dim, i, n)) for n in range(order + 1)], one)
        result = result * basic.scale(r)
    return result


def solver_oracle(ctx: HopfContext) -> LiftingOracle:
    def lift(primitive: NCPoly, order: int) -> Curve:
        return solve_integral_lift(primitive, order, ctx)
    return lift


def extend_lifting(a: Curve, oracle: LiftingOracle, ctx: Optional[HopfContext] = None) -> Curve:
    """Extend an order-n lifting to order n+1 agreeing with it up to order n

    Starts from an oracle lift b of a_1 and, while b differs from a at some order
    k+1 <= n, multiplies b by a lift of the primitive defect a_(k+1) - b_(k+1)
    substituted at x^(k+1).
    """
    n = a.order
    if not a.is_grouplike(ctx):
        raise VerificationError(ErrorCode.NOT_GROUPLIKE, f"input curve is not group-like to order {n}")

    def consult(primitive, order: int) -> Curve:
        try:
            lifted = oracle(primitive, order)
        except VerificationError as e:
            raise VerificationError(ErrorCode.ORACLE_FAILURE, f"oracle could not lift a primitive: {e.message}") from e
        if lifted.order < order or lifted[1] != primitive:
            raise VerificationError(ErrorCode.ORACLE_FAILURE, "oracle returned a curve that does not lift the primitive")
        return lifted.truncate(order)

    b = consult(a[1], n + 1)
    padded = a.padded(n + 1)
    for _ in range(n + 1):
        defect = (padded * b.inverse()).truncate(n)
        k = defect.first_nonconstant()
        if k is None:
            break
        q = defect[k]
        if classify(q, ctx) is not Classification.PRIMITIVE:
            raise VerificationError(ErrorCode.NOT_PRIMITIVE, f"defect at order {k} is not primitive")
        logger.debug(f"extend_lifting: correcting order {k}")
        c = consult(q, n + 1)
        b = b * c.substitute_power(k)
    return b


def _grading_of(p: NCPoly, ctx: HopfContext) -> Tuple[str, Any]:
    md = ctx.homogeneous_multidegree(p)
    if md is not None:
        return "multi", md
    d = ctx.homogeneous_degree(p)
    if d is not None:
        return "total", d
    raise VerificationError(ErrorCode.NOT_HOMOGENEOUS, f"{p} is not homogeneous")


def delta_system(words: List[Word], rhs: TensorElement, ctx: HopfContext) -> IntegerSystem:
    """Integer system for the reduced coproduct of sum_w x_w w to equal rhs"""
    system = IntegerSystem(len(words))
    rows: Dict[Tuple, Dict[int, int]] = {}
    for col, w in enumerate(words):
        for (left, right), c in ctx.word_coproduct(w).terms.items():
            if left == () or right == ():
                continue
            rows.setdefault((left, right), {})[col] = c
    for key in rhs.terms:
        rows.setdefault(key, {})
    for key in sorted(rows):
        system.add_equation(rows[key], rhs.terms.get(key, 0))
    return system


def solve_integral_lift(p: NCPoly, order: int, ctx: HopfContext) -> Curve:
    """Order-by-order integer solution of Delta(c_k) = sum_m c_m (x) c_(k-m), c_1 = p

    c_k ranges over integer combinations of the words of k times the degree of p;
    each step is an affine integer system solved through a Hermite normal form and
    reduced to the canonical representative modulo its kernel.
    """
    one = NCPoly.one()
    if p.is_zero():
        return Curve.constant(one, order)
    if not p.is_integral():
        raise VerificationError(ErrorCode.NON_INTEGRAL, f"{p} has non-integer coefficients")
    if classify(p, ctx) is not Classification.PRIMITIVE:
        raise VerificationError(ErrorCode.NOT_PRIMITIVE, f"{p} is not primitive")
    kind, deg = _grading_of(p, ctx)
    total = sum(deg) if kind == "multi" else deg
    if ctx.degree_bound is not None and order * total > ctx.degree_bound:
        raise VerificationError(ErrorCode.DEGREE_OVERFLOW,
                                f"order {order} lift of degree {total} exceeds bound {ctx.degree_bound}")
    coeffs = [one, p]
    for k in range(2, order + 1):
        rhs = TensorElement()
        for m in range(1, k):
            rhs = rhs + coeffs[m].tensor(coeffs[k - m])
        if kind == "multi":
            words = ctx.words_of_multidegree(tuple(k * d for d in deg))
        else:
            words = ctx.words_of_degree(k * deg)
        system = delta_system(words, rhs, ctx)
        solution, _ = system.solve(canonical=True)
        if solution is None:
            raise VerificationError(ErrorCode.NO_INTEGRAL_SOLUTION,
                                    f"no integral coefficient at order {k} for {p}", {"order": k})
        coeffs.append(NCPoly({w: c for w, c in zip(words, solution) if c}))
        logger.debug(f"solve_integral_lift: order {k} over {len(words)} words")
    curve = Curve(coeffs[:order + 1], one)
    if not curve.certify(ctx):
        raise VerificationError(ErrorCode.NO_INTEGRAL_SOLUTION, "solver output failed group-like certification")
    return curve


def seed_divisibility_check(n: int) -> List[bool]:
    """Seed lifting of n! Z_e in the divided power algebra: c_i / n!^i recovers Z_(i e)

    Per order i, whether c_i is divisible by n!^i and the quotient is Z_(i e).
    """
    z = DividedPowerElement.basis((1,))
    seed = seed_lifting(z, n)
    checks = []
    for i in range(n + 1):
        c = seed[i]
        modulus = factorial(n) ** i
        divisible = all(v % modulus == 0 for v in c.terms.values())
        quotient = DividedPowerElement(1, {a: v // modulus for a, v in c.terms.items()})
        checks.append(divisible and quotient == DividedPowerElement.basis((i,)))
    return checks
