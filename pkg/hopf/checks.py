"""Report-level certificates for the hopf and lifting suites"""
import logging
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from hopf.algebra import HopfContext, NCPoly, TensorElement
from hopf.curves import Curve, antipode_curve, curve_from_basis
from hopf.divided import DividedPowerElement, MultiIndex, unit_vector, verschiebung_divided
from hopf.lifting import (divided_power_oracle, extend_lifting, seed_divisibility_check, solve_integral_lift,
                          solver_oracle)
from hopf.structural import check_free_structural, multicurve_lift_check, verschiebung_is_comorphism
from utils.report import Report

logger = logging.getLogger("zlift")


def _indices(dim: int, size: int) -> List[MultiIndex]:
    return [a for a in product(range(size + 1), repeat=dim) if sum(a) <= size]


def _apply_coproduct_left(delta: TensorElement) -> Dict[Tuple, int]:
    out: Dict[Tuple, int] = {}
    for (l, r), c in delta.terms.items():
        for (ll, lr), d in DividedPowerElement.basis(l).coproduct().terms.items():
            out[(ll, lr, r)] = out.get((ll, lr, r), 0) + c * d
    return out


def _apply_coproduct_right(delta: TensorElement) -> Dict[Tuple, int]:
    out: Dict[Tuple, int] = {}
    for (l, r), c in delta.terms.items():
        for (rl, rr), d in DividedPowerElement.basis(r).coproduct().terms.items():
            out[(l, rl, rr)] = out.get((l, rl, rr), 0) + c * d
    return out


def divided_axiom_defects(dim: int, size: int,
                          factors: Optional[Sequence[MultiIndex]] = None) -> Dict[str, List[str]]:
    """Multi-indices of size <= size breaking coassociativity, the counit or Delta(xy) = Delta(x)Delta(y)

    Multiplicativity is checked on every pair with |alpha| + |beta| <= size unless factors are given.
    """
    defects: Dict[str, List[str]] = {"coassociative": [], "counit": [], "multiplicative": []}
    zero = (0,) * dim
    for alpha in _indices(dim, size):
        x = DividedPowerElement.basis(alpha)
        delta = x.coproduct()
        if _apply_coproduct_left(delta) != _apply_coproduct_right(delta):
            defects["coassociative"].append(str(alpha))
        left = {r: c for (l, r), c in delta.terms.items() if l == zero}
        right = {l: c for (l, r), c in delta.terms.items() if r == zero}
        if left != {alpha: 1} or right != {alpha: 1}:
            defects["counit"].append(str(alpha))
        for beta in (_indices(dim, size - sum(alpha)) if factors is None else factors):
            if sum(alpha) + sum(beta) > size:
                continue
            y = DividedPowerElement.basis(beta)
            expected = TensorElement()
            for (l1, r1), c in delta.terms.items():
                for (l2, r2), d in y.coproduct().terms.items():
                    lhs = DividedPowerElement.basis(l1) * DividedPowerElement.basis(l2)
                    rhs = DividedPowerElement.basis(r1) * DividedPowerElement.basis(r2)
                    expected = expected + lhs.tensor(rhs).scale(c * d)
            if (x * y).coproduct() != expected:
                defects["multiplicative"].append(f"{alpha}*{beta}")
    return defects


def verschiebung_defects(dim: int, size: int, p: int) -> List[str]:
    """V_p(Z_a) against Z_(a/p) or zero for every multi-index of size <= size"""
    bad = []
    for alpha in _indices(dim, size):
        image = verschiebung_divided(DividedPowerElement.basis(alpha), p)
        if all(a % p == 0 for a in alpha):
            expected = DividedPowerElement.basis(tuple(a // p for a in alpha))
        else:
            expected = DividedPowerElement(dim)
        if image != expected:
            bad.append(str(alpha))
    return bad


def _universal_samples(ctx: HopfContext, p: int) -> List[NCPoly]:
    a, b = ctx.letter("a", p), ctx.letter("b", 2 * p)
    x, y = a * b, ctx.letter("a", 2 * p) + ctx.letter("b", p).scale(3)
    return [x, y, x * y]


def check_hopf(n: int = 8, order: int = 4, primes: Sequence[int] = (2, 3),
               report: Optional[Report] = None) -> Report:
    """Divided power axioms and Verschiebung up to size n, antipodes, and the structural basis of F_1"""
    report = report or Report(suite="hopf", params={"n": n, "order": order, "primes": list(primes)})
    for name, bad in divided_axiom_defects(2, n).items():
        report.add(f"divided.{name}.size{n}", not bad, {"size": n, "failures": bad[:5]})
    for p in primes:
        bad = verschiebung_defects(2, n, p)
        report.add(f"divided.verschiebung.p{p}", not bad, {"size": n, "failures": bad[:5]})

    uni = HopfContext.universal(("a", "b"))
    for p in primes:
        samples = _universal_samples(uni, p)
        report.add(f"universal.verschiebung.p{p}",
                   all(verschiebung_is_comorphism(x, p, uni) for x in samples), {"samples": len(samples)})

    def antipode():
        curve = curve_from_basis(lambda k: uni.letter("a", k), NCPoly.one(), order)
        inverse = antipode_curve(curve)
        product_curve = curve * inverse
        ok = product_curve == Curve.constant(NCPoly.one(), order) and inverse.is_grouplike(uni)
        return ok, {"order": order, "inverse": str(inverse[order])}

    report.run(f"universal.antipode.order{order}", antipode)
    check_free_structural(1, order, report)
    return report


def check_lifting(order: int = 4, report: Optional[Report] = None) -> Report:
    """Seed divisibility, one-order extension with both oracles and the integral commutator lift"""
    report = report or Report(suite="lifting", params={"order": order})

    for k in range(1, order + 1):
        report.add(f"seed.n{k}", all(seed_divisibility_check(k)), {"orders": k + 1})

    def divided_extension():
        one = DividedPowerElement.basis((0, 0))
        a = Curve([DividedPowerElement.basis(unit_vector(2, 0, k)) for k in range(order)], one)
        b = extend_lifting(a, divided_power_oracle)
        return b.truncate(order - 1) == a and b.is_grouplike(), {"order": b.order}

    report.run(f"extend.divided.order{order}", divided_extension)

    uni = HopfContext.universal(("a", "b"))

    def solver_extension():
        a = curve_from_basis(lambda k: uni.letter("a", k), NCPoly.one(), order - 1)
        b = extend_lifting(a, solver_oracle(uni))
        return b.truncate(order - 1) == a and b.is_grouplike(uni), {"order": b.order}

    report.run(f"extend.solver.order{order}", solver_extension)

    def commutator():
        p = uni.letter("a", 1).commutator(uni.letter("b", 1))
        curve = solve_integral_lift(p, order, uni)
        integral = all(curve[k].is_integral() for k in range(order + 1))
        return integral and all(curve.certificate), {
            "certificate": curve.certificate, "top": str(curve[order]),
        }

    report.run(f"integral-lift.commutator.order{order}", commutator)

    def multicurve():
        result = multicurve_lift_check(2, 2, 2)
        return all(result.values()), {"coefficients": result}

    report.run("integral-lift.multicurve", multicurve)
    logger.debug(f"lifting suite: {len(report.checks)} checks at order {order}")
    return report


__all__ = ["check_hopf", "check_lifting", "divided_axiom_defects", "verschiebung_defects"]
