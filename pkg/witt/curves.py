"""
Curves of automorphisms on the Laurent ring and on the density modules R_N

The automorphism x -> x - eps x^(m+1) of the Laurent ring gives a curve whose first
coefficient is L_m. On R_N, with e_n = x^(n-N) (dx)^N, pulling back along
x -> x + eps x^(m+1) gives a curve whose first coefficient is (N m + n) e_(n+m), i.e. -L_m.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Tuple

from hopf.curves import Curve
from witt.operators import (THETA, THETA_RING, ShiftOperator, Window, binomial_poly, density_operator,
                            window_range)
from utils.constants import ErrorCode
from utils.errors import VerificationError

logger = logging.getLogger("zlift")


@dataclass
class ModuleCurve:
    """Curve sum_k eps^k c_k of shift operators on R_N with c_k shifting by k m

    `entries` holds, when the curve was built constructively, the coefficient
    c_k(n) of e_(n+km) in the image of e_n for n in the window.
    """
    m: int
    weight: int
    window: Window
    curve: Curve
    name: str
    entries: Dict[int, Dict[int, Fraction]] = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.curve.order

    def __getitem__(self, k: int) -> ShiftOperator:
        return self.curve[k]

    def is_integral(self) -> bool:
        return all(c.is_integer_valued() for c in self.curve.coefficients)

    def matrix(self, k: int) -> Dict[Tuple[int, int], Fraction]:
        return self.curve[k].entries(self.window)


def _check_window(m: int, order: int, window: Window):
    lo, hi = window
    if hi < lo or hi - lo < order * abs(m):
        raise VerificationError(
            ErrorCode.WINDOW_OVERFLOW,
            f"window {window} cannot hold shifts up to {order} * {m}",
            {"window": window, "order": order, "m": m},
        )


def laurent_curve(m: int, order: int, window: Window) -> ModuleCurve:
    """Coefficient k of x -> x - eps x^(m+1): x^n -> (-1)^k C(n, k) x^(n+km)"""
    if m < -1:
        raise VerificationError(ErrorCode.CONFIG_INVALID, f"the Witt curve needs m >= -1, got {m}")
    _check_window(m, order, window)
    coeffs = [ShiftOperator.monomial(k * m, binomial_poly(0, k).mul_ground((-1) ** k)) for k in range(order + 1)]
    return ModuleCurve(m, 0, window, Curve(coeffs, ShiftOperator.identity(), "eps"), f"laurent(m={m})")


def density_coefficient(m: int, weight: int, k: int):
    """c_k(theta) = sum_j C(theta - N, k - j) C(N, j) (m+1)^j"""
    out = THETA_RING.zero
    for j in range(k + 1):
        out = out + binomial_poly(-weight, k - j).mul_ground(_binomial(weight, j) * (m + 1) ** j)
    return out


def _binomial(top: int, k: int) -> int:
    """C(top, k) for any integer top"""
    if top >= 0:
        return comb(top, k)
    return (-1) ** k * comb(k - top - 1, k)


def density_closed_form(m: int, weight: int, order: int, window: Window) -> ModuleCurve:
    _check_window(m, order, window)
    coeffs = [ShiftOperator.monomial(k * m, density_coefficient(m, weight, k)) for k in range(order + 1)]
    return ModuleCurve(m, weight, window, Curve(coeffs, ShiftOperator.identity(), "eps"),
                       f"R_{weight}(m={m}) closed form")


class _Routes:
    """Coefficients c_k^(N)(n) of the pullback on R_N, built without the closed form

    N = 0 from the ring automorphism, N = -1 by conjugating vector fields,
    N < -1 from tensor powers of R_-1 and N > 0 by duality with R_(1-N).
    """

    def __init__(self, m: int, order: int):
        self.m = m
        self.order = order
        # pullback on functions: inverse direction of the Laurent curve
        self.functions = laurent_curve(m, order, (0, order * abs(m))).curve.scale(-1)
        self.functions_inverse = self.functions.inverse()
        self.cache: Dict[Tuple[int, int], List[Fraction]] = {}

    def series(self, weight: int, n: int) -> List[Fraction]:
        key = (weight, n)
        if key not in self.cache:
            if weight == 0:
                out = [self.functions[k].coefficient(k * self.m, n) for k in range(self.order + 1)]
            elif weight == -1:
                out = self._conjugation(n)
            elif weight < -1:
                out = self._tensor_power(-weight, n)
            else:
                out = self._dual(weight, n)
            self.cache[key] = out
        return self.cache[key]

    def _conjugation(self, n: int) -> List[Fraction]:
        # e_n = x^(n+1) d/dx = x^n theta; A V A^-1 is again first order
        vector_field = ShiftOperator.monomial(n, THETA)
        out = []
        for k in range(self.order + 1):
            acc = ShiftOperator()
            for i in range(k + 1):
                acc = acc + self.functions[i] * vector_field * self.functions_inverse[k - i]
            # value on the function x gives the coefficient of x^(n+km+1) d/dx
            out.append(acc.coefficient(n + k * self.m, 1))
        return out

    def _tensor_power(self, copies: int, n: int) -> List[Fraction]:
        # e_n = e_n . e_0 ... e_0 in the product of densities of weight -1
        result = self.series(-1, n)
        unit = self.series(-1, 0)
        for _ in range(copies - 1):
            result = [sum((result[j] * unit[k - j] for j in range(k + 1)), Fraction(0))
                      for k in range(self.order + 1)]
        return result

    def _dual(self, weight: int, n: int) -> List[Fraction]:
        # residue pairing <e_a, e_b> = delta_(a+b,0) between R_N and R_(1-N) is invariant
        out = [Fraction(1)]
        for k in range(1, self.order + 1):
            partner = self.series(1 - weight, -n - k * self.m)
            out.append(-sum((out[j] * partner[k - j] for j in range(k)), Fraction(0)))
        return out


def density_curve(m: int, weight: int, order: int, window: Window) -> ModuleCurve:
    """Curve of the pullback along x -> x + eps x^(m+1) on R_N

    Entries are built constructively on the window; INTEGRALITY_VIOLATION if one is not an integer.
    """
    closed = density_closed_form(m, weight, order, window)
    routes = _Routes(m, order)
    entries: Dict[int, Dict[int, Fraction]] = {k: {} for k in range(order + 1)}
    for n in window_range(window):
        for k, value in enumerate(routes.series(weight, n)):
            if value.denominator != 1:
                raise VerificationError(
                    ErrorCode.INTEGRALITY_VIOLATION,
                    f"R_{weight} curve coefficient {k} has entry {value} at e_{n}",
                    {"m": m, "weight": weight, "k": k, "n": n},
                )
            entries[k][n] = value
    logger.debug(f"R_{weight} curve m={m} order {order} on {window}: entries integral")
    return ModuleCurve(m, weight, window, closed.curve, f"R_{weight}(m={m})", entries)


def route_mismatches(curve: ModuleCurve) -> List[Tuple[int, int]]:
    """(k, n) where the constructed entries disagree with the closed form"""
    return [(k, n) for k, row in curve.entries.items() for n, v in row.items()
            if curve[k].coefficient(k * curve.m, n) != v]


def first_coefficient_defects(curve: ModuleCurve) -> List[int]:
    """Sources n where coefficient 1 is not (N m + n) e_(n+m)"""
    expected = density_operator(curve.m, curve.weight)
    if curve.order < 1:
        return []
    return [n for n in window_range(curve.window) if curve[1].column(n) != expected.column(n)]


def _product(f: Dict[int, Fraction], g: Dict[int, Fraction]) -> Dict[int, Fraction]:
    out: Dict[int, Fraction] = {}
    for a, u in f.items():
        for b, v in g.items():
            out[a + b] = out.get(a + b, Fraction(0)) + u * v
    return {e: c for e, c in out.items() if c}


def multiplicativity_defects(curve: ModuleCurve) -> List[Tuple[int, int, int]]:
    """(k, a, b) where the eps^k parts of A(x^a) A(x^b) and A(x^(a+b)) differ"""
    bad = []
    points = window_range(curve.window)
    for a in points:
        for b in points:
            images_a = [curve[j].column(a) for j in range(curve.order + 1)]
            images_b = [curve[j].column(b) for j in range(curve.order + 1)]
            for k in range(curve.order + 1):
                lhs: Dict[int, Fraction] = {}
                for j in range(k + 1):
                    for e, c in _product(images_a[j], images_b[k - j]).items():
                        lhs[e] = lhs.get(e, Fraction(0)) + c
                if {e: c for e, c in lhs.items() if c} != curve[k].column(a + b):
                    bad.append((k, a, b))
    return bad
