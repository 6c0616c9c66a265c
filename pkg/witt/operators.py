"""
Exact operators on span{e_n : n in Z} of the form sum_s x^s P_s(theta)

x^s P(theta) sends e_n to P(n) e_(n+s). On the Laurent ring e_n = x^n and theta = x d/dx.
"""
import logging
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple, Union

from sympy import QQ
from sympy.polys.rings import ring

from vertex.fock import as_fraction, qq

logger = logging.getLogger("zlift")

THETA_RING, THETA = ring("theta", QQ)

Scalar = Union[int, Fraction]
Window = Tuple[int, int]


def binomial_poly(shift: int, k: int):
    """C(theta + shift, k) as a polynomial in theta"""
    out = THETA_RING.one
    for t in range(k):
        out = out * (THETA + shift - t)
    for t in range(2, k + 1):
        out = out.quo_ground(QQ(t))
    return out


def window_range(window: Window) -> range:
    lo, hi = window
    return range(lo, hi + 1)


class ShiftOperator:
    """Finite sum of x^s P_s(theta); composition is the product"""

    __slots__ = ["terms"]

    def __init__(self, terms: Optional[Dict[int, object]] = None):
        self.terms: Dict[int, object] = {}
        for s, poly in (terms or {}).items():
            if poly:
                self.terms[int(s)] = poly

    @classmethod
    def identity(cls) -> 'ShiftOperator':
        return cls({0: THETA_RING.one})

    @classmethod
    def monomial(cls, shift: int, poly) -> 'ShiftOperator':
        return cls({shift: poly})

    def __add__(self, other: 'ShiftOperator') -> 'ShiftOperator':
        out = dict(self.terms)
        for s, poly in other.terms.items():
            out[s] = out[s] + poly if s in out else poly
        return ShiftOperator(out)

    def __sub__(self, other: 'ShiftOperator') -> 'ShiftOperator':
        return self + other.scale(-1)

    def __neg__(self) -> 'ShiftOperator':
        return self.scale(-1)

    def scale(self, r: Scalar) -> 'ShiftOperator':
        c = qq(r)
        return ShiftOperator({s: poly.mul_ground(c) for s, poly in self.terms.items()})

    def __mul__(self, other: 'ShiftOperator') -> 'ShiftOperator':
        # x^a P(theta) x^b Q(theta) = x^(a+b) P(theta + b) Q(theta)
        out: Dict[int, object] = {}
        for a, p in self.terms.items():
            for b, q in other.terms.items():
                term = p.compose(THETA, THETA + b) * q
                out[a + b] = out[a + b] + term if a + b in out else term
        return ShiftOperator(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, ShiftOperator) and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def shifts(self) -> Tuple[int, ...]:
        return tuple(sorted(self.terms))

    def coefficient(self, shift: int, n: int) -> Fraction:
        poly = self.terms.get(shift)
        if poly is None:
            return Fraction(0)
        return as_fraction(poly.evaluate(THETA, n))

    def column(self, n: int) -> Dict[int, Fraction]:
        """Image of e_n"""
        out = {}
        for s in self.terms:
            c = self.coefficient(s, n)
            if c:
                out[n + s] = c
        return out

    def apply(self, vec: Dict[int, Scalar]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for n, c in vec.items():
            for t, v in self.column(n).items():
                out[t] = out.get(t, Fraction(0)) + c * v
        return {t: v for t, v in out.items() if v}

    def entries(self, window: Window) -> Dict[Tuple[int, int], Fraction]:
        """Matrix entries (target, source) over sources in the window"""
        return {(t, n): v for n in window_range(window) for t, v in self.column(n).items()}

    def is_integer_valued(self) -> bool:
        """Every P_s maps Z into Z: its finite differences at 0 are integers"""
        for poly in self.terms.values():
            values = [as_fraction(poly.evaluate(THETA, n)) for n in range(poly.degree() + 1)]
            while values:
                if any(v.denominator != 1 for v in values):
                    return False
                values = [b - a for a, b in zip(values, values[1:])]
        return True

    def leibniz_defect(self, window: Window) -> Optional[Tuple[int, int, int]]:
        """First (s, a, b) with P_s(a + b) != P_s(a) + P_s(b), i.e. where D(x^a x^b) breaks Leibniz"""
        points = window_range(window)
        for s in self.shifts:
            for a in points:
                for b in points:
                    if self.coefficient(s, a + b) != self.coefficient(s, a) + self.coefficient(s, b):
                        return s, a, b
        return None

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"x^{s}({self.terms[s].as_expr()})" for s in self.shifts)


def density_operator(m: int, weight: int) -> ShiftOperator:
    """e_n -> (N m + n) e_(n+m) on R_N; this is -L_m"""
    return ShiftOperator.monomial(m, THETA + weight * m)


def witt_operator(m: int, weight: int = 0) -> ShiftOperator:
    """L_m on R_N; on the Laurent ring L_m = -x^(m+1) d/dx"""
    return -density_operator(m, weight)


def bracket(a: ShiftOperator, b: ShiftOperator) -> ShiftOperator:
    return a * b - b * a


def witt_bracket_defects(indices: Iterable[int], weights: Iterable[int]):
    """(N, a, b) where [L_a, L_b] != (a - b) L_(a+b) on R_N"""
    indices = list(indices)
    bad = []
    for weight in weights:
        for a in indices:
            for b in indices:
                lhs = bracket(witt_operator(a, weight), witt_operator(b, weight))
                if lhs != witt_operator(a + b, weight).scale(a - b):
                    bad.append((weight, a, b))
    return bad
