"""Divided power algebra with its structural basis Z_a"""
from fractions import Fraction
from itertools import product
from math import comb, prod
from typing import Dict, Iterable, Optional, Tuple, Union

from sympy import isprime

from hopf.algebra import TensorElement
from utils.constants import ErrorCode
from utils.errors import VerificationError

MultiIndex = Tuple[int, ...]
Scalar = Union[int, Fraction]


class DividedPowerElement:
    """Combination of structural basis symbols Z_a over a fixed index set of size `dim`"""

    __slots__ = ["dim", "terms"]

    def __init__(self, dim: int, terms: Optional[Dict[MultiIndex, Scalar]] = None):
        self.dim = dim
        self.terms: Dict[MultiIndex, Scalar] = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(alpha)
            if len(alpha) != dim or any(a < 0 for a in alpha):
                raise ValueError(f"multi-index {alpha} outside Z>=0^{dim}")
            if c:
                if isinstance(c, Fraction) and c.denominator == 1:
                    c = int(c)
                self.terms[alpha] = c

    @classmethod
    def basis(cls, alpha: Iterable[int], coeff: Scalar = 1) -> 'DividedPowerElement':
        alpha = tuple(alpha)
        return cls(len(alpha), {alpha: coeff})

    def one(self) -> 'DividedPowerElement':
        return DividedPowerElement(self.dim, {(0,) * self.dim: 1})

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def __add__(self, other: 'DividedPowerElement') -> 'DividedPowerElement':
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0) + c
        return DividedPowerElement(self.dim, out)

    def scale(self, r: Scalar) -> 'DividedPowerElement':
        return DividedPowerElement(self.dim, {a: r * c for a, c in self.terms.items()})

    def __neg__(self) -> 'DividedPowerElement':
        return self.scale(-1)

    def __sub__(self, other: 'DividedPowerElement') -> 'DividedPowerElement':
        return self + (-other)

    def __mul__(self, other) -> 'DividedPowerElement':
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: Dict[MultiIndex, Scalar] = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                s = tuple(x + y for x, y in zip(a, b))
                out[s] = out.get(s, 0) + c * d * binomial_weight(a, b)
        return DividedPowerElement(self.dim, out)

    def __rmul__(self, r) -> 'DividedPowerElement':
        return self.scale(r)

    def __pow__(self, k: int) -> 'DividedPowerElement':
        out = self.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, DividedPowerElement) and self.dim == other.dim and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def counit(self) -> Scalar:
        return self.terms.get((0,) * self.dim, 0)

    def coproduct(self) -> TensorElement:
        out: Dict[Tuple, Scalar] = {}
        for alpha, c in self.terms.items():
            for beta in product(*(range(a + 1) for a in alpha)):
                key = (beta, tuple(a - b for a, b in zip(alpha, beta)))
                out[key] = out.get(key, 0) + c
        return TensorElement(out)

    def tensor(self, other: 'DividedPowerElement') -> TensorElement:
        return TensorElement({(a, b): c * d for a, c in self.terms.items() for b, d in other.terms.items()})

    def mod(self, p: int) -> 'DividedPowerElement':
        return DividedPowerElement(self.dim, {a: c % p for a, c in self.terms.items()})

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*Z{a}" for a, c in sorted(self.terms.items())) or "0"
        return f"DividedPowerElement({body})"


def binomial_weight(alpha: MultiIndex, beta: MultiIndex) -> int:
    """prod_i C(a_i + b_i, b_i)"""
    return prod(comb(a + b, b) for a, b in zip(alpha, beta))


def divided_power_product(alpha: Iterable[int], beta: Iterable[int]) -> DividedPowerElement:
    """Z_a * Z_b = prod_i C(a_i + b_i, b_i) Z_(a+b)"""
    return DividedPowerElement.basis(alpha) * DividedPowerElement.basis(beta)


def unit_vector(dim: int, i: int, scale: int = 1) -> MultiIndex:
    return tuple(scale if j == i else 0 for j in range(dim))


def verschiebung_divided(x: DividedPowerElement, p: int) -> DividedPowerElement:
    """V_p(Z_a) = Z_(a/p), zero when p does not divide a; coefficients reduced mod p"""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if not x.is_integral():
        raise VerificationError(ErrorCode.NON_INTEGRAL, "Verschiebung needs integer coefficients")
    out: Dict[MultiIndex, int] = {}
    for alpha, c in x.terms.items():
        if all(a % p == 0 for a in alpha):
            key = tuple(a // p for a in alpha)
            out[key] = (out.get(key, 0) + c) % p
    return DividedPowerElement(x.dim, out)
