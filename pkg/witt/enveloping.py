"""
Universal enveloping algebra of the Witt algebra in the ordered basis L_(j1) L_(j2) ... with j1 <= j2 <= ...
"""
import hashlib
import logging
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Dict, Iterable, List, Optional, Tuple, Union

from hopf.algebra import TensorElement
from hopf.curves import Curve
from witt.curves import ModuleCurve
from witt.operators import THETA, ShiftOperator, witt_operator
from utils.constants import ErrorCode
from utils.errors import VerificationError

logger = logging.getLogger("zlift")

Scalar = Union[int, Fraction]
Word = Tuple[int, ...]


def _norm(c: Scalar) -> Scalar:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


@lru_cache(maxsize=None)
def _straighten(word: Word) -> Tuple[Tuple[Word, Scalar], ...]:
    """Ordered expansion of a word using L_a L_b = L_b L_a + (a - b) L_(a+b)"""
    for i in range(len(word) - 1):
        a, b = word[i], word[i + 1]
        if a > b:
            out: Dict[Word, Scalar] = {}
            for w, c in _straighten(word[:i] + (b, a) + word[i + 2:]):
                out[w] = out.get(w, 0) + c
            for w, c in _straighten(word[:i] + (a + b,) + word[i + 2:]):
                out[w] = out.get(w, 0) + (a - b) * c
            return tuple((w, c) for w, c in out.items() if c)
    return ((word, 1),)


class WittElement:
    """Element of U(Witt) as a combination of ordered monomials"""

    __slots__ = ["terms"]

    def __init__(self, terms: Optional[Dict[Word, Scalar]] = None):
        self.terms: Dict[Word, Scalar] = {}
        for word, c in (terms or {}).items():
            if c:
                self.terms[tuple(word)] = _norm(c)

    @classmethod
    def one(cls) -> 'WittElement':
        return cls({(): 1})

    @classmethod
    def generator(cls, m: int) -> 'WittElement':
        return cls({(m,): 1})

    @classmethod
    def monomial(cls, word: Iterable[int]) -> 'WittElement':
        out: Dict[Word, Scalar] = {}
        for w, c in _straighten(tuple(word)):
            out[w] = out.get(w, 0) + c
        return cls(out)

    def __add__(self, other: 'WittElement') -> 'WittElement':
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return WittElement(out)

    def __sub__(self, other: 'WittElement') -> 'WittElement':
        return self + other.scale(-1)

    def scale(self, r: Scalar) -> 'WittElement':
        return WittElement({w: r * c for w, c in self.terms.items()})

    def __mul__(self, other: 'WittElement') -> 'WittElement':
        out: Dict[Word, Scalar] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                for w, c in _straighten(w1 + w2):
                    out[w] = out.get(w, 0) + c1 * c2 * c
        return WittElement(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, WittElement) and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> Optional[int]:
        """Common grading sum(word), None when inhomogeneous"""
        degrees = {sum(w) for w in self.terms}
        return degrees.pop() if len(degrees) == 1 else None

    def coproduct(self) -> TensorElement:
        # generators are primitive: an ordered monomial splits over subsets of its letters
        out: Dict[Tuple, Scalar] = {}
        for word, c in self.terms.items():
            positions = range(len(word))
            for r in range(len(word) + 1):
                for chosen in combinations(positions, r):
                    left = tuple(word[i] for i in chosen)
                    right = tuple(word[i] for i in positions if i not in chosen)
                    out[(left, right)] = out.get((left, right), 0) + c
        return TensorElement(out)

    def tensor(self, other: 'WittElement') -> TensorElement:
        return TensorElement({(w1, w2): c1 * c2 for w1, c1 in self.terms.items() for w2, c2 in other.terms.items()})

    def represent(self, weight: int = 0) -> ShiftOperator:
        """Action on R_N; weight 0 is the Laurent ring"""
        out = ShiftOperator()
        for word, c in self.terms.items():
            op = ShiftOperator.identity()
            for m in word:
                op = op * witt_operator(m, weight)
            out = out + op.scale(c)
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*" + ("".join(f"L{m}" for m in w) or "1") for w, c in sorted(self.terms.items()))


def log_curve(curve: Curve) -> List:
    """Coefficients of log(c) = sum_r (-1)^(r+1) (c - 1)^r / r, the constant one being zero"""
    zero = curve.zero
    shifted = Curve([zero] + curve.coefficients[1:], curve.one, curve.variable)
    power = shifted
    out = [zero] * (curve.order + 1)
    for r in range(1, curve.order + 1):
        sign = Fraction((-1) ** (r + 1), r)
        out = [a + b.scale(sign) for a, b in zip(out, power.coefficients)]
        power = power * shifted
    return out


def exp_curve(log_coefficients: List, one) -> Curve:
    """sum_r X^r / r! for X with vanishing constant coefficient"""
    order = len(log_coefficients) - 1
    zero = one.scale(0)
    x = Curve([zero] + list(log_coefficients[1:]), one)
    out = [one] + [zero] * order
    power = Curve([one] + [zero] * order, one)
    for r in range(1, order + 1):
        power = power * x
        fact = Fraction(1, factorial(r))
        out = [a + b.scale(fact) for a, b in zip(out, power.coefficients)]
    return Curve(out, one)


def _as_derivation(op: ShiftOperator) -> WittElement:
    # x^s c theta = -c L_s on the Laurent ring
    out = WittElement()
    for s, poly in op.terms.items():
        c = poly.coeff(THETA)
        out = out + WittElement.generator(s).scale(-Fraction(int(c.numerator), int(c.denominator)))
    return out


def grouplike_from_automorphism(automorphism: ModuleCurve, order: Optional[int] = None) -> Curve:
    """G = exp(log a) for a curve a of Laurent ring automorphisms, as a curve in U(Witt)

    Each log coefficient must satisfy Leibniz on the window, else NOT_AUTOMORPHISM.
    """
    if automorphism.weight != 0:
        raise VerificationError(ErrorCode.CONFIG_INVALID, "automorphism curves act on the Laurent ring (N = 0)")
    curve = automorphism.curve if order is None else automorphism.curve.truncate(order)
    if curve[0] != ShiftOperator.identity():
        raise VerificationError(ErrorCode.BAD_CONSTANT, f"{automorphism.name} does not start at the identity")
    logs = log_curve(curve)
    derivations = [WittElement()]
    for k, op in enumerate(logs[1:], start=1):
        defect = op.leibniz_defect(automorphism.window)
        if defect is not None:
            shift, a, b = defect
            raise VerificationError(
                ErrorCode.NOT_AUTOMORPHISM,
                f"log coefficient {k} of {automorphism.name} is not a derivation",
                {"order": k, "shift": shift, "a": a, "b": b, "operator": op},
            )
        derivations.append(_as_derivation(op))
    return exp_curve(derivations, WittElement.one())


def pushforward(curve: Curve, weight: int = 0) -> Curve:
    return Curve([c.represent(weight) for c in curve.coefficients], ShiftOperator.identity(), "eps")


def lifting_digest(liftings: Dict[int, Curve]) -> str:
    """Content hash of graded liftings, stable across runs"""
    h = hashlib.sha256()
    for k in sorted(liftings):
        for j, c in enumerate(liftings[k].coefficients):
            for word, v in sorted(c.terms.items()):
                h.update(f"{k}:{j}:{word}:{v};".encode())
    return h.hexdigest()[:16]
