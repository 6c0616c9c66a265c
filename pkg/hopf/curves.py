"""Truncated curves 1 + c_1 x + ... + c_N x^N with algebra or operator coefficients"""
from math import factorial
from typing import Any, Callable, List, Optional, Sequence

from hopf.algebra import HopfContext, NCPoly, TensorElement
from utils.constants import CombineMode, ErrorCode
from utils.errors import VerificationError


class Curve:
    """Power series truncated at x^order

    Coefficients share one algebra: they support +, -, * and scale(r); `one` is
    its unit. Group-likeness, once certified, keeps the per-order residue checks.
    """

    __slots__ = ["coefficients", "one", "variable", "certificate"]

    def __init__(self, coefficients: Sequence[Any], one: Any = None, variable: str = "x"):
        if not coefficients:
            raise ValueError("a curve needs at least its constant coefficient")
        self.coefficients: List[Any] = list(coefficients)
        self.one = one if one is not None else self.coefficients[0]
        self.variable = variable
        self.certificate: Optional[List[bool]] = None

    @classmethod
    def constant(cls, one: Any, order: int, variable: str = "x") -> 'Curve':
        zero = one.scale(0)
        return cls([one] + [zero] * order, one, variable)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @property
    def zero(self) -> Any:
        return self.one.scale(0)

    def __getitem__(self, n: int) -> Any:
        return self.coefficients[n]

    def __len__(self) -> int:
        return len(self.coefficients)

    def __eq__(self, other) -> bool:
        return isinstance(other, Curve) and self.coefficients == other.coefficients

    def truncate(self, order: int) -> 'Curve':
        return Curve(self.coefficients[:order + 1], self.one, self.variable)

    def padded(self, order: int) -> 'Curve':
        extra = [self.zero] * max(0, order - self.order)
        return Curve(self.coefficients[:order + 1] + extra, self.one, self.variable)

    def __mul__(self, other: 'Curve') -> 'Curve':
        if self.order != other.order:
            raise VerificationError(ErrorCode.ORDER_MISMATCH, f"orders {self.order} and {other.order}")
        out = []
        for n in range(self.order + 1):
            acc = self.zero
            for m in range(n + 1):
                a, b = self.coefficients[m], other.coefficients[n - m]
                if _is_zero(a) or _is_zero(b):
                    continue
                acc = acc + a * b
            out.append(acc)
        return Curve(out, self.one, self.variable)

    def substitute_power(self, k: int) -> 'Curve':
        """c(x^k), same truncation order"""
        if k < 1:
            raise ValueError(f"substitution power must be positive, got {k}")
        out = [self.zero] * (self.order + 1)
        for j, c in enumerate(self.coefficients):
            if j * k <= self.order:
                out[j * k] = c
        return Curve(out, self.one, self.variable)

    def scale(self, r) -> 'Curve':
        """c(r x)"""
        out = []
        for j, c in enumerate(self.coefficients):
            out.append(self.one if j == 0 else c.scale(r ** j))
        return Curve(out, self.one, self.variable)

    def inverse(self) -> 'Curve':
        """c(x)^-1 from d_n = -sum_{j>=1} c_j d_(n-j)"""
        if self.coefficients[0] != self.one:
            raise VerificationError(ErrorCode.BAD_CONSTANT, "constant coefficient is not 1")
        d = [self.one]
        for n in range(1, self.order + 1):
            acc = self.zero
            for j in range(1, n + 1):
                c = self.coefficients[j]
                if _is_zero(c) or _is_zero(d[n - j]):
                    continue
                acc = acc - c * d[n - j]
            d.append(acc)
        return Curve(d, self.one, self.variable)

    def first_nonconstant(self) -> Optional[int]:
        for j in range(1, self.order + 1):
            if not _is_zero(self.coefficients[j]):
                return j
        return None

    def grouplike_residuals(self, coproduct: Callable[[Any], TensorElement]) -> List[bool]:
        """Per order n: Delta(c_n) == sum_m c_m (x) c_(n-m)"""
        checks = []
        for n in range(self.order + 1):
            rhs = TensorElement()
            for m in range(n + 1):
                rhs = rhs + self.coefficients[m].tensor(self.coefficients[n - m])
            checks.append(coproduct(self.coefficients[n]) == rhs)
        return checks

    def certify(self, ctx: Optional[HopfContext] = None) -> bool:
        self.certificate = self.grouplike_residuals(_coproduct_for(ctx))
        return all(self.certificate)

    def is_grouplike(self, ctx: Optional[HopfContext] = None) -> bool:
        return all(self.grouplike_residuals(_coproduct_for(ctx)))

    def __repr__(self) -> str:
        return f"Curve(order={self.order})"


def _is_zero(x: Any) -> bool:
    check = getattr(x, "is_zero", None)
    if callable(check):
        return check()
    return False


def _coproduct_for(ctx: Optional[HopfContext]) -> Callable[[Any], TensorElement]:
    if ctx is not None:
        return lambda x: ctx.coproduct(x) if isinstance(x, NCPoly) else x.coproduct()
    return lambda x: x.coproduct()


def curve_combine(a: Curve, b: Optional[Curve], mode: CombineMode, k: int = 1, r=1) -> Curve:
    """MUL: a(x)b(x); SUBSTITUTE_POWER: a(x^k); SCALE: a(r x)"""
    mode = CombineMode(mode)
    if mode is CombineMode.MUL:
        if b is None:
            raise ValueError("MUL needs two curves")
        return a * b
    if mode is CombineMode.SUBSTITUTE_POWER:
        return a.substitute_power(k)
    return a.scale(r)


def antipode_curve(c: Curve) -> Curve:
    """S applied coefficientwise to a group-like curve is its inverse series"""
    return c.inverse()


def seed_lifting(a: Any, n: int) -> Curve:
    """sum_{i<=n} (n!^i / i!) a^i x^i, an order-n lifting of n! a"""
    one = a.one()
    coeffs = [one]
    power = one
    for i in range(1, n + 1):
        power = power * a
        coeffs.append(power.scale(factorial(n) ** i // factorial(i)))
    return Curve(coeffs, one)


def curve_from_basis(family_letter: Callable[[int], Any], one: Any, order: int) -> Curve:
    """1 + g_1 x + g_2 x^2 + ... for a structural family"""
    return Curve([one] + [family_letter(n) for n in range(1, order + 1)], one)
