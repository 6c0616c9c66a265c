"""
Integral exponential series over a window of commuting variables Gamma_i and its
factorization over classes of primitive necklace pairs
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ, Symbol, expand_func, factorial, rf
from sympy.polys.rings import ring

from core.symmetric import roundtrip_is_identity
from utils.constants import ErrorCode
from utils.errors import VerificationError
from utils.report import Report

logger = logging.getLogger("zlift")

IntSeq = Tuple[int, ...]
# index -> exponent, plus the power of x under key None
Monomial = Tuple[Tuple[Optional[int], int], ...]


def gamma_window(width: int, include_zero: bool = False) -> Tuple[int, ...]:
    """Indices -width..width, zero only on request"""
    if width < 0:
        raise VerificationError(ErrorCode.EMPTY_WINDOW, f"negative window width {width}")
    return tuple(i for i in range(-width, width + 1) if i or include_zero)


def rotations(seq: IntSeq) -> List[IntSeq]:
    return [seq[i:] + seq[:i] for i in range(len(seq))]


def canonical_rotation(seq: IntSeq) -> IntSeq:
    """Lexicographically least cyclic rotation"""
    return min(rotations(tuple(seq)))


def period(seq: IntSeq) -> int:
    """Length of the primitive word p with seq = p^(len/len p); equals the orbit size under rotation"""
    m = len(seq)
    for p in range(1, m + 1):
        if m % p == 0 and seq == seq[p:] + seq[:p]:
            return p
    return m


@dataclass(frozen=True)
class NecklaceClass:
    """Class of a primitive pair (I, J) up to independent rotations of I and J"""
    rep_I: IntSeq
    rep_J: IntSeq
    m: int
    n: int
    m_orbits: int
    n_orbits: int
    exponent: int

    @property
    def total_length(self) -> int:
        return self.m + self.n

    def __str__(self) -> str:
        return f"({','.join(map(str, self.rep_I))}|{','.join(map(str, self.rep_J))})^{self.exponent}"


def _necklaces(window: Sequence[int], length: int) -> Dict[int, List[IntSeq]]:
    """Canonical rotations of length `length`, grouped by their sum"""
    out: Dict[int, List[IntSeq]] = {}
    for seq in product(window, repeat=length):
        if seq == canonical_rotation(seq):
            out.setdefault(sum(seq), []).append(seq)
    return out


def class_exponent(I: IntSeq, J: IntSeq) -> Fraction:
    """Sigma(I) m' n' / (m n) for the pair (I, J)"""
    m, n = len(I), len(J)
    return Fraction(sum(I) * period(I) * period(J), m * n)


def necklace_classes(window: Sequence[int], max_len: int) -> List[NecklaceClass]:
    """One representative per class with Sigma(I) = -Sigma(J) > 0 and l(I) + l(J) <= max_len"""
    if max_len < 1:
        raise ValueError(f"max_len must be positive, got {max_len}")
    window = tuple(sorted(set(window)))
    if not window:
        raise VerificationError(ErrorCode.EMPTY_WINDOW, "no Gamma indices in the window")
    by_length = {m: _necklaces(window, m) for m in range(1, max_len)}
    classes = []
    for m in range(1, max_len):
        for n in range(1, max_len - m + 1):
            for s, left in sorted(by_length[m].items()):
                if s <= 0:
                    continue
                for I in left:
                    for J in by_length[n].get(-s, []):
                        mp, np_ = period(I), period(J)
                        if gcd(m // mp, n // np_) != 1:
                            continue
                        e = class_exponent(I, J)
                        if s % (m // mp) or s % (n // np_) or e.denominator != 1:
                            raise VerificationError(ErrorCode.NON_INTEGER_EXPONENT,
                                                    f"class ({I}, {J}) has exponent {e}")
                        classes.append(NecklaceClass(I, J, m, n, mp, np_, int(e)))
    logger.debug(f"necklace_classes: {len(classes)} classes for window {window}, length <= {max_len}")
    return classes


class GammaSpace:
    """Polynomials over QQ in x and Gamma_i (i in the window), truncated at a total Gamma-degree"""

    def __init__(self, window: Iterable[int], degree_bound: int):
        self.window = tuple(sorted(set(window)))
        if not self.window:
            raise VerificationError(ErrorCode.EMPTY_WINDOW, "no Gamma indices in the window")
        if degree_bound < 0:
            raise ValueError(f"degree bound must be non-negative, got {degree_bound}")
        self.degree_bound = degree_bound
        names = ["x"] + [f"G{i}" if i >= 0 else f"Gm{-i}" for i in self.window]
        self.ring, self.x, *gammas = ring(",".join(names), QQ)
        self.gamma = dict(zip(self.window, gammas))

    def truncate(self, poly):
        return self.ring({m: c for m, c in poly.items() if sum(m[1:]) <= self.degree_bound})

    def mul(self, a, b):
        return self.truncate(a * b)

    def word(self, seq: Iterable[int]):
        """Gamma_I"""
        out = self.ring.one
        for i in seq:
            out *= self.gamma[i]
        return out

    def monomial(self, powers: Dict[Optional[int], int]):
        """Gamma monomial from {index: exponent}; key None is the power of x"""
        out = self.ring.one
        for i, e in powers.items():
            out *= (self.x if i is None else self.gamma[i]) ** e
        return out

    def coefficient(self, poly, powers: Dict[Optional[int], int]) -> Fraction:
        c = poly.coeff(self.monomial(powers))
        return Fraction(int(c.numerator), int(c.denominator))

    def as_dict(self, poly) -> Dict[Monomial, Fraction]:
        keys = [None] + list(self.window)
        out = {}
        for m, c in poly.items():
            key = tuple((k, e) for k, e in zip(keys, m) if e)
            out[key] = Fraction(int(c.numerator), int(c.denominator))
        return out

    def exp(self, s):
        """exp(s) for s without constant term, truncated"""
        if s.coeff(self.ring.one):
            raise ValueError("exponential of a series with a constant term")
        result = self.ring.one
        term = self.ring.one
        k = 1
        while True:
            term = self.mul(term, s).quo_ground(k)
            if not term:
                break
            result += term
            k += 1
        return result

    def binomial_series(self, u, exponent: int, max_power: int):
        """(1 - u)^(-exponent) = sum_k C(exponent + k - 1, k) u^k, truncated"""
        result = self.ring.one
        power = self.ring.one
        for k in range(1, max_power + 1):
            power = self.mul(power, u)
            if not power:
                break
            result += _rising_binomial(exponent, k) * power
        return result


def _rising_binomial(s: int, k: int) -> int:
    """C(s + k - 1, k) for any integer s"""
    if k == 0:
        return 1
    if s >= 0:
        return comb(s + k - 1, k)
    return (-1) ** k * comb(-s, k)


def _sequence_sums(space: GammaSpace, length: int) -> Dict[int, object]:
    """sum over I in window^length of Gamma_I, grouped by Sigma(I)"""
    sums = {0: space.ring.one}
    for _ in range(length):
        nxt: Dict[int, object] = {}
        for s, poly in sums.items():
            for i in space.window:
                nxt[s + i] = nxt.get(s + i, space.ring.zero) + poly * space.gamma[i]
        sums = nxt
    return sums


def exponent_series(space: GammaSpace):
    """sum_{m,n>0} sum_{Sigma(J) = -Sigma(I) > 0} Sigma(I)/(m n) Gamma_I Gamma_J up to the degree bound"""
    bound = space.degree_bound
    by_length = {m: _sequence_sums(space, m) for m in range(1, bound)}
    s_total = space.ring.zero
    for m in range(1, bound):
        for n in range(1, bound - m + 1):
            for s, left in by_length[m].items():
                if s <= 0 or -s not in by_length[n]:
                    continue
                s_total += (left * by_length[n][-s]) * QQ(s, m * n)
    return s_total


def expand_necklace_direct(window: Iterable[int], degree_bound: int, orientation: int = 1):
    """exp of the exponent series in exact rational arithmetic; orientation -1 gives its inverse"""
    space = GammaSpace(window, degree_bound)
    if orientation not in (1, -1):
        raise ValueError(f"orientation must be 1 or -1, got {orientation}")
    return space, space.exp(exponent_series(space) * orientation)


def expand_necklace_product(classes: Sequence[NecklaceClass], window: Iterable[int], degree_bound: int,
                            orientation: int = 1):
    """Truncated product over classes of (1 - Gamma_I Gamma_J)^(-orientation * exponent)"""
    space = GammaSpace(window, degree_bound)
    result = space.ring.one
    for cls in classes:
        if cls.total_length > degree_bound:
            continue
        e = class_exponent(cls.rep_I, cls.rep_J)
        if e.denominator != 1:
            raise VerificationError(ErrorCode.NON_INTEGER_EXPONENT, f"class {cls} has exponent {e}")
        u = space.word(cls.rep_I + cls.rep_J)
        factor = space.binomial_series(u, orientation * int(e), degree_bound // cls.total_length)
        result = space.mul(result, factor)
    return space, result


def non_integral_coefficients(space: GammaSpace, poly) -> Dict[Monomial, Fraction]:
    return {m: c for m, c in space.as_dict(poly).items() if c.denominator != 1}


def zero_mode_factor(order: int, symbol: str = "s") -> List:
    """Coefficients of (1 - u)^(-s) in u up to u^order as polynomials in the symbol s"""
    s = Symbol(symbol)
    return [(expand_func(rf(s, k)) / factorial(k)).expand() for k in range(order + 1)]


def zero_mode_series(space: GammaSpace, J: IntSeq, s: int):
    """(1 - x Gamma_J)^(-s) with the symbolic coefficients evaluated at the integer s"""
    u = space.x * space.word(J)
    coeffs = zero_mode_factor(space.degree_bound // max(len(J), 1))
    sym = Symbol("s")
    result = space.ring.zero
    power = space.ring.one
    for k, c in enumerate(coeffs):
        value = c.subs(sym, s)
        if not value.is_integer:
            raise VerificationError(ErrorCode.NON_INTEGRAL, f"zero-mode coefficient {value} at s = {s}")
        result += int(value) * power
        power = space.mul(power, u)
    return result


def window_doubling_mismatches(width: int, degree_bound: int) -> Dict[str, Tuple[Fraction, Fraction]]:
    """Coefficients of monomials supported in the small window, compared after doubling the window"""
    small_space, small = expand_necklace_direct(gamma_window(width), degree_bound)
    large_space, large = expand_necklace_direct(gamma_window(2 * width), degree_bound)
    big = large_space.as_dict(large)
    out = {}
    for monomial, c in small_space.as_dict(small).items():
        other = big.get(monomial, Fraction(0))
        if other != c:
            out[str(monomial)] = (c, other)
    return out


def check_necklace(width: int, degree_bound: int, report: Optional[Report] = None) -> Report:
    """Certificate for the necklace exponential at one window and degree bound"""
    report = report or Report(suite="necklace", params={"window": width, "degree": degree_bound})
    window = gamma_window(width)
    prefix = f"E.w{width}.deg{degree_bound}"

    classes: List[NecklaceClass] = []

    def enumerate_classes():
        classes.extend(necklace_classes(window, degree_bound))
        return True, {"classes": len(classes), "max_exponent": max((c.exponent for c in classes), default=0)}

    report.run(f"{prefix}.class-exponents", enumerate_classes)

    direct: Dict[int, Tuple[GammaSpace, object]] = {}
    for orientation in (1, -1):
        label = "direct" if orientation == 1 else "direct-inverse"

        def direct_integral(orientation=orientation):
            space, poly = expand_necklace_direct(window, degree_bound, orientation)
            direct[orientation] = (space, poly)
            bad = non_integral_coefficients(space, poly)
            return not bad, {"terms": len(poly), "non_integral": {str(k): v for k, v in list(bad.items())[:5]}}

        report.run(f"{prefix}.{label}-integral", direct_integral)

    for orientation in (1, -1):
        label = "product" if orientation == 1 else "product-inverse"

        def product_matches(orientation=orientation):
            space, poly = expand_necklace_product(classes, window, degree_bound, orientation)
            if orientation not in direct:
                return False, {"reason": "direct expansion unavailable"}
            direct_space, direct_poly = direct[orientation]
            got, want = space.as_dict(poly), direct_space.as_dict(direct_poly)
            diff = [k for k in set(got) | set(want) if got.get(k, 0) != want.get(k, 0)]
            return not diff, {"differences": len(diff)}

        if classes:
            report.run(f"{prefix}.{label}-equals-direct", product_matches)
        else:
            report.skip(f"{prefix}.{label}-equals-direct", "no necklace classes")

    report.run(f"{prefix}.window-doubling",
               lambda: _as_check(window_doubling_mismatches(width, min(degree_bound, 4)), "mismatches"))

    def zero_mode():
        coeffs = zero_mode_factor(degree_bound)
        sym = Symbol("s")
        bad = [(k, s) for k, c in enumerate(coeffs) for s in range(-3, 4)
               if c.subs(sym, s) != _rising_binomial(s, k)]
        return not bad, {"order": degree_bound, "mismatches": bad}

    report.run(f"{prefix}.zero-mode-binomials", zero_mode)
    report.add(f"h-from-p.roundtrip.{degree_bound}", roundtrip_is_identity(degree_bound),
               {"max_n": degree_bound})
    return report


def _as_check(mismatches: Dict, key: str) -> Tuple[bool, Dict]:
    return not mismatches, {key: mismatches}
