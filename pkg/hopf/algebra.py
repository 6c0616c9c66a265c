"""
Graded free associative algebras whose generators come in group-like or primitive families
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from utils.constants import Classification, ErrorCode, FamilyKind
from utils.errors import VerificationError

logger = logging.getLogger("zlift")

Scalar = Union[int, Fraction]


def _norm(c: Scalar) -> Scalar:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


@dataclass(frozen=True, order=True)
class GeneratorId:
    """Letter g_index of family `family`; index is a multi-index for structural families"""
    family: str
    index: Tuple[int, ...]

    def __str__(self) -> str:
        idx = ",".join(str(i) for i in self.index)
        return f"{self.family}{idx}" if len(self.index) == 1 else f"{self.family}({idx})"


Word = Tuple[GeneratorId, ...]


class TensorElement:
    """Finite sum of basis pairs (left, right) with exact coefficients"""

    __slots__ = ["terms"]

    def __init__(self, terms: Optional[Dict[Tuple, Scalar]] = None):
        self.terms: Dict[Tuple, Scalar] = {}
        for key, c in (terms or {}).items():
            if c:
                self.terms[key] = _norm(c)

    def __add__(self, other: 'TensorElement') -> 'TensorElement':
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return TensorElement(out)

    def __sub__(self, other: 'TensorElement') -> 'TensorElement':
        return self + other.scale(-1)

    def scale(self, r: Scalar) -> 'TensorElement':
        return TensorElement({k: r * c for k, c in self.terms.items()})

    def __mul__(self, other: 'TensorElement') -> 'TensorElement':
        out: Dict[Tuple, Scalar] = {}
        for (l1, r1), c1 in self.terms.items():
            for (l2, r2), c2 in other.terms.items():
                key = (l1 + l2, r1 + r2)
                out[key] = out.get(key, 0) + c1 * c2
        return TensorElement(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorElement) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def mod(self, p: int) -> 'TensorElement':
        return TensorElement({k: c % p for k, c in self.terms.items()})

    def __repr__(self) -> str:
        return f"TensorElement({len(self.terms)} terms)"


class NCPoly:
    """Noncommutative polynomial: words of GeneratorIds with exact coefficients"""

    __slots__ = ["terms"]

    def __init__(self, terms: Optional[Dict[Word, Scalar]] = None):
        self.terms: Dict[Word, Scalar] = {}
        for w, c in (terms or {}).items():
            if c:
                self.terms[tuple(w)] = _norm(c)

    @classmethod
    def one(cls) -> 'NCPoly':
        return cls({(): 1})

    @classmethod
    def zero(cls) -> 'NCPoly':
        return cls()

    @classmethod
    def letter(cls, gen: GeneratorId, coeff: Scalar = 1) -> 'NCPoly':
        return cls({(gen,): coeff})

    @classmethod
    def word(cls, *gens: GeneratorId) -> 'NCPoly':
        return cls({tuple(gens): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def __add__(self, other: 'NCPoly') -> 'NCPoly':
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return NCPoly(out)

    def __neg__(self) -> 'NCPoly':
        return self.scale(-1)

    def __sub__(self, other: 'NCPoly') -> 'NCPoly':
        return self + (-other)

    def scale(self, r: Scalar) -> 'NCPoly':
        return NCPoly({w: r * c for w, c in self.terms.items()})

    def __mul__(self, other) -> 'NCPoly':
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: Dict[Word, Scalar] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return NCPoly(out)

    def __rmul__(self, r) -> 'NCPoly':
        return self.scale(r)

    def __pow__(self, k: int) -> 'NCPoly':
        out = NCPoly.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = NCPoly.one().scale(other)
        return isinstance(other, NCPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def counit(self) -> Scalar:
        return self.terms.get((), 0)

    def commutator(self, other: 'NCPoly') -> 'NCPoly':
        return self * other - other * self

    def mod(self, p: int) -> 'NCPoly':
        if not self.is_integral():
            raise VerificationError(ErrorCode.NON_INTEGRAL, "reduction mod p of a polynomial with non-integer coefficients")
        return NCPoly({w: c % p for w, c in self.terms.items()})

    def tensor(self, other: 'NCPoly') -> TensorElement:
        return TensorElement({(w1, w2): c1 * c2 for w1, c1 in self.terms.items() for w2, c2 in other.terms.items()})

    def sorted_terms(self) -> List[Tuple[Word, Scalar]]:
        return sorted(self.terms.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            name = "*".join(str(g) for g in w) or "1"
            parts.append(f"{c}*{name}" if c != 1 else name)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"NCPoly({self})"


@dataclass(frozen=True)
class Family:
    """A family of generators

    STRUCTURAL families of dimension k have letters g_a, a in Z>=0^k with |a| >= min_degree,
    and Delta(g_a) = sum_{b <= a} g_b (x) g_(a-b) (g_0 = 1, g_b = 0 for 0 < |b| < min_degree).
    PRIMITIVE families list their indices explicitly.
    """
    name: str
    kind: FamilyKind = FamilyKind.STRUCTURAL
    dim: int = 1
    min_degree: int = 1
    indices: Tuple[Tuple[int, ...], ...] = ()

    @property
    def slots(self) -> int:
        return self.dim if self.kind is FamilyKind.STRUCTURAL else 1


class HopfContext:
    """Declared generator families plus an optional total degree bound"""

    def __init__(self, families: Sequence[Family], degree_bound: Optional[int] = None):
        self.families: Dict[str, Family] = {}
        self._offset: Dict[str, int] = {}
        offset = 0
        for fam in families:
            if fam.name in self.families:
                raise ValueError(f"duplicate family {fam.name}")
            self.families[fam.name] = fam
            self._offset[fam.name] = offset
            offset += fam.slots
        self.nslots = offset
        self.degree_bound = degree_bound
        self._letter_cache: Dict[GeneratorId, TensorElement] = {}

    @classmethod
    def universal(cls, names: Iterable[str] = ("a", "b"), degree_bound: Optional[int] = None) -> 'HopfContext':
        """Free algebra on the coefficients of one group-like curve per name"""
        return cls([Family(n) for n in names], degree_bound)

    @classmethod
    def free_structural(cls, n: int, degree_bound: Optional[int] = None) -> 'HopfContext':
        """F_n: free algebra on Z_a, a in Z>=0^n nonzero"""
        return cls([Family("Z", FamilyKind.STRUCTURAL, dim=n)], degree_bound)

    def gen(self, family: str, *index: int) -> GeneratorId:
        g = GeneratorId(family, tuple(index))
        self.family_of(g)
        return g

    def letter(self, family: str, *index: int) -> NCPoly:
        return NCPoly.letter(self.gen(family, *index))

    def family_of(self, g: GeneratorId) -> Family:
        fam = self.families.get(g.family)
        if fam is None:
            raise VerificationError(ErrorCode.UNKNOWN_GENERATOR, f"undeclared family for letter {g}")
        if fam.kind is FamilyKind.STRUCTURAL:
            if len(g.index) != fam.dim or any(i < 0 for i in g.index) or sum(g.index) < max(fam.min_degree, 1):
                raise VerificationError(ErrorCode.UNKNOWN_GENERATOR, f"letter {g} is not in family {fam.name}")
        elif g.index not in fam.indices:
            raise VerificationError(ErrorCode.UNKNOWN_GENERATOR, f"letter {g} is not in family {fam.name}")
        return fam

    def _structural_letter(self, fam: Family, index: Tuple[int, ...]) -> Optional[Word]:
        """Word for g_index: () for index 0, None when the letter vanishes"""
        total = sum(index)
        if total == 0:
            return ()
        if total < fam.min_degree:
            return None
        return (GeneratorId(fam.name, index),)

    def letter_coproduct(self, g: GeneratorId) -> TensorElement:
        cached = self._letter_cache.get(g)
        if cached is not None:
            return cached
        fam = self.family_of(g)
        terms: Dict[Tuple, Scalar] = {}
        if fam.kind is FamilyKind.PRIMITIVE:
            terms[((g,), ())] = 1
            terms[((), (g,))] = 1
        else:
            for beta in product(*(range(a + 1) for a in g.index)):
                rest = tuple(a - b for a, b in zip(g.index, beta))
                left = self._structural_letter(fam, beta)
                right = self._structural_letter(fam, rest)
                if left is None or right is None:
                    continue
                terms[(left, right)] = terms.get((left, right), 0) + 1
        result = TensorElement(terms)
        self._letter_cache[g] = result
        return result

    def word_coproduct(self, w: Word) -> TensorElement:
        out = TensorElement({((), ()): 1})
        for g in w:
            out = out * self.letter_coproduct(g)
        return out

    def coproduct(self, x: NCPoly) -> TensorElement:
        """Algebra homomorphism extending the letter rules"""
        out: Dict[Tuple, Scalar] = {}
        for w, c in x.terms.items():
            for key, d in self.word_coproduct(w).terms.items():
                out[key] = out.get(key, 0) + c * d
        return TensorElement(out)

    def reduced_coproduct(self, x: NCPoly) -> TensorElement:
        """Delta(x) - x (x) 1 - 1 (x) x"""
        one = NCPoly.one()
        return self.coproduct(x) - x.tensor(one) - one.tensor(x)

    def counit(self, x: NCPoly) -> Scalar:
        return x.counit()

    def apply_left_counit(self, t: TensorElement) -> NCPoly:
        """(counit (x) id)"""
        return NCPoly({r: c for (l, r), c in t.terms.items() if l == ()})

    def apply_right_counit(self, t: TensorElement) -> NCPoly:
        """(id (x) counit)"""
        return NCPoly({l: c for (l, r), c in t.terms.items() if r == ()})

    def coassociativity_holds(self, x: NCPoly) -> bool:
        """(Delta (x) id) Delta = (id (x) Delta) Delta"""
        delta = self.coproduct(x)
        left: Dict[Tuple, Scalar] = {}
        right: Dict[Tuple, Scalar] = {}
        for (l, r), c in delta.terms.items():
            for (ll, lr), d in self.word_coproduct(l).terms.items():
                key = (ll, lr, r)
                left[key] = left.get(key, 0) + c * d
            for (rl, rr), d in self.word_coproduct(r).terms.items():
                key = (l, rl, rr)
                right[key] = right.get(key, 0) + c * d
        return {k: v for k, v in left.items() if v} == {k: v for k, v in right.items() if v}

    # gradings

    def letter_multidegree(self, g: GeneratorId) -> Tuple[int, ...]:
        fam = self.family_of(g)
        md = [0] * self.nslots
        off = self._offset[fam.name]
        if fam.kind is FamilyKind.STRUCTURAL:
            for i, a in enumerate(g.index):
                md[off + i] = a
        else:
            md[off] = sum(g.index)
        return tuple(md)

    def multidegree(self, w: Word) -> Tuple[int, ...]:
        md = [0] * self.nslots
        for g in w:
            for i, a in enumerate(self.letter_multidegree(g)):
                md[i] += a
        return tuple(md)

    def degree(self, w: Word) -> int:
        return sum(self.multidegree(w))

    def homogeneous_multidegree(self, x: NCPoly) -> Optional[Tuple[int, ...]]:
        degs = {self.multidegree(w) for w in x.terms}
        return degs.pop() if len(degs) == 1 else None

    def homogeneous_degree(self, x: NCPoly) -> Optional[int]:
        degs = {self.degree(w) for w in x.terms}
        return degs.pop() if len(degs) == 1 else None

    def _letters_below(self, target: Tuple[int, ...]) -> List[GeneratorId]:
        letters = []
        for fam in self.families.values():
            off = self._offset[fam.name]
            if fam.kind is FamilyKind.STRUCTURAL:
                box = target[off:off + fam.dim]
                for alpha in product(*(range(b + 1) for b in box)):
                    if sum(alpha) >= max(fam.min_degree, 1):
                        letters.append(GeneratorId(fam.name, tuple(alpha)))
            else:
                for idx in fam.indices:
                    if 0 < sum(idx) <= target[off]:
                        letters.append(GeneratorId(fam.name, idx))
        return sorted(letters)

    def words_of_multidegree(self, target: Sequence[int]) -> List[Word]:
        """All words of exactly this multidegree, sorted"""
        target = tuple(target)

        @lru_cache(maxsize=None)
        def build(t: Tuple[int, ...]) -> Tuple[Word, ...]:
            if not any(t):
                return ((),)
            out = []
            for g in self._letters_below(t):
                md = self.letter_multidegree(g)
                rest = tuple(a - b for a, b in zip(t, md))
                if any(r < 0 for r in rest):
                    continue
                out.extend((g,) + tail for tail in build(rest))
            return tuple(out)

        return sorted(build(target))

    def multidegrees_of_total(self, d: int) -> Iterator[Tuple[int, ...]]:
        def compositions(total: int, slots: int):
            if slots == 1:
                yield (total,)
                return
            for first in range(total + 1):
                for rest in compositions(total - first, slots - 1):
                    yield (first,) + rest
        yield from compositions(d, self.nslots)

    def words_of_degree(self, d: int) -> List[Word]:
        words: List[Word] = []
        for md in self.multidegrees_of_total(d):
            words.extend(self.words_of_multidegree(md))
        return sorted(words)


def classify(x, ctx: Optional[HopfContext] = None) -> Classification:
    """PRIMITIVE if Delta(x) = x(x)1 + 1(x)x, GROUPLIKE if Delta(x) = x(x)x, else NEITHER"""
    if isinstance(x, NCPoly):
        if ctx is None:
            raise ValueError("classifying a noncommutative polynomial needs its context")
        delta = ctx.coproduct(x)
    else:
        delta = x.coproduct()
    one = x.one()
    if delta == x.tensor(one) + one.tensor(x):
        return Classification.PRIMITIVE
    if delta == x.tensor(x):
        return Classification.GROUPLIKE
    return Classification.NEITHER
