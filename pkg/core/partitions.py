"""Integer partitions and their statistics"""
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Dict, List, Tuple

from sympy import divisor_sigma
from sympy.utilities.iterables import partitions as _sympy_partitions


@dataclass(frozen=True)
class Partition:
    """Partition stored as multiplicities (i_1, i_2, ...) of the parts 1, 2, ..."""
    exponents: Tuple[int, ...] = ()

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative multiplicity in {exps}")
        while exps and exps[-1] == 0:
            exps = exps[:-1]
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def from_parts(cls, parts) -> 'Partition':
        parts = list(parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        exps = [0] * (max(parts) if parts else 0)
        for p in parts:
            exps[p - 1] += 1
        return cls(tuple(exps))

    @classmethod
    def from_dict(cls, counts: Dict[int, int]) -> 'Partition':
        if not counts:
            return cls(())
        exps = [0] * max(counts)
        for part, mult in counts.items():
            exps[part - 1] = mult
        return cls(tuple(exps))

    def multiplicity(self, part: int) -> int:
        return self.exponents[part - 1] if 0 < part <= len(self.exponents) else 0

    @property
    def parts(self) -> Tuple[int, ...]:
        """Parts in weakly decreasing order"""
        out: List[int] = []
        for k in range(len(self.exponents), 0, -1):
            out.extend([k] * self.exponents[k - 1])
        return tuple(out)

    @property
    def size(self) -> int:
        return sum(k * e for k, e in enumerate(self.exponents, start=1))

    @property
    def length(self) -> int:
        return sum(self.exponents)

    @property
    def P(self) -> int:
        return prod(k ** e for k, e in enumerate(self.exponents, start=1))

    @property
    def F(self) -> int:
        return prod(factorial(e) for e in self.exponents)

    @property
    def z(self) -> int:
        """Centralizer order P*F, the denominator of p_lambda in h_n"""
        return self.P * self.F

    def sort_key(self) -> Tuple[int, ...]:
        return self.parts

    def __lt__(self, other: 'Partition') -> bool:
        # lambda > mu when the first differing part of lambda is larger
        return self.parts < other.parts

    def __str__(self) -> str:
        if not self.exponents:
            return "()"
        return "".join(
            f"{k}^{e}" if e > 1 else f"{k}"
            for k, e in reversed(list(enumerate(self.exponents, start=1))) if e
        )


def partition_stats(lam: Partition) -> Tuple[int, int, int, int]:
    """(P, F, l, |lambda|)"""
    return lam.P, lam.F, lam.length, lam.size


@lru_cache(maxsize=None)
def _partitions_cached(n: int) -> Tuple[Partition, ...]:
    found = [Partition.from_dict(dict(p)) for p in _sympy_partitions(n)]
    return tuple(sorted(found, key=Partition.sort_key, reverse=True))


def partitions_of(n: int) -> List[Partition]:
    """All partitions of n in canonical order: parts compared lexicographically, largest first

    For n = 4 this is 4, 31, 22, 211, 1111.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return list(_partitions_cached(n))


@lru_cache(maxsize=None)
def _colored_counts(colors: int, n: int) -> Tuple[int, ...]:
    # Euler transform of the constant sequence `colors`:
    # k a(k) = sum_{j=1..k} colors * sigma(j) * a(k - j)
    counts = [1]
    for k in range(1, n + 1):
        total = sum(colors * int(divisor_sigma(j)) * counts[k - j] for j in range(1, k + 1))
        counts.append(total // k)
    return tuple(counts)


def colored_partition_count(colors: int, n: int) -> int:
    """Coefficient of x^n in prod_{k>0} (1 - x^k)^(-colors)"""
    if colors < 1:
        raise ValueError(f"colors must be positive, got {colors}")
    if n < 0:
        return 0
    return _colored_counts(colors, n)[n]


def partition_count(n: int) -> int:
    return colored_partition_count(1, n) if n >= 0 else 0


def partition_product_check(n: int) -> Tuple[int, int, int]:
    """Products of P and F over partitions of n, and the closed form prod_i i^(sum_j p(n - ij))"""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    parts = partitions_of(n)
    lhs = prod(lam.P for lam in parts)
    rhs = prod(lam.F for lam in parts)
    closed = 1
    for i in range(2, n + 1):
        exponent = sum(partition_count(n - i * j) for j in range(1, n // i + 1))
        closed *= i ** exponent
    return lhs, rhs, closed
