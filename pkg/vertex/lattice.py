"""
Even lattices, their cocycles and the .cfg files describing them
"""
import configparser
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import isqrt
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix

from utils.constants import ErrorCode
from utils.errors import VerificationError

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class EvenLattice:
    """Z^rank with an even symmetric integer Gram matrix on the standard basis b_1..b_rank"""
    name: str
    gram: Tuple[Tuple[int, ...], ...]
    sector_window: int = 1
    weight_bound: int = 3

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        n = len(gram)
        if n == 0 or any(len(row) != n for row in gram):
            raise VerificationError(ErrorCode.PARSE_ERROR, f"gram matrix of {self.name} is not square")
        if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(n)):
            raise VerificationError(ErrorCode.PARSE_ERROR, f"gram matrix of {self.name} is not symmetric")
        odd = [i for i in range(n) if gram[i][i] % 2]
        if odd:
            raise VerificationError(ErrorCode.ODD_LATTICE, f"{self.name} has odd norm on basis vectors {odd}")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def inner(self, a: Sequence[int], b: Sequence[int]) -> int:
        return sum(a[i] * self.gram[i][j] * b[j] for i in range(self.rank) for j in range(self.rank))

    def norm(self, a: Sequence[int]) -> int:
        return self.inner(a, a)

    def gram_vector(self, a: Sequence[int]) -> Vector:
        """((a, b_1), ..., (a, b_rank))"""
        return tuple(sum(a[i] * self.gram[i][j] for i in range(self.rank)) for j in range(self.rank))

    def cocycle(self, a: Sequence[int], b: Sequence[int]) -> int:
        """epsilon(a, b) = (-1)^(sum_{i>j} a_i b_j (b_i, b_j))"""
        exponent = sum(a[i] * b[j] * self.gram[i][j] for i in range(self.rank) for j in range(i))
        return -1 if exponent % 2 else 1

    @cached_property
    def determinant(self) -> int:
        return int(Matrix(self.gram).det(method="bareiss"))

    @property
    def is_self_dual(self) -> bool:
        return abs(self.determinant) == 1

    @cached_property
    def inverse_gram(self) -> Tuple[Tuple[Fraction, ...], ...]:
        if self.determinant == 0:
            raise VerificationError(ErrorCode.DEGENERATE, f"gram matrix of {self.name} is singular")
        inv = Matrix(self.gram).inv()
        return tuple(tuple(Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(self.rank))
                     for i in range(self.rank))

    def basis_vector(self, i: int, sign: int = 1) -> Vector:
        return tuple(sign if j == i else 0 for j in range(self.rank))

    def sectors(self, radius: Optional[int] = None) -> List[Vector]:
        """All vectors with coordinates in [-radius, radius]"""
        radius = self.sector_window if radius is None else radius
        return [tuple(v) for v in product(range(-radius, radius + 1), repeat=self.rank)]

    def ground_weight(self, beta: Sequence[int]) -> int:
        return self.norm(beta) // 2


def add(a: Sequence[int], b: Sequence[int], k: int = 1) -> Vector:
    """a + k b"""
    return tuple(x + k * y for x, y in zip(a, b))


def load_lattice_config(path: str) -> EvenLattice:
    """Parse a [lattice] section with name, row-major gram, sector_window and weight_bound"""
    parser = configparser.ConfigParser()
    try:
        with open(path) as f:
            parser.read_file(f)
        section = parser["lattice"]
        entries = [int(x) for x in section["gram"].split()]
        rank = isqrt(len(entries))
        if rank * rank != len(entries):
            raise ValueError(f"{len(entries)} gram entries do not form a square matrix")
        gram = tuple(tuple(entries[i * rank:(i + 1) * rank]) for i in range(rank))
        return EvenLattice(
            name=section.get("name", os.path.splitext(os.path.basename(path))[0]),
            gram=gram,
            sector_window=section.getint("sector_window", 1),
            weight_bound=section.getint("weight_bound", 3),
        )
    except FileNotFoundError:
        raise VerificationError(ErrorCode.CONFIG_INVALID, f"lattice config {path} not found")
    except (configparser.Error, KeyError, ValueError) as e:
        raise VerificationError(ErrorCode.PARSE_ERROR, f"cannot parse lattice config {path}: {e}")


def resolve_lattice(name: str, lattice_dir: str) -> EvenLattice:
    """Load a lattice by file name (with or without .cfg) or path"""
    path = name if os.path.isabs(name) or os.path.exists(name) else os.path.join(lattice_dir, name)
    if not path.endswith(".cfg") and not os.path.exists(path):
        path += ".cfg"
    return load_lattice_config(path)
