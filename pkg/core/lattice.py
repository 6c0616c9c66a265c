"""
Integer lattices in Hermite normal form and exact integer linear systems
"""
import logging
from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import Matrix

try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy.core.numbers import igcdex

from utils.constants import ErrorCode, Membership
from utils.errors import VerificationError

logger = logging.getLogger("zlift")

IntVector = Tuple[int, ...]


def _axpy(a: int, x: Sequence[int], y: Sequence[int], start: int = 0) -> List[int]:
    """a*x + y, entries before `start` copied from y"""
    out = list(y)
    if a:
        for j in range(start, len(out)):
            if x[j]:
                out[j] += a * x[j]
    return out


class _Echelon:
    """Mutable echelon form keyed by pivot position (first nonzero coordinate)"""

    __slots__ = ["N", "rows"]

    def __init__(self, ambient_dim: int):
        self.N = ambient_dim
        self.rows: Dict[int, List[int]] = {}

    def add(self, vec: Sequence[int]):
        v = [int(x) for x in vec]
        if len(v) != self.N:
            raise ValueError(f"vector of length {len(v)} in ambient dimension {self.N}")
        j = 0
        while j < self.N:
            c = v[j]
            if c == 0:
                j += 1
                continue
            pivot = self.rows.get(j)
            if pivot is None:
                if c < 0:
                    v = [-x for x in v]
                self.rows[j] = v
                return
            a = pivot[j]
            if c % a == 0:
                v = _axpy(-(c // a), pivot, v, j)
                j += 1
                continue
            x, y, g = igcdex(a, c)
            new_pivot = [x * p + y * q for p, q in zip(pivot, v)]
            rest = [(a // g) * q - (c // g) * p for p, q in zip(pivot, v)]
            if new_pivot[j] < 0:
                new_pivot = [-t for t in new_pivot]
            self.rows[j] = new_pivot
            v = rest
            j += 1

    def reduced(self) -> List[List[int]]:
        """Basis with 0 <= entry < pivot above each pivot, ordered by pivot position"""
        order = sorted(self.rows)
        rows = {j: list(self.rows[j]) for j in order}
        for idx, j in enumerate(order):
            a = rows[j][j]
            for i in order[:idx]:
                q = rows[i][j] // a
                if q:
                    rows[i] = _axpy(-q, rows[j], rows[i], j)
        return [rows[j] for j in order]


class IntLatticeBasis:
    """Integer sublattice of Z^N with a canonical column-style HNF basis

    Basis column k has its first nonzero entry (positive) at pivot row p_k with
    p_1 < p_2 < ...; entries of earlier columns in row p_k lie in [0, pivot).
    """

    __slots__ = ["ambient_dim", "basis", "pivots"]

    def __init__(self, ambient_dim: int, basis: Sequence[Sequence[int]]):
        self.ambient_dim = ambient_dim
        self.basis: Tuple[IntVector, ...] = tuple(tuple(int(x) for x in col) for col in basis)
        self.pivots: Tuple[int, ...] = tuple(next(i for i, x in enumerate(col) if x) for col in self.basis)

    @classmethod
    def from_generators(cls, vectors: Iterable[Sequence[int]], ambient_dim: int) -> 'IntLatticeBasis':
        ech = _Echelon(ambient_dim)
        for v in vectors:
            ech.add(v)
        return cls(ambient_dim, ech.reduced())

    @classmethod
    def full(cls, ambient_dim: int) -> 'IntLatticeBasis':
        return cls(ambient_dim, [[1 if i == j else 0 for i in range(ambient_dim)] for j in range(ambient_dim)])

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntLatticeBasis) and self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"IntLatticeBasis(dim={self.ambient_dim}, rank={self.rank})"

    def coordinates(self, vec: Sequence[int]) -> Optional[List[int]]:
        """Integer coordinates of vec in the basis, or None if vec is not in the lattice"""
        v = [int(x) for x in vec]
        coords = []
        for col, p in zip(self.basis, self.pivots):
            if any(v[:p]):
                return None
            q, r = divmod(v[p], col[p])
            if r:
                return None
            coords.append(q)
            v = _axpy(-q, col, v, p)
        if any(v):
            return None
        return coords

    def membership(self, vec: Sequence[int]) -> bool:
        return self.coordinates(vec) is not None

    def __contains__(self, vec) -> bool:
        return self.membership(vec)

    def reduce(self, vec: Sequence[int]) -> List[int]:
        """Canonical representative of vec modulo the lattice (pivot entries in [0, pivot))"""
        v = [int(x) for x in vec]
        for col, p in zip(self.basis, self.pivots):
            q = v[p] // col[p]
            if q:
                v = _axpy(-q, col, v, p)
        return v

    def contains_lattice(self, other: 'IntLatticeBasis') -> bool:
        return all(self.membership(col) for col in other.basis)

    def index_in(self, super_lattice: 'IntLatticeBasis') -> int:
        """[super : self]; NOT_FINITE when ranks differ, NOT_SUBLATTICE if not contained"""
        if self.rank != super_lattice.rank:
            raise VerificationError(ErrorCode.NOT_FINITE, f"rank {self.rank} sublattice of rank {super_lattice.rank} lattice")
        if self.rank == 0:
            return 1
        rows = []
        for col in self.basis:
            coords = super_lattice.coordinates(col)
            if coords is None:
                raise VerificationError(ErrorCode.NOT_SUBLATTICE, "lattice is not contained in the proposed superlattice")
            rows.append(coords)
        return abs(int(Matrix(rows).det(method="bareiss")))

    def sum(self, other: 'IntLatticeBasis') -> 'IntLatticeBasis':
        return IntLatticeBasis.from_generators(list(self.basis) + list(other.basis), self.ambient_dim)


def lattice_from_generators(vectors: Iterable[Sequence[int]], ambient_dim: int) -> IntLatticeBasis:
    return IntLatticeBasis.from_generators(vectors, ambient_dim)


class RationalLattice:
    """Lattice in Q^N stored as (1/denominator) times an integer lattice"""

    __slots__ = ["lattice", "denominator"]

    def __init__(self, lattice: IntLatticeBasis, denominator: int = 1):
        self.lattice = lattice
        self.denominator = denominator

    @classmethod
    def from_generators(cls, vectors: Iterable[Sequence], ambient_dim: int) -> 'RationalLattice':
        vectors = [[Fraction(x) for x in v] for v in vectors]
        d = 1
        for v in vectors:
            for x in v:
                d = lcm(d, x.denominator)
        scaled = [[int(x * d) for x in v] for v in vectors]
        return cls(IntLatticeBasis.from_generators(scaled, ambient_dim), d)

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def ambient_dim(self) -> int:
        return self.lattice.ambient_dim

    def basis(self) -> List[List[Fraction]]:
        return [[Fraction(x, self.denominator) for x in col] for col in self.lattice.basis]

    def _scaled(self, vec: Sequence) -> Optional[List[int]]:
        out = []
        for x in vec:
            y = Fraction(x) * self.denominator
            if y.denominator != 1:
                return None
            out.append(int(y))
        return out

    def classify(self, vec: Sequence) -> Membership:
        scaled = self._scaled(vec)
        if scaled is None:
            return Membership.DENOMINATOR
        return Membership.MEMBER if self.lattice.membership(scaled) else Membership.NOT_IN_LATTICE

    def membership(self, vec: Sequence) -> bool:
        return self.classify(vec) is Membership.MEMBER

    def coordinates(self, vec: Sequence) -> Optional[List[int]]:
        scaled = self._scaled(vec)
        return None if scaled is None else self.lattice.coordinates(scaled)

    def add(self, vectors: Iterable[Sequence]) -> 'RationalLattice':
        return RationalLattice.from_generators(self.basis() + [list(v) for v in vectors], self.ambient_dim)

    def __eq__(self, other) -> bool:
        # the integer lattice of a rational lattice is determined up to the common denominator
        if not isinstance(other, RationalLattice):
            return False
        d = lcm(self.denominator, other.denominator)
        mine = IntLatticeBasis.from_generators([[x * (d // self.denominator) for x in c] for c in self.lattice.basis], self.ambient_dim)
        theirs = IntLatticeBasis.from_generators([[x * (d // other.denominator) for x in c] for c in other.lattice.basis], other.ambient_dim)
        return mine == theirs

    def __repr__(self) -> str:
        return f"RationalLattice(dim={self.ambient_dim}, rank={self.rank}, denominator={self.denominator})"


def hnf_with_transform(rows: List[List[int]], ncols: int) -> Tuple[List[List[int]], List[List[int]]]:
    """Column operations reducing the matrix to echelon form

    Returns (H, U) with H = A U; U is unimodular (ncols x ncols). Columns of H after
    the pivot columns are zero.
    """
    # work on columns: each column carries its image column and its U column
    cols = [[row[j] for row in rows] for j in range(ncols)]
    trans = [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    m = len(rows)
    done = 0
    for r in range(m):
        if done == ncols:
            break
        active = [j for j in range(done, ncols) if cols[j][r]]
        if not active:
            continue
        # gcd-combine all active columns into column `done`
        first = active[0]
        cols[done], cols[first] = cols[first], cols[done]
        trans[done], trans[first] = trans[first], trans[done]
        for j in range(done + 1, ncols):
            c = cols[j][r]
            if not c:
                continue
            a = cols[done][r]
            if c % a == 0:
                q = c // a
                cols[j] = [y - q * x for x, y in zip(cols[done], cols[j])]
                trans[j] = [y - q * x for x, y in zip(trans[done], trans[j])]
                continue
            x, y, g = igcdex(a, c)
            p, s = -(c // g), a // g
            new_col = [x * u + y * v for u, v in zip(cols[done], cols[j])]
            new_tr = [x * u + y * v for u, v in zip(trans[done], trans[j])]
            cols[j] = [p * u + s * v for u, v in zip(cols[done], cols[j])]
            trans[j] = [p * u + s * v for u, v in zip(trans[done], trans[j])]
            cols[done], trans[done] = new_col, new_tr
        if cols[done][r] < 0:
            cols[done] = [-x for x in cols[done]]
            trans[done] = [-x for x in trans[done]]
        done += 1
    H = [[cols[j][i] for j in range(ncols)] for i in range(m)]
    U = [[trans[j][i] for j in range(ncols)] for i in range(ncols)]
    return H, U


class IntegerSystem:
    """Sparse integer linear system A x = b solved over Z

    Unit pivots are eliminated first (Markowitz order); whatever remains is solved
    densely through a Hermite normal form with transform. Solutions are exact; the
    kernel basis returned is a Z-basis of all integer solutions of A x = 0.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: List[Dict[int, int]] = []
        self.rhs: List[int] = []

    def add_equation(self, coeffs: Dict[int, int], value: int = 0):
        row = {c: int(v) for c, v in coeffs.items() if v}
        if not row and not value:
            return
        self.rows.append(row)
        self.rhs.append(int(value))

    def solve(self, canonical: bool = False) -> Tuple[Optional[List[int]], List[List[int]]]:
        """(particular solution or None, kernel basis)"""
        rows = [dict(r) for r in self.rows]
        rhs = list(self.rhs)
        alive = set(range(len(rows)))
        col_rows: Dict[int, set] = {}
        for i, r in enumerate(rows):
            for c in r:
                col_rows.setdefault(c, set()).add(i)

        # (col, sign, row terms without col, rhs) in elimination order
        pivots: List[Tuple[int, int, Dict[int, int], int]] = []
        while True:
            best = None
            for i in alive:
                r = rows[i]
                for c, v in r.items():
                    if v == 1 or v == -1:
                        cost = (len(r) - 1) * (len(col_rows[c]) - 1)
                        key = (cost, i, c)
                        if best is None or key < best:
                            best = key
                if best is not None and best[0] == 0:
                    break
            if best is None:
                break
            _, i, c = best
            prow = rows[i]
            s = prow[c]
            alive.discard(i)
            for cc in prow:
                col_rows[cc].discard(i)
            others = {cc: v for cc, v in prow.items() if cc != c}
            pivots.append((c, s, others, rhs[i]))
            # x_c = s * (rhs_i - sum others)
            for k in list(col_rows.get(c, ())):
                rk = rows[k]
                f = rk.pop(c) * s
                col_rows[c].discard(k)
                rhs[k] -= f * rhs[i]
                for cc, v in others.items():
                    nv = rk.get(cc, 0) - f * v
                    if nv:
                        if cc not in rk:
                            col_rows.setdefault(cc, set()).add(k)
                        rk[cc] = nv
                    elif cc in rk:
                        del rk[cc]
                        col_rows[cc].discard(k)
        residual = [i for i in sorted(alive) if rows[i] or rhs[i]]
        logger.debug(f"integer system: {len(self.rows)} rows, {self.ncols} cols, "
                     f"{len(pivots)} unit pivots, {len(residual)} residual rows")

        pivot_cols = {p[0] for p in pivots}
        res_cols = sorted({c for i in residual for c in rows[i]})
        free_cols = [c for c in range(self.ncols) if c not in pivot_cols and c not in set(res_cols)]

        solvable = True
        if any(not rows[i] and rhs[i] for i in residual):
            solvable = False
        res_rows = [i for i in residual if rows[i]]
        res_particular: Dict[int, int] = {}
        res_kernel: List[Dict[int, int]] = []
        if res_rows:
            A = [[rows[i].get(c, 0) for c in res_cols] for i in res_rows]
            H, U = hnf_with_transform(A, len(res_cols))
            z = [0] * len(res_cols)
            pivot_of_col: List[Optional[int]] = []
            r = 0
            for j in range(len(res_cols)):
                while r < len(res_rows) and H[r][j] == 0:
                    # row with no new pivot must already be satisfied
                    r += 1
                pivot_of_col.append(r if r < len(res_rows) else None)
                if r < len(res_rows):
                    r += 1
            # forward substitution on echelon H
            for j, r in enumerate(pivot_of_col):
                if r is None:
                    break
                acc = rhs[res_rows[r]] - sum(H[r][jj] * z[jj] for jj in range(j))
                q, rem = divmod(acc, H[r][j])
                if rem:
                    solvable = False
                    break
                z[j] = q
            if solvable:
                for ri in range(len(res_rows)):
                    if sum(H[ri][jj] * z[jj] for jj in range(len(res_cols))) != rhs[res_rows[ri]]:
                        solvable = False
                        break
            y = [sum(U[i][j] * z[j] for j in range(len(res_cols))) for i in range(len(res_cols))]
            res_particular = {c: v for c, v in zip(res_cols, y) if v}
            for j, r in enumerate(pivot_of_col):
                if r is None:
                    res_kernel.append({c: U[i][j] for i, c in enumerate(res_cols) if U[i][j]})
        else:
            res_kernel = [{c: 1} for c in res_cols]

        def back_substitute(seed: Dict[int, int], homogeneous: bool) -> List[int]:
            x = [0] * self.ncols
            for c, v in seed.items():
                x[c] = v
            for c, s, others, b in reversed(pivots):
                acc = (0 if homogeneous else b) - sum(v * x[cc] for cc, v in others.items())
                x[c] = s * acc
            return x

        kernel = [back_substitute(k, True) for k in res_kernel]
        kernel += [back_substitute({c: 1}, True) for c in free_cols]
        if not solvable:
            return None, kernel
        particular = back_substitute(res_particular, False)
        if canonical and kernel:
            particular = IntLatticeBasis.from_generators(kernel, self.ncols).reduce(particular)
        return particular, kernel
