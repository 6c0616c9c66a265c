"""
The partition matrix m_(lambda, mu): coefficient of e^beta in L_lambda gamma(1)^j1 gamma(2)^j2 ... e^beta

Only three relations are used: [L_i, gamma(j)] = j gamma(j - i), L_i e^beta = 0 = gamma(-i) e^beta
for i > 0 and gamma(0) e^beta = t e^beta with t = (beta, gamma). The gamma modes commute.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import List, Sequence, Tuple

from sympy import ZZ, Matrix, expand
from sympy.polys.rings import ring

from core.partitions import Partition, partition_product_check, partitions_of
from vertex.fock import FockSpace, as_fraction
from vertex.modes import heisenberg
from vertex.virasoro import virasoro
from utils.report import Report

logger = logging.getLogger("zlift")

T_RING, T = ring("t", ZZ)


@lru_cache(maxsize=None)
def _mode_ring(n: int):
    """t and commuting creators g_1..g_n standing for gamma(1)..gamma(n)"""
    R, t, *gs = ring(",".join(["t"] + [f"g{j}" for j in range(1, n + 1)]), ZZ)
    return R, t, gs


def _lower(i: int, f, t, gs):
    """L_i (i > 0) acting on f(g) e^beta as sum_j j g_(j-i) d/dg_j with g_0 = t"""
    out = f.ring.zero
    for j in range(i, len(gs) + 1):
        d = f.diff(gs[j - 1])
        if d:
            out += j * (t if j == i else gs[j - i - 1]) * d
    return out


def descent_coefficient(lam: Partition, mu: Partition):
    """m_(lambda, mu) as a polynomial in t; L_lambda = L_(lambda_1) L_(lambda_2) ... acts right to left"""
    n = mu.size
    if lam.size != n:
        raise ValueError(f"|{lam}| != |{mu}|")
    R, t, gs = _mode_ring(max(n, 1))
    f = R.one
    for part in mu.parts:
        f = f * gs[part - 1]
    for i in reversed(lam.parts):
        f = _lower(i, f, t, gs)
        if not f:
            return T_RING.zero
    return T_RING({(monom[0],): c for monom, c in f.items() if not any(monom[1:])})


@dataclass
class DescentMatrix:
    """p(n) x p(n) matrix over Z[t], rows L_lambda and columns w_mu in canonical partition order"""
    n: int
    partitions: List[Partition]
    entries: List[List[object]]

    @classmethod
    def build(cls, n: int) -> 'DescentMatrix':
        parts = partitions_of(n)
        return cls(n, parts, [[descent_coefficient(lam, mu) for mu in parts] for lam in parts])

    def above_diagonal(self) -> List[Tuple[str, str]]:
        """Nonzero m_(lambda, mu) with lambda > mu"""
        return [(str(self.partitions[r]), str(self.partitions[c]))
                for r in range(len(self.partitions)) for c in range(r + 1, len(self.partitions))
                if self.entries[r][c]]

    def determinant(self):
        det = Matrix([[e.as_expr() for e in row] for row in self.entries]).det(method="bareiss")
        return T_RING.from_expr(expand(det)) if det != 0 else T_RING.zero

    def at(self, t0: int) -> int:
        rows = [[int(e.evaluate(T, t0)) if e else 0 for e in row] for row in self.entries]
        return int(Matrix(rows).det(method="bareiss"))


def diagonal_value(lam: Partition):
    """P(lambda) F(lambda) t^l(lambda)"""
    return T_RING({(lam.length,): lam.P * lam.F})


def certify_descent_matrix(n: int, report: Report = None, samples: Sequence[int] = (1, 2, -3)) -> Report:
    """Triangularity, diagonal, determinant and quotient certificates for degree n"""
    report = report or Report(suite="noghost", params={"n": n})
    m = DescentMatrix.build(n)
    prefix = f"m-matrix.n{n}."

    above = m.above_diagonal()
    report.add(prefix + "triangular", not above, {"nonzero_above": above[:5], "size": len(m.partitions)})

    wrong = [str(lam) for k, lam in enumerate(m.partitions) if m.entries[k][k] != diagonal_value(lam)]
    report.add(prefix + "diagonal", not wrong, {"mismatches": wrong})

    det = m.determinant()
    expected = prod((diagonal_value(lam) for lam in m.partitions), start=T_RING.one)
    report.add(prefix + "determinant", det == expected, {"det": det.as_expr(), "expected": expected.as_expr()})

    # prod P = prod F turns det / (prod F)^2 into prod t^l
    p_product, f_product, _ = partition_product_check(n)
    t_power = sum(lam.length for lam in m.partitions)
    quotient = T_RING({(t_power,): 1})
    report.add(prefix + "quotient", p_product == f_product and det == quotient * f_product ** 2,
               {"prod_P": p_product, "prod_F": f_product, "t_power": t_power})

    bad = [t0 for t0 in samples if m.at(t0) != int(det.evaluate(T, t0))]
    report.add(prefix + "numeric", not bad, {"samples": list(samples), "mismatches": bad})
    logger.debug(f"descent matrix n={n}: det {det.as_expr()}")
    return report


def descent_oracle(space: FockSpace, beta: Sequence[int], gamma: Sequence[int],
                   lam: Partition, mu: Partition) -> Fraction:
    """m_(lambda, mu) at t = (beta, gamma) from the lattice vertex algebra modes

    ValueError if the result is not a multiple of e^beta.
    """
    beta = tuple(beta)
    state = space.ground(beta)
    for part in mu.parts:
        state = heisenberg(space, gamma, part, state)
    for i in reversed(lam.parts):
        state = virasoro(space, i, state)
    poly = state.terms.get(beta)
    if set(state.terms) - {beta} or (poly is not None and any(any(m) for m in poly.keys())):
        raise ValueError(f"L_{lam} w_{mu} is not a multiple of e^{beta}")
    return as_fraction(poly.get(space.ring.zero_monom)) if poly is not None else Fraction(0)
