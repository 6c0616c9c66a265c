"""Complete homogeneous symmetric functions through power sums (Newton's identities)"""
from fractions import Fraction
from typing import Dict, List, Sequence

from sympy import QQ
from sympy.polys.rings import ring

from core.partitions import Partition, partitions_of

SymTable = Dict[int, Dict[Partition, Fraction]]


def h_from_p(max_n: int) -> SymTable:
    """h_n = sum over |lambda| = n of p_lambda / z_lambda, for 0 <= n <= max_n

    Coefficient tables are keyed by the partition lambda of the monomial p_lambda.
    """
    if max_n < 1:
        raise ValueError(f"max_n must be positive, got {max_n}")
    return {n: {lam: Fraction(1, lam.z) for lam in partitions_of(n)} for n in range(max_n + 1)}


def _power_sum_ring(max_n: int, symbol: str):
    names = ",".join(f"{symbol}{k}" for k in range(1, max_n + 1))
    R, *gens = ring(names, QQ)
    return R, gens


def _to_table(poly, max_n: int) -> Dict[Partition, Fraction]:
    out = {}
    for monom, coeff in poly.items():
        lam = Partition(tuple(monom))
        out[lam] = Fraction(int(coeff.numerator), int(coeff.denominator))
    return out


def p_from_h(max_n: int) -> SymTable:
    """p_n in terms of products h_lambda, from p_n = n h_n - sum_{i<n} p_i h_{n-i}"""
    R, hs = _power_sum_ring(max_n, "h")
    ps = [R.zero]
    for n in range(1, max_n + 1):
        p_n = n * hs[n - 1] - sum((ps[i] * hs[n - i - 1] for i in range(1, n)), R.zero)
        ps.append(p_n)
    return {n: _to_table(ps[n], max_n) for n in range(1, max_n + 1)}


def h_sequence(power_sums: Sequence, n: int, one) -> List:
    """h_0..h_n of any commutative Q-algebra from its power sums p_1..p_n

    Uses k h_k = sum_{i=1..k} p_i h_{k-i}; `one` is the unit of the algebra.
    """
    hs = [one]
    for k in range(1, n + 1):
        acc = power_sums[0] * hs[k - 1]
        for i in range(2, k + 1):
            acc = acc + power_sums[i - 1] * hs[k - i]
        hs.append(acc * Fraction(1, k) if not hasattr(acc, "ring") else acc.quo_ground(k))
    return hs


def roundtrip_is_identity(max_n: int) -> bool:
    """Substitute h_from_p into p_from_h and compare with the power sums"""
    R, ps = _power_sum_ring(max_n, "p")
    h_polys = []
    for n, table in h_from_p(max_n).items():
        if n == 0:
            continue
        poly = R.zero
        for lam, c in table.items():
            term = R(QQ(c.numerator, c.denominator))
            for k, e in enumerate(lam.exponents, start=1):
                term *= ps[k - 1] ** e
            poly += term
        h_polys.append(poly)
    for n, table in p_from_h(max_n).items():
        poly = R.zero
        for lam, c in table.items():
            term = R(QQ(c.numerator, c.denominator))
            for k, e in enumerate(lam.exponents, start=1):
                term *= h_polys[k - 1] ** e
            poly += term
        if poly != ps[n - 1]:
            return False
    return True
