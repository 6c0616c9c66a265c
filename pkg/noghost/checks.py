"""Null descent certificate: partition matrices for every degree and transverse Gram determinants"""
import logging
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from core.partitions import partitions_of
from noghost.descent import T, certify_descent_matrix, descent_coefficient, descent_oracle
from noghost.transverse import discriminant_report, transverse_space
from vertex.fock import FockSpace
from vertex.lattice import EvenLattice, Vector
from utils.report import Report

logger = logging.getLogger("zlift")

HYPERBOLIC = ((0, 1), (1, 0))


def check_oracle(n: int, t0: int = 2) -> Tuple[bool, Dict]:
    """m_(lambda, mu) from the three relations against Virasoro and Heisenberg modes on II_1,1"""
    lattice = EvenLattice("II11", HYPERBOLIC, sector_window=t0, weight_bound=n)
    space = FockSpace(lattice, mode_bound=n + 1)
    beta, gamma = (0, t0), (1, 0)
    bad = []
    compared = 0
    for lam in partitions_of(n):
        for mu in partitions_of(n):
            symbolic = int(descent_coefficient(lam, mu).evaluate(T, t0))
            compared += 1
            if descent_oracle(space, beta, gamma, lam, mu) != symbolic:
                bad.append((str(lam), str(mu)))
    return not bad, {"t": t0, "compared": compared, "mismatches": bad[:5]}


def null_vectors(lattice: EvenLattice, radius: int = 2) -> List[Vector]:
    """Primitive nonzero norm 0 vectors of the box, smallest coordinates first"""
    found = [v for v in lattice.sectors(radius) if any(v) and lattice.norm(v) == 0 and gcd(*v) == 1]
    return sorted(found, key=lambda v: (sum(map(abs, v)), [-c for c in v]))


def sample_sectors(lattice: EvenLattice, pairings: Sequence[int] = (1, 2)) -> List[Tuple[Vector, List[Vector]]]:
    """(beta, gammas) with beta^2/2 <= 1 and one primitive norm 0 gamma for each |(beta, gamma)| in pairings"""
    rank = lattice.rank
    nulls = null_vectors(lattice)
    candidates = [lattice.basis_vector(0)]
    if rank >= 2:
        candidates.append(tuple(1 if i < 2 else 0 for i in range(rank)))
        candidates.append(tuple((1, -1)[i] if i < 2 else 0 for i in range(rank)))
    out = []
    for beta in candidates:
        if lattice.ground_weight(beta) > 1:
            continue
        gammas = []
        for t in pairings:
            gamma = next((g for g in nulls if abs(lattice.inner(beta, g)) == t), None)
            if gamma is not None:
                gammas.append(gamma)
        if gammas:
            out.append((beta, gammas))
    return out


def check_noghost(n: int = 6, lattice: Optional[EvenLattice] = None, oracle_degree: int = 3,
                  report: Optional[Report] = None) -> Report:
    """Descent matrices up to degree n, the mode oracle and transverse discriminants on the lattice"""
    report = report or Report(suite="noghost", params={"n": n})
    for k in range(1, n + 1):
        certify_descent_matrix(k, report)
    for k in range(1, oracle_degree + 1):
        report.run(f"oracle.n{k}", lambda k=k: check_oracle(k))
    if lattice is None:
        report.skip("transverse", "no lattice configured")
        return report
    report.params["lattice"] = lattice.name
    for beta, gammas in sample_sectors(lattice):
        space = transverse_space(lattice, beta)
        discriminant_report(space, beta, gammas, report)
    return report
