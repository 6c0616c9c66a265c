"""Witt and Virasoro certificate: curves on density modules and the enveloping algebra index"""
import logging
from typing import Dict, Optional, Sequence, Tuple

from core.partitions import partition_count, partition_product_check
from hopf.curves import Curve
from witt.curves import (density_curve, first_coefficient_defects, laurent_curve, multiplicativity_defects,
                         route_mismatches)
from witt.enveloping import WittElement, grouplike_from_automorphism, lifting_digest, pushforward
from witt.integrality import index_certificate, pin_degree_zero, witt_liftings
from witt.operators import witt_bracket_defects, witt_operator
from utils.report import Report

logger = logging.getLogger("zlift")


def check_laurent(m: int, order: int, width: int) -> Tuple[bool, Dict]:
    curve = laurent_curve(m, order, (-width, width))
    first = curve[1] == witt_operator(m) if order >= 1 else True
    bad = multiplicativity_defects(curve)
    return first and not bad, {"first_is_L_m": first, "multiplicativity_defects": bad[:5]}


def check_grouplike(m: int, order: int, width: int) -> Tuple[bool, Dict]:
    curve = laurent_curve(m, order, (-width, width))
    g = grouplike_from_automorphism(curve)
    grouplike = g.certify()
    first = g[1] == WittElement.generator(m)
    faithful = pushforward(g) == curve.curve
    # same automorphism seen through a shifted window
    unique = grouplike_from_automorphism(laurent_curve(m, order, (0, 2 * width))) == g
    return grouplike and first and faithful and unique, {
        "grouplike": g.certificate, "first": first, "faithful": faithful, "unique": unique,
        "coefficients": [str(c) for c in g.coefficients],
    }


def check_density(m: int, weight: int, order: int, width: int) -> Tuple[bool, Dict]:
    curve = density_curve(m, weight, order, (-width, width))
    mismatches = route_mismatches(curve)
    first = first_coefficient_defects(curve)
    integral = curve.is_integral()
    witness = {"integral": integral, "route_mismatches": mismatches[:5], "first_coefficient_defects": first[:5]}
    if weight == 0:
        laurent = laurent_curve(m, order, (-width, width))
        witness["laurent_sign_flip"] = laurent.curve.scale(-1) == curve.curve
        return integral and not mismatches and not first and witness["laurent_sign_flip"], witness
    return integral and not mismatches and not first, witness


def check_index(n: int, liftings: Dict[int, Curve]) -> Tuple[bool, Dict]:
    cert = index_certificate(n, liftings)
    _, f_product, _ = partition_product_check(n)
    cert["expected"] = f_product
    return cert["index"] == f_product and cert["dimension"] == partition_count(n), cert


def check_witt(order: int = 3, n: int = 5, width: int = 6, modes: Sequence[int] = (-1, 0, 1, 2),
               weights: Sequence[int] = range(-3, 4), report: Optional[Report] = None) -> Report:
    """Full Witt and Virasoro certificate"""
    report = report or Report(suite="witt", params={"order": order, "n": n, "width": width})
    width = max(width, order * max(abs(m) for m in modes))

    bad = witt_bracket_defects(range(-2, 4), weights)
    report.add("bracket", not bad, {"defects": bad[:5]})
    for m in modes:
        report.run(f"laurent.m{m}", lambda m=m: check_laurent(m, order, width))
        report.run(f"grouplike.m{m}", lambda m=m: check_grouplike(m, order, width))
    for m in (mm for mm in modes if mm > 0):
        for weight in weights:
            report.run(f"density.R{weight}.m{m}", lambda m=m, weight=weight: check_density(m, weight, order, width))

    liftings = witt_liftings(n)
    digest = lifting_digest(liftings)
    logger.info(f"liftings of L_1..L_{n} fixed, digest {digest}")
    for k in range(1, n + 1):
        report.run(f"index.n{k}", lambda k=k: check_index(k, liftings))
    report.params["liftings"] = digest
    pin_degree_zero((2, 4), report=report)
    return report
