"""
Structural-basis certificates for free Hopf algebras and the Verschiebung
"""
import logging
from itertools import product
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import ZZ, Matrix, isprime
from sympy.polys.rings import ring

from core.lattice import IntegerSystem, IntLatticeBasis
from hopf.algebra import Family, GeneratorId, HopfContext, NCPoly, TensorElement, Word, classify
from hopf.curves import Curve
from hopf.divided import DividedPowerElement, verschiebung_divided
from hopf.lifting import delta_system, solve_integral_lift
from utils.constants import CheckStatus, Classification, ErrorCode, FamilyKind
from utils.errors import VerificationError
from utils.report import Report

logger = logging.getLogger("zlift")

MultiDegree = Tuple[int, ...]


def primitive_lattice(ctx: HopfContext, md: MultiDegree) -> Tuple[List[Word], IntLatticeBasis]:
    """Words of multidegree md and the lattice of integer primitives among their combinations"""
    words = ctx.words_of_multidegree(md)
    _, kernel = delta_system(words, TensorElement(), ctx).solve()
    return words, IntLatticeBasis.from_generators(kernel, len(words))


def vector_to_poly(words: Sequence[Word], vec: Sequence[int]) -> NCPoly:
    return NCPoly({w: c for w, c in zip(words, vec) if c})


def poly_to_vector(words: Sequence[Word], x: NCPoly) -> List[int]:
    index = {w: i for i, w in enumerate(words)}
    vec = [0] * len(words)
    for w, c in x.terms.items():
        vec[index[w]] = c
    return vec


def _multidegrees(n: int, bound: int) -> List[MultiDegree]:
    out = [md for md in product(range(bound + 1), repeat=n) if 0 < sum(md) <= bound]
    return sorted(out, key=lambda md: (sum(md), tuple(-a for a in md)))


def generating_function_identity(n: int, bound: int, ranks: Dict[MultiDegree, int],
                                 dims: Dict[MultiDegree, int]) -> Tuple[bool, Dict[str, int]]:
    """prod_d (1 - x^d)^(-m_d) == sum_d n_d x^d up to total degree `bound`"""
    R, *xs = ring(",".join(f"x{i}" for i in range(n)), ZZ)

    def monomial(md, power=1):
        term = R.one
        for x, a in zip(xs, md):
            term *= x ** (a * power)
        return term

    def truncate(poly):
        return R({m: c for m, c in poly.items() if sum(m) <= bound})

    series = R.one
    for md, m in ranks.items():
        if not m:
            continue
        factor = R.zero
        j = 0
        while j * sum(md) <= bound:
            factor += comb(m + j - 1, j) * monomial(md, j)
            j += 1
        series = truncate(series * factor)
    mismatches = {}
    for md, count in dims.items():
        got = int(series.coeff(monomial(md)))
        if got != count:
            mismatches[str(md)] = got
    return not mismatches, mismatches


def _ordered_monomials(items: List[Tuple[MultiDegree, Curve]], target: MultiDegree) -> List[NCPoly]:
    """Products a^(i1)_(n1) a^(i2)_(n2) ... with i1 < i2 < ... of multidegree target"""
    out: List[NCPoly] = []

    def walk(pos: int, remaining: MultiDegree, acc: NCPoly):
        if not any(remaining):
            out.append(acc)
            return
        if pos == len(items):
            return
        md, curve = items[pos]
        k = 0
        while True:
            used = tuple(a * k for a in md)
            if any(u > r for u, r in zip(used, remaining)):
                break
            if k > curve.order:
                break
            rest = tuple(r - u for r, u in zip(remaining, used))
            walk(pos + 1, rest, acc if k == 0 else acc * curve[k])
            k += 1

    walk(0, target, NCPoly.one())
    return out


def check_free_structural(n: int, degree_bound: int, report: Optional[Report] = None) -> Report:
    """Primitive ranks, generating function, integral liftings and structural basis for F_n"""
    report = report or Report(suite="hopf", params={"n": n, "degree_bound": degree_bound})
    ctx = HopfContext.free_structural(n, degree_bound)
    mds = _multidegrees(n, degree_bound)
    words: Dict[MultiDegree, List[Word]] = {}
    prims: Dict[MultiDegree, IntLatticeBasis] = {}
    for md in mds:
        words[md], prims[md] = primitive_lattice(ctx, md)
    ranks = {md: prims[md].rank for md in mds}
    dims = {md: len(words[md]) for md in mds}
    prefix = f"F{n}.deg{degree_bound}"

    report.add(f"{prefix}.primitive-ranks", True, {
        "ranks": {str(md): r for md, r in ranks.items()},
        "dims": {str(md): d for md, d in dims.items()},
    })
    report.run(f"{prefix}.generating-function",
               lambda: _wrap(generating_function_identity(n, degree_bound, ranks, dims), "mismatches"))

    items: List[Tuple[MultiDegree, Curve]] = []

    def lift_all():
        failures = {}
        for md in mds:
            for k, vec in enumerate(prims[md].basis):
                p = vector_to_poly(words[md], vec)
                order = degree_bound // sum(md)
                try:
                    items.append((md, solve_integral_lift(p, order, ctx)))
                except VerificationError as e:
                    failures[f"{md}#{k}"] = e.code.value
        return not failures, {"lifted": len(items), "failures": failures}

    report.run(f"{prefix}.lift-primitives", lift_all)

    def structural_basis():
        bad = {}
        for md in mds:
            monomials = _ordered_monomials(items, md)
            rows = [poly_to_vector(words[md], m) for m in monomials]
            if len(rows) != dims[md]:
                bad[str(md)] = f"{len(rows)} monomials for dimension {dims[md]}"
                continue
            det = int(Matrix(rows).det(method="bareiss"))
            if abs(det) != 1:
                bad[str(md)] = f"determinant {det}"
        return not bad, {"failures": bad}

    if report.checks[-1].status is CheckStatus.PASS:
        report.run(f"{prefix}.structural-basis", structural_basis)
    else:
        report.skip(f"{prefix}.structural-basis", "primitive liftings failed")
    return report


def _wrap(result: Tuple[bool, Dict], key: str) -> Tuple[bool, Dict]:
    ok, data = result
    return ok, {key: data}


def primitives_mod_check(ctx: HopfContext, md: MultiDegree, modulus: int) -> bool:
    """Primitives of H/NH in degree md are exactly (integer primitives) + N * (whole piece)"""
    words, prim = primitive_lattice(ctx, md)
    rows: Dict[Tuple, Dict[int, int]] = {}
    for col, w in enumerate(words):
        for (left, right), c in ctx.word_coproduct(w).terms.items():
            if left and right:
                rows.setdefault((left, right), {})[col] = c
    keys = sorted(rows)
    system = IntegerSystem(len(words) + len(keys))
    for r, key in enumerate(keys):
        eq = dict(rows[key])
        eq[len(words) + r] = -modulus
        system.add_equation(eq, 0)
    _, kernel = system.solve()
    mod_lattice = IntLatticeBasis.from_generators([k[:len(words)] for k in kernel], len(words))
    expected = IntLatticeBasis.from_generators(
        list(prim.basis) + [[modulus if i == j else 0 for i in range(len(words))] for j in range(len(words))],
        len(words))
    return mod_lattice == expected


def multicurve_lift_check(k: int, n: int, order: int) -> Dict[str, bool]:
    """Coefficients a_a, |a| = n, of a k-variable group-like series vanishing below degree n

    Each is primitive and the solver lifts it to the given order.
    """
    ctx = HopfContext([Family("a", FamilyKind.STRUCTURAL, dim=k, min_degree=n)])
    out = {}
    for alpha in product(range(n + 1), repeat=k):
        if sum(alpha) != n:
            continue
        p = NCPoly.letter(ctx.gen("a", *alpha))
        ok = classify(p, ctx) is Classification.PRIMITIVE
        if ok:
            try:
                ok = solve_integral_lift(p, order, ctx).certify(ctx)
            except VerificationError:
                ok = False
        out[str(alpha)] = ok
    return out


def verschiebung_poly(x: NCPoly, p: int, ctx: HopfContext) -> NCPoly:
    """Ring homomorphism mod p with V_p(g_a) = g_(a/p) on structural letters, 0 on primitive ones"""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if not x.is_integral():
        raise VerificationError(ErrorCode.NON_INTEGRAL, "Verschiebung needs integer coefficients")

    def image(g) -> Optional[Word]:
        fam = ctx.family_of(g)
        if fam.kind is FamilyKind.PRIMITIVE or any(a % p for a in g.index):
            return None
        idx = tuple(a // p for a in g.index)
        if sum(idx) < fam.min_degree:
            return None
        return (GeneratorId(g.family, idx),)

    out: Dict[Word, int] = {}
    for w, c in x.terms.items():
        new: Word = ()
        for g in w:
            img = image(g)
            if img is None:
                break
            new += img
        else:
            out[new] = (out.get(new, 0) + c) % p
    return NCPoly(out)


def verschiebung(x: Union[NCPoly, DividedPowerElement], p: int, ctx: Optional[HopfContext] = None):
    if isinstance(x, DividedPowerElement):
        return verschiebung_divided(x, p)
    if ctx is None:
        raise ValueError("Verschiebung of a noncommutative polynomial needs its context")
    return verschiebung_poly(x, p, ctx)


def verschiebung_is_comorphism(x: NCPoly, p: int, ctx: HopfContext) -> bool:
    """Delta(V_p x) == (V_p (x) V_p) Delta(x) mod p"""
    lhs = ctx.coproduct(verschiebung_poly(x, p, ctx)).mod(p)
    rhs: Dict[Tuple, int] = {}
    for (l, r), c in ctx.coproduct(x).terms.items():
        vl = verschiebung_poly(NCPoly({l: 1}), p, ctx)
        vr = verschiebung_poly(NCPoly({r: 1}), p, ctx)
        for wl, a in vl.terms.items():
            for wr, b in vr.terms.items():
                rhs[(wl, wr)] = rhs.get((wl, wr), 0) + c * a * b
    return lhs == TensorElement(rhs).mod(p)
