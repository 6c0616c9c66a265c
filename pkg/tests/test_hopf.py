import pytest

from hopf.algebra import GeneratorId, HopfContext, NCPoly, TensorElement, classify
from hopf.checks import check_hopf, divided_axiom_defects, verschiebung_defects
from hopf.divided import DividedPowerElement, divided_power_product, verschiebung_divided
from hopf.structural import (
    check_free_structural, multicurve_lift_check, primitive_lattice, primitives_mod_check,
    verschiebung, verschiebung_is_comorphism
)
from utils.constants import CheckStatus, Classification, ErrorCode
from utils.errors import VerificationError


def z(*alpha):
    return DividedPowerElement.basis(alpha)


class TestCoproduct:
    def test_generator_rule(self, uni):
        a1, a2 = uni.gen("a", 1), uni.gen("a", 2)
        delta = uni.coproduct(NCPoly.letter(a2))
        assert delta == TensorElement({((a2,), ()): 1, ((a1,), (a1,)): 1, ((), (a2,)): 1})

    def test_unit(self, uni):
        assert uni.coproduct(NCPoly.one()) == TensorElement({((), ()): 1})

    def test_product_of_degree_one_letters(self, uni):
        a1, b1 = uni.letter("a", 1), uni.letter("b", 1)
        delta = uni.coproduct(a1 * b1)
        assert len(delta) == 4
        assert delta == uni.coproduct(a1) * uni.coproduct(b1)

    def test_unknown_generator(self, uni):
        with pytest.raises(VerificationError) as err:
            uni.coproduct(NCPoly.letter(GeneratorId("c", (1,))))
        assert err.value.code is ErrorCode.UNKNOWN_GENERATOR

    def test_classify(self, uni):
        a1 = uni.letter("a", 1)
        assert classify(a1, uni) is Classification.PRIMITIVE
        assert classify(NCPoly.one(), uni) is Classification.GROUPLIKE
        assert classify(a1 * a1, uni) is Classification.NEITHER
        assert classify(a1.commutator(uni.letter("b", 1)), uni) is Classification.PRIMITIVE

    def test_coassociative_counital_multiplicative(self, uni):
        a1, a2, b1, b3 = (uni.letter("a", 1), uni.letter("a", 2), uni.letter("b", 1), uni.letter("b", 3))
        samples = [a2 * b1, a1 * a2 - b3, b3 * a2 * a1, a2 * a2 + b1]
        for x in samples:
            assert uni.coassociativity_holds(x)
            delta = uni.coproduct(x)
            assert uni.apply_left_counit(delta) == x
            assert uni.apply_right_counit(delta) == x
        assert uni.coproduct(a2 * b3) == uni.coproduct(a2) * uni.coproduct(b3)

    def test_words_of_multidegree(self, uni):
        words = uni.words_of_multidegree((2, 0))
        assert len(words) == 2
        assert len(uni.words_of_degree(2)) == 2 + 2 + 2


class TestDividedPowers:
    def test_products(self):
        assert divided_power_product((1,), (1,)) == z(2).scale(2)
        assert divided_power_product((0, 0), (2, 1)) == z(2, 1)
        assert divided_power_product((2,), (3,)) == z(5).scale(10)

    def test_associativity(self):
        for a, b, c in [((1, 0), (2, 1), (0, 3)), ((2, 2), (1, 1), (3, 0))]:
            assert (z(*a) * z(*b)) * z(*c) == z(*a) * (z(*b) * z(*c))

    def test_structural_coproduct(self):
        delta = z(1, 1).coproduct()
        assert len(delta) == 4
        assert classify(z(1, 0)) is Classification.PRIMITIVE
        assert classify(z(0, 0)) is Classification.GROUPLIKE
        assert classify(z(2, 0)) is Classification.NEITHER

    def test_hopf_axioms_up_to_size_eight(self):
        from itertools import product
        for alpha in product(range(5), repeat=2):
            if sum(alpha) > 8:
                continue
            x = z(*alpha)
            delta = x.coproduct()
            left = {}
            right = {}
            for (l, r), c in delta.terms.items():
                for (ll, lr), d in z(*l).coproduct().terms.items():
                    left[(ll, lr, r)] = left.get((ll, lr, r), 0) + c * d
                for (rl, rr), d in z(*r).coproduct().terms.items():
                    right[(l, rl, rr)] = right.get((l, rl, rr), 0) + c * d
            assert left == right
            assert {r: c for (l, r), c in delta.terms.items() if l == (0, 0)} == {alpha: 1}
            for beta in [(1, 0), (0, 2), (1, 1)]:
                y = z(*beta)
                expected = TensorElement()
                for (l1, r1), c in x.coproduct().terms.items():
                    for (l2, r2), d in y.coproduct().terms.items():
                        expected = expected + (z(*l1) * z(*l2)).tensor(z(*r1) * z(*r2)).scale(c * d)
                assert (x * y).coproduct() == expected

    def test_verschiebung(self):
        assert verschiebung_divided(z(2), 2) == z(1)
        assert verschiebung_divided(z(1), 2).is_zero()
        assert verschiebung(z(6, 3), 3) == z(2, 1)
        for p, q in [(2, 3), (3, 2)]:
            alpha = (p * q * 1, p * q * 2)
            assert verschiebung_divided(verschiebung_divided(z(*alpha), q), p) == z(1, 2)

    def test_verschiebung_rejects_fractions(self):
        from fractions import Fraction
        with pytest.raises(VerificationError) as err:
            verschiebung_divided(z(2).scale(Fraction(1, 2)), 2)
        assert err.value.code is ErrorCode.NON_INTEGRAL


class TestUniversalVerschiebung:
    def test_letter_image(self, uni):
        assert verschiebung(uni.letter("a", 2), 2, uni) == uni.letter("a", 1)
        assert verschiebung(uni.letter("a", 3), 2, uni).is_zero()

    @pytest.mark.parametrize("p", [2, 3])
    def test_multiplicative_and_comorphism(self, uni, p):
        x = uni.letter("a", p) * uni.letter("b", 2 * p)
        y = uni.letter("a", 2 * p) + uni.letter("b", p).scale(3)
        assert verschiebung(x * y, p, uni) == (verschiebung(x, p, uni) * verschiebung(y, p, uni)).mod(p)
        for elem in [x, y, x * y]:
            assert verschiebung_is_comorphism(elem, p, uni)


class TestFreeStructural:
    def test_degree_one_primitives(self):
        ctx = HopfContext.free_structural(1)
        words, lat = primitive_lattice(ctx, (1,))
        assert lat.rank == 1 and words == [(GeneratorId("Z", (1,)),)]

    def test_degree_two_primitive(self):
        ctx = HopfContext.free_structural(1)
        words, lat = primitive_lattice(ctx, (2,))
        assert lat.rank == 1
        z1, z2 = ctx.letter("Z", 1), ctx.letter("Z", 2)
        p = NCPoly({w: c for w, c in zip(words, lat.basis[0]) if c})
        assert p in (z1 * z1 - z2.scale(2), z2.scale(2) - z1 * z1)

    def test_ranks_and_structural_basis_to_degree_four(self):
        report = check_free_structural(1, 4)
        assert report.passed
        ranks = report.checks[0].witness["ranks"]
        assert [ranks[str((d,))] for d in range(1, 5)] == [1, 1, 2, 3]
        assert [c.status for c in report.checks] == [CheckStatus.PASS] * 4

    def test_two_generators_degree_three(self):
        assert check_free_structural(2, 3).passed

    @pytest.mark.parametrize("modulus", [4, 6])
    def test_primitives_mod_n(self, modulus):
        ctx = HopfContext.free_structural(1)
        assert primitives_mod_check(ctx, (3,), modulus)
        assert primitives_mod_check(ctx, (4,), modulus)

    def test_multicurve_coefficients_lift(self):
        result = multicurve_lift_check(2, 2, 2)
        assert len(result) == 3 and all(result.values())


class TestSuite:
    def test_hopf_certificate(self):
        report = check_hopf(n=4, order=3, primes=(2,))
        assert report.passed, [c.to_dict() for c in report.failed]
        ids = {c.id for c in report.checks}
        assert {"divided.coassociative.size4", "divided.verschiebung.p2", "universal.antipode.order3"} <= ids

    def test_axiom_defects_are_empty(self):
        assert divided_axiom_defects(2, 6) == {"coassociative": [], "counit": [], "multiplicative": []}

    def test_all_pairs_up_to_size_eight(self):
        assert divided_axiom_defects(2, 8) == {"coassociative": [], "counit": [], "multiplicative": []}
        assert divided_axiom_defects(2, 5, factors=[(1, 1)])["multiplicative"] == []

    @pytest.mark.parametrize("p", [2, 3])
    def test_verschiebung_on_all_indices(self, p):
        assert verschiebung_defects(2, 8, p) == []
