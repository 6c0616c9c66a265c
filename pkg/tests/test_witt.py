from fractions import Fraction

import pytest
from sympy import QQ

from core.partitions import partition_product_check
from hopf.curves import Curve
from witt.checks import check_density, check_grouplike, check_witt
from witt.curves import (ModuleCurve, density_curve, first_coefficient_defects, laurent_curve,
                         multiplicativity_defects, route_mismatches)
from witt.enveloping import WittElement, grouplike_from_automorphism, lifting_digest, pushforward
from witt.integrality import (admissible_lattice, first_violation, graded_dimension, integral_witt_index,
                              omega_defects, pin_degree_zero, transition_matrix, witt_liftings)
from witt.operators import THETA, ShiftOperator, binomial_poly, density_operator, witt_bracket_defects, witt_operator
from utils.constants import CheckStatus, ErrorCode
from utils.errors import VerificationError


class TestShiftOperator:
    def test_composition(self):
        product = density_operator(1, 0) * density_operator(2, 0)
        # e_1 -> 1 e_3 -> 3 e_4
        assert product.column(1) == {4: 3}
        assert product.apply({1: 1, 2: 1}) == {4: 3, 5: 8}

    def test_witt_bracket_on_density_modules(self):
        assert witt_bracket_defects(range(-2, 3), range(-2, 3)) == []

    def test_integer_valued(self):
        assert ShiftOperator.monomial(0, binomial_poly(0, 2)).is_integer_valued()
        assert not ShiftOperator.monomial(0, THETA.quo_ground(QQ(2))).is_integer_valued()

    def test_leibniz(self):
        assert ShiftOperator.monomial(1, THETA).leibniz_defect((-2, 2)) is None
        assert ShiftOperator.monomial(1, THETA ** 2).leibniz_defect((-2, 2)) is not None


class TestLaurentCurve:
    @pytest.fixture(scope="class")
    def curve(self):
        return laurent_curve(1, 3, (-4, 4))

    def test_coefficients(self, curve):
        assert curve[0] == ShiftOperator.identity()
        assert curve[1].column(5) == {6: -5}
        assert curve[2].column(5) == {7: 10}
        assert curve[3].column(-2) == {1: 4}

    def test_first_coefficient_is_L_m(self, curve):
        assert curve[1] == witt_operator(1)

    def test_multiplicative(self, curve):
        assert multiplicativity_defects(curve) == []

    def test_bad_mode(self):
        with pytest.raises(VerificationError) as err:
            laurent_curve(-2, 2, (-4, 4))
        assert err.value.code is ErrorCode.CONFIG_INVALID

    def test_window_overflow(self):
        with pytest.raises(VerificationError) as err:
            laurent_curve(1, 3, (0, 2))
        assert err.value.code is ErrorCode.WINDOW_OVERFLOW


class TestWittElement:
    def test_ordering(self):
        product = WittElement.generator(2) * WittElement.generator(1)
        assert product == WittElement({(1, 2): 1, (3,): 1})

    def test_coproduct(self):
        square = WittElement.monomial((1, 1))
        assert square.coproduct().terms == {((), (1, 1)): 1, ((1,), (1,)): 2, ((1, 1), ()): 1}

    def test_represent(self):
        assert WittElement.generator(1).represent() == witt_operator(1)
        assert WittElement.generator(-1).represent(2) == witt_operator(-1, 2)


class TestGrouplike:
    def test_identity_curve(self):
        curve = ModuleCurve(0, 0, (-2, 2), Curve.constant(ShiftOperator.identity(), 3), "identity")
        assert grouplike_from_automorphism(curve) == Curve.constant(WittElement.one(), 3)

    def test_first_order_curve(self):
        curve = laurent_curve(1, 3, (-4, 4))
        g = grouplike_from_automorphism(curve)
        assert g[1] == WittElement.generator(1)
        assert g[2] == WittElement({(1, 1): Fraction(1, 2), (2,): 1})
        assert g.certify()
        assert pushforward(g) == curve.curve

    @pytest.mark.parametrize("m", [-1, 0, 2])
    def test_other_modes(self, m):
        passed, witness = check_grouplike(m, 2, 4)
        assert passed, witness

    def test_not_automorphism(self):
        bad = Curve([ShiftOperator.identity(), ShiftOperator.monomial(1, THETA ** 2), ShiftOperator()])
        with pytest.raises(VerificationError) as err:
            grouplike_from_automorphism(ModuleCurve(1, 0, (-3, 3), bad, "bad"))
        assert err.value.code is ErrorCode.NOT_AUTOMORPHISM

    def test_needs_laurent_ring(self):
        with pytest.raises(VerificationError) as err:
            grouplike_from_automorphism(density_curve(1, -1, 2, (-4, 4)))
        assert err.value.code is ErrorCode.CONFIG_INVALID


class TestDensityCurve:
    def test_vector_fields(self):
        curve = density_curve(1, -1, 2, (-4, 4))
        assert all(curve.entries[1][n] == n - 1 for n in range(-4, 5))
        assert curve[1].column(3) == {4: 2}
        # pullback of x d/dx along x -> x + eps x^2 is x - eps x^2 + 2 eps^2 x^3 + ...
        assert curve.entries[2][0] == 2
        assert route_mismatches(curve) == []

    def test_tensor_square(self):
        curve = density_curve(1, -2, 2, (-4, 4))
        assert curve.is_integral()
        assert route_mismatches(curve) == []
        assert curve.entries[1][0] == -2

    def test_dual(self):
        curve = density_curve(1, 1, 2, (-4, 4))
        assert curve.entries[1][0] == 1
        assert curve.entries[2][0] == -1
        assert route_mismatches(curve) == []

    def test_laurent_convention(self):
        assert density_curve(1, 0, 2, (-4, 4)).curve == laurent_curve(1, 2, (-4, 4)).curve.scale(-1)

    @pytest.mark.parametrize("weight", [-3, 2, 3])
    def test_first_coefficient(self, weight):
        curve = density_curve(2, weight, 2, (-5, 5))
        assert first_coefficient_defects(curve) == []
        passed, witness = check_density(2, weight, 2, 5)
        assert passed, witness


class TestIntegralIndex:
    @pytest.fixture(scope="class")
    def liftings(self):
        return witt_liftings(4)

    def test_transition_degree_two(self, liftings):
        assert transition_matrix(2, liftings) == [[1, 0], [1, Fraction(1, 2)]]

    @pytest.mark.parametrize("n,index", [(1, 1), (2, 2), (3, 6), (4, 96)])
    def test_index(self, liftings, n, index):
        assert integral_witt_index(n, liftings) == index

    @pytest.mark.slow
    def test_index_degree_five(self):
        assert integral_witt_index(5, witt_liftings(5)) == 2880
        assert partition_product_check(5) == (2880, 2880, 2880)

    def test_graded_dimension(self):
        assert [graded_dimension(n) for n in range(1, 6)] == [1, 2, 3, 5, 7]

    def test_digest_is_stable(self, liftings):
        assert lifting_digest(liftings) == lifting_digest(witt_liftings(4))

    def test_dependent_liftings(self):
        one = WittElement.one()
        liftings = {
            1: Curve([one, WittElement.generator(1), WittElement.generator(2)], one),
            2: Curve([one, WittElement.generator(2)], one),
        }
        with pytest.raises(VerificationError) as err:
            integral_witt_index(2, liftings)
        assert err.value.code is ErrorCode.SINGULAR_REPRESENTATION


class TestPinning:
    def test_report(self):
        report = pin_degree_zero((2, 4))
        assert report.passed
        assert {c.id for c in report.checks} >= {"pinning.admissible-lattice", "pinning.sample(1/2,1/2)"}

    def test_half_half_rejected(self):
        _, generators = admissible_lattice((2, 4), (1, 2, 3))
        assert first_violation(Fraction(1), Fraction(0), generators) is None
        assert first_violation(Fraction(1, 2), Fraction(1, 2), generators) == (1, 4)

    def test_degenerate_constraints(self):
        with pytest.raises(VerificationError) as err:
            admissible_lattice((2,), (1,))
        assert err.value.code is ErrorCode.DEGENERATE

    def test_omega(self):
        assert omega_defects(range(-3, 4)) == []


def test_witt_certificate():
    report = check_witt(order=2, n=4)
    assert report.passed, [c.to_dict() for c in report.failed]
    assert all(c.status is not CheckStatus.SKIP for c in report.checks)
    assert "liftings" in report.params
