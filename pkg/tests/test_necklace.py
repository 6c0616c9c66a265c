from fractions import Fraction

import pytest
from sympy import Symbol, expand

from necklace.series import (
    GammaSpace, NecklaceClass, canonical_rotation, check_necklace, expand_necklace_direct,
    expand_necklace_product, gamma_window, necklace_classes, non_integral_coefficients, period,
    window_doubling_mismatches, zero_mode_factor, zero_mode_series
)
from utils.constants import CheckStatus, ErrorCode
from utils.errors import VerificationError


class TestClasses:
    def test_rotation_helpers(self):
        assert canonical_rotation((1, -1, -1)) == (-1, -1, 1)
        assert period((1, 2, 1, 2)) == 2
        assert period((1, 1, 2)) == 3

    def test_single_pair(self):
        assert necklace_classes(gamma_window(1), 2) == [NecklaceClass((1,), (-1,), 1, 1, 1, 1, 1)]

    def test_repeated_core_counts_once(self):
        reps = {(c.rep_I, c.rep_J) for c in necklace_classes(gamma_window(1), 4)}
        assert ((1, 1), (-1, -1)) not in reps
        assert ((1,), (-1,)) in reps

    def test_orbit_counts(self):
        classes = {(c.rep_I, c.rep_J): c for c in necklace_classes(gamma_window(2), 3)}
        cls = classes[((1, 1), (-2,))]
        assert (cls.m, cls.n, cls.m_orbits, cls.n_orbits, cls.exponent) == (2, 1, 1, 1, 1)

    def test_exponents_are_integers(self):
        for cls in necklace_classes(gamma_window(2), 6):
            assert sum(cls.rep_I) > 0 and sum(cls.rep_I) + sum(cls.rep_J) == 0
            assert Fraction(sum(cls.rep_I) * cls.m_orbits * cls.n_orbits, cls.m * cls.n) == cls.exponent

    def test_empty_window(self):
        with pytest.raises(VerificationError) as err:
            necklace_classes((), 3)
        assert err.value.code is ErrorCode.EMPTY_WINDOW


class TestExpansion:
    def test_low_coefficients(self):
        space, e = expand_necklace_direct(gamma_window(1), 4)
        assert space.coefficient(e, {}) == 1
        assert space.coefficient(e, {1: 1, -1: 1}) == 1
        assert space.coefficient(e, {1: 2, -1: 2}) == 3

    def test_single_class_is_geometric(self):
        cls = NecklaceClass((1,), (-1,), 1, 1, 1, 1, 1)
        space, e = expand_necklace_product([cls], gamma_window(1), 6)
        u = space.gamma[1] * space.gamma[-1]
        assert e == space.ring.one + u + u ** 2 + u ** 3

    def test_product_equals_direct(self):
        window = gamma_window(2)
        space, direct = expand_necklace_direct(window, 6)
        _, prod = expand_necklace_product(necklace_classes(window, 6), window, 6)
        assert space.as_dict(direct) == space.as_dict(prod)
        assert not non_integral_coefficients(space, direct)

    def test_inverse_orientation(self):
        window = gamma_window(1)
        space, e = expand_necklace_direct(window, 6)
        _, inv = expand_necklace_direct(window, 6, orientation=-1)
        assert space.mul(e, inv) == space.ring.one
        assert not non_integral_coefficients(space, inv)

    def test_window_doubling(self):
        assert window_doubling_mismatches(1, 4) == {}


class TestZeroModes:
    def test_symbolic_coefficients(self):
        s = Symbol("s")
        coeffs = zero_mode_factor(3)
        assert coeffs[0] == 1
        assert expand(coeffs[1] - s) == 0
        assert expand(coeffs[2] - (s ** 2 + s) / 2) == 0

    def test_negative_exponent_terminates(self):
        space = GammaSpace(gamma_window(1), 6)
        series = zero_mode_series(space, (1, -1), -2)
        assert space.coefficient(series, {None: 1, 1: 1, -1: 1}) == -2
        assert space.coefficient(series, {None: 2, 1: 2, -1: 2}) == 1
        assert space.coefficient(series, {None: 3, 1: 3, -1: 3}) == 0


class TestCertificate:
    def test_small_window_passes(self):
        report = check_necklace(1, 4)
        assert report.passed
        assert all(c.status is CheckStatus.PASS for c in report.checks)

    @pytest.mark.slow
    def test_default_window(self):
        assert check_necklace(3, 6).passed
