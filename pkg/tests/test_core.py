from fractions import Fraction

import pytest

from core.lattice import IntegerSystem, IntLatticeBasis, RationalLattice, lattice_from_generators
from core.partitions import (
    Partition, colored_partition_count, partition_count, partition_product_check,
    partition_stats, partitions_of
)
from core.symmetric import h_from_p, p_from_h, roundtrip_is_identity
from utils.constants import ErrorCode, Membership
from utils.errors import VerificationError


class TestPartitions:
    def test_empty_partition(self):
        assert partitions_of(0) == [Partition(())]

    def test_canonical_order_of_four(self):
        assert [lam.parts for lam in partitions_of(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]

    def test_counts(self):
        assert len(partitions_of(5)) == 7
        assert [partition_count(n) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]

    @pytest.mark.parametrize("parts,expected", [
        ((2, 1, 1), (2, 2, 3, 4)),
        ((3,), (3, 1, 1, 3)),
        ((1, 1, 1), (1, 6, 3, 3)),
    ])
    def test_stats(self, parts, expected):
        assert partition_stats(Partition.from_parts(parts)) == expected

    def test_trailing_zeros_stripped(self):
        assert Partition((1, 0, 0)) == Partition((1,))

    def test_colored_counts(self):
        assert [colored_partition_count(24, n) for n in range(3)] == [1, 24, 324]
        assert colored_partition_count(2, 1) == 2
        assert all(colored_partition_count(1, n) == partition_count(n) for n in range(31))
        assert colored_partition_count(1, 30) == 5604

    @pytest.mark.parametrize("n,value", [(1, 1), (3, 6), (4, 96)])
    def test_partition_products(self, n, value):
        assert partition_product_check(n) == (value, value, value)

    def test_partition_products_agree_up_to_twelve(self):
        for n in range(1, 13):
            lhs, rhs, closed = partition_product_check(n)
            assert lhs == rhs == closed


class TestLattices:
    def test_identity_lattice(self):
        lat = lattice_from_generators([(1, 0), (0, 1)], 2)
        assert lat.basis == ((1, 0), (0, 1))
        assert lat.index_in(lat) == 1

    def test_index_six(self):
        sub = lattice_from_generators([(2, 0), (0, 3)], 2)
        assert sub.index_in(IntLatticeBasis.full(2)) == 6

    def test_parity_obstruction(self):
        lat = lattice_from_generators([(2, 0), (0, 1)], 2)
        assert not lat.membership((1, 1))
        assert lat.membership((4, -7))

    def test_canonical_form(self):
        a = lattice_from_generators([(3, 5), (1, 2)], 2)
        b = lattice_from_generators([(1, 0), (0, 1)], 2)
        assert a == b
        c = lattice_from_generators([(4, 6), (2, 0), (6, 6)], 2)
        assert c.basis == ((2, 0), (0, 6))

    def test_hnf_idempotent(self):
        lat = lattice_from_generators([(2, 3, 5), (7, 1, 4), (0, 6, 9)], 3)
        assert lattice_from_generators(lat.basis, 3) == lat
        for col, p in zip(lat.basis, lat.pivots):
            assert col[p] > 0

    def test_index_multiplicative(self):
        a = lattice_from_generators([(4, 0), (0, 6)], 2)
        b = lattice_from_generators([(2, 0), (0, 3)], 2)
        c = IntLatticeBasis.full(2)
        assert a.index_in(c) == a.index_in(b) * b.index_in(c)

    def test_rank_mismatch_not_finite(self):
        line = lattice_from_generators([(1, 1)], 2)
        with pytest.raises(VerificationError) as err:
            line.index_in(IntLatticeBasis.full(2))
        assert err.value.code is ErrorCode.NOT_FINITE

    def test_not_sublattice(self):
        a = lattice_from_generators([(1, 0), (0, 1)], 2)
        b = lattice_from_generators([(2, 0), (0, 1)], 2)
        with pytest.raises(VerificationError) as err:
            a.index_in(b)
        assert err.value.code is ErrorCode.NOT_SUBLATTICE

    def test_rational_membership_kinds(self):
        lat = RationalLattice.from_generators([(Fraction(1, 2), 0), (0, 1)], 2)
        assert lat.classify((Fraction(3, 2), 2)) is Membership.MEMBER
        assert lat.classify((Fraction(1, 3), 0)) is Membership.DENOMINATOR
        sub = RationalLattice.from_generators([(1, 1)], 2)
        assert sub.classify((1, 0)) is Membership.NOT_IN_LATTICE


class TestIntegerSystem:
    def test_unit_pivot_solution(self):
        system = IntegerSystem(3)
        system.add_equation({0: 1, 1: 2}, 5)
        system.add_equation({1: 1, 2: -1}, 1)
        x, kernel = system.solve()
        assert x[0] + 2 * x[1] == 5 and x[1] - x[2] == 1
        assert len(kernel) == 1
        k = kernel[0]
        assert k[0] + 2 * k[1] == 0 and k[1] - k[2] == 0

    def test_needs_gcd(self):
        system = IntegerSystem(2)
        system.add_equation({0: 4, 1: 6}, 2)
        x, kernel = system.solve()
        assert 4 * x[0] + 6 * x[1] == 2
        assert len(kernel) == 1 and 4 * kernel[0][0] + 6 * kernel[0][1] == 0
        assert abs(kernel[0][0]) == 3

    def test_no_integral_solution(self):
        system = IntegerSystem(2)
        system.add_equation({0: 2, 1: 4}, 1)
        x, _ = system.solve()
        assert x is None

    def test_inconsistent(self):
        system = IntegerSystem(1)
        system.add_equation({0: 1}, 1)
        system.add_equation({0: 1}, 2)
        assert system.solve()[0] is None

    def test_canonical_representative_is_reduced(self):
        system = IntegerSystem(2)
        system.add_equation({0: 1, 1: -1}, 3)
        x, kernel = system.solve(canonical=True)
        assert x[0] - x[1] == 3
        lat = IntLatticeBasis.from_generators(kernel, 2)
        assert lat.reduce(x) == x


class TestSymmetric:
    def test_low_degrees(self):
        table = h_from_p(3)
        assert table[1] == {Partition((1,)): 1}
        assert table[2] == {Partition((2,)): Fraction(1, 2), Partition((0, 1)): Fraction(1, 2)}
        assert table[3] == {
            Partition((3,)): Fraction(1, 6),
            Partition((1, 1)): Fraction(1, 2),
            Partition((0, 0, 1)): Fraction(1, 3),
        }

    def test_power_sums_from_h(self):
        table = p_from_h(2)
        assert table[1] == {Partition((1,)): 1}
        assert table[2] == {Partition((0, 1)): 2, Partition((2,)): -1}

    def test_roundtrip(self):
        assert roundtrip_is_identity(6)
