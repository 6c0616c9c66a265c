import pytest

from core.partitions import Partition
from noghost.checks import check_noghost, check_oracle, null_vectors, sample_sectors
from noghost.descent import T, DescentMatrix, certify_descent_matrix, descent_coefficient
from noghost.transverse import discriminant_report, transverse_lattice, transverse_space
from vertex.lattice import resolve_lattice
from utils.config import Config
from utils.constants import CheckStatus, ErrorCode
from utils.errors import VerificationError


def part(*parts):
    return Partition.from_parts(parts)


@pytest.fixture(scope="module")
def hyperbolic_pair():
    return resolve_lattice("II11_II11", Config.LATTICE_DIR)


class TestDescentCoefficient:
    def test_single_part(self):
        assert descent_coefficient(part(2), part(2)) == 2 * T

    def test_refinement_needed(self):
        assert descent_coefficient(part(2), part(1, 1)) == 0

    def test_two_steps(self):
        assert descent_coefficient(part(1, 1), part(1, 1)) == 2 * T ** 2

    def test_mixed(self):
        assert descent_coefficient(part(2, 1), part(2, 1)) == 2 * T ** 2

    def test_sizes_must_agree(self):
        with pytest.raises(ValueError):
            descent_coefficient(part(2), part(1))


class TestDescentMatrix:
    def test_degree_one(self):
        m = DescentMatrix.build(1)
        assert m.entries == [[T]]
        assert m.determinant() == T

    def test_degree_two(self):
        m = DescentMatrix.build(2)
        assert m.above_diagonal() == []
        assert m.determinant() == 4 * T ** 3
        assert m.at(2) == 32

    @pytest.mark.parametrize("n", [3, 4, 6])
    def test_certificates(self, n):
        report = certify_descent_matrix(n)
        assert report.passed, [c.to_dict() for c in report.failed]
        assert len(report.checks) == 5

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_mode_oracle(self, n):
        passed, witness = check_oracle(n)
        assert passed, witness
        assert witness["compared"] == [1, 4, 9][n - 1]


class TestTransverse:
    def test_ground_piece(self, hyperbolic_pair):
        beta = (1, 1, 0, 0)
        tl = transverse_lattice(transverse_space(hyperbolic_pair, beta), beta, (1, 0, 0, 0))
        assert tl.rank == 1
        assert tl.gram == [[1]]
        assert tl.determinant == 1

    def test_null_sector(self, hyperbolic_pair):
        beta = (1, 0, 0, 0)
        tl = transverse_lattice(transverse_space(hyperbolic_pair, beta), beta, (0, 1, 0, 0))
        assert tl.rational_dimension == 2
        assert tl.virasoro_dimension == 3
        assert tl.rank == 2
        assert tl.determinant == -1

    def test_negative_norm_sector(self, hyperbolic_pair):
        beta = (1, -1, 0, 0)
        tl = transverse_lattice(transverse_space(hyperbolic_pair, beta), beta, (1, 0, 0, 0))
        # two transverse colors at oscillator weight 2
        assert tl.rational_dimension == 5
        assert abs(tl.determinant) == 1

    def test_empty_window(self, hyperbolic_pair):
        beta = (1, 2, 0, 0)
        with pytest.raises(VerificationError) as err:
            transverse_lattice(transverse_space(hyperbolic_pair, beta), beta, (1, 0, 0, 0))
        assert err.value.code is ErrorCode.EMPTY_WINDOW

    def test_degenerate(self, hyperbolic_pair):
        beta = (1, 0, 0, 0)
        with pytest.raises(VerificationError) as err:
            transverse_lattice(transverse_space(hyperbolic_pair, beta), beta, (1, 0, 0, 0))
        assert err.value.code is ErrorCode.DEGENERATE

    def test_discriminant_report(self, hyperbolic_pair):
        beta = (1, 1, 0, 0)
        report = discriminant_report(transverse_space(hyperbolic_pair, beta), beta, [(1, 0, 0, 0), (0, 1, 0, 0)])
        assert report.passed
        summary = report.checks[-1]
        assert summary.witness["gcd"] == 1 and summary.witness["unimodular"]

    def test_sample_sectors(self, hyperbolic_pair):
        samples = sample_sectors(hyperbolic_pair)
        assert [beta for beta, _ in samples] == [(1, 0, 0, 0), (1, 1, 0, 0), (1, -1, 0, 0)]
        for beta, gammas in samples:
            assert all(hyperbolic_pair.norm(g) == 0 for g in gammas)
            assert sorted(abs(hyperbolic_pair.inner(beta, g)) for g in gammas) == [1, 2]
        assert dict(samples)[(1, 1, 0, 0)] == [(1, 0, 0, 0), (2, 0, 1, 0)]

    def test_null_vectors_are_primitive(self, hyperbolic_pair):
        nulls = null_vectors(hyperbolic_pair)
        assert (0, 2, 0, 0) not in nulls
        assert nulls[0] == (1, 0, 0, 0)
        assert (0, 2, 1, 0) in nulls

    def test_pairing_two(self, hyperbolic_pair):
        beta = (1, 0, 0, 0)
        tl = transverse_lattice(transverse_space(hyperbolic_pair, beta), beta, (0, 2, 1, 0))
        # T is spanned by b_0(-1) - 2 b_3(-1) and b_2(-1)
        assert tl.rank == 2
        assert tl.determinant == -4

    def test_discriminant_over_both_pairings(self, hyperbolic_pair):
        beta = (1, 0, 0, 0)
        gammas = dict(sample_sectors(hyperbolic_pair))[beta]
        report = discriminant_report(transverse_space(hyperbolic_pair, beta), beta, gammas)
        assert report.passed
        summary = report.checks[-1].witness
        assert summary["determinants"] == [-1, -4]
        assert summary["pairings"] == [1, 2]
        assert summary["gcd"] == 1 and summary["unimodular"]


def test_noghost_certificate(hyperbolic_pair):
    report = check_noghost(n=3, lattice=hyperbolic_pair, oracle_degree=2)
    assert report.passed, [c.to_dict() for c in report.failed]
    assert not any(c.status is CheckStatus.SKIP for c in report.checks)


def test_noghost_without_lattice():
    report = check_noghost(n=2, oracle_degree=1)
    assert report.checks[-1].status is CheckStatus.SKIP
