from fractions import Fraction

import pytest

from vertex.checks import (
    POWER_MODE_SAMPLES, build_space, check_cocycle, check_heisenberg, check_lattice_va, check_power_modes,
    check_translation, check_vacuum_and_leading_terms, check_virasoro_relations, choose_vectors,
    conformal_vector_membership, low_pieces, power_state, sampled_power_modes, verify_commutators
)
from vertex.fock import FockSpace, FockState, Piece
from vertex.integral import h_basis_lattice, integral_closure
from vertex.lattice import EvenLattice, load_lattice_config, resolve_lattice
from vertex.modes import (
    ModeOp, divided_translation, general_mode, h_generator, h_polynomial, heisenberg, mode_matrix,
    translation, vertex_mode
)
from vertex.series import (
    OperatorSeries, check_group_law, check_series_integrality, exp_zero_mode, null_root_curve
)
from vertex.virasoro import virasoro, virasoro_matrix
from utils.config import Config
from utils.constants import CheckStatus, ErrorCode, Membership, ModeKind
from utils.errors import VerificationError
from utils.report import Report

II11 = EvenLattice("II11", ((0, 1), (1, 0)), sector_window=1, weight_bound=2)
A1 = EvenLattice("A1", ((2,),), sector_window=1, weight_bound=2)


@pytest.fixture(scope="module")
def space():
    return FockSpace(II11)


@pytest.fixture(scope="module")
def a1_space():
    return FockSpace(A1)


@pytest.fixture(scope="module")
def form(space):
    return integral_closure(space)


class TestLattice:
    def test_shipped_configs(self):
        lat = resolve_lattice("II11", Config.LATTICE_DIR)
        assert lat.gram == ((0, 1), (1, 0))
        assert lat.determinant == -1 and lat.is_self_dual
        assert resolve_lattice("A1.cfg", Config.LATTICE_DIR).determinant == 2
        assert resolve_lattice("II11_II11", Config.LATTICE_DIR).rank == 4

    def test_odd_lattice(self):
        with pytest.raises(VerificationError) as err:
            EvenLattice("odd", ((1,),))
        assert err.value.code is ErrorCode.ODD_LATTICE

    def test_asymmetric_gram(self):
        with pytest.raises(VerificationError) as err:
            EvenLattice("bad", ((0, 1), (2, 0)))
        assert err.value.code is ErrorCode.PARSE_ERROR

    def test_unparseable_config(self, tmp_path):
        path = tmp_path / "broken.cfg"
        path.write_text("[lattice]\nname = broken\ngram = 0 1 1\n")
        with pytest.raises(VerificationError) as err:
            load_lattice_config(str(path))
        assert err.value.code is ErrorCode.PARSE_ERROR

    def test_missing_config(self, tmp_path):
        with pytest.raises(VerificationError) as err:
            load_lattice_config(str(tmp_path / "nowhere.cfg"))
        assert err.value.code is ErrorCode.CONFIG_INVALID

    def test_cocycle_convention(self):
        assert II11.cocycle((1, 0), (0, 1)) == 1
        assert II11.cocycle((0, 1), (1, 0)) == -1
        assert check_cocycle(II11, II11.sectors(2))[0]

    def test_degenerate_gram(self):
        with pytest.raises(VerificationError) as err:
            EvenLattice("null", ((0, 0), (0, 0))).inverse_gram
        assert err.value.code is ErrorCode.DEGENERATE


class TestFockSpace:
    def test_dimensions(self, space):
        assert space.dimension(Piece((0, 0), 1)) == 2
        assert space.dimension(Piece((1, -1), -1)) == 1
        assert space.dimension(Piece((1, -1), 1)) == 5
        for piece in space.pieces:
            assert space.dimension(piece) == space.expected_dimension(piece)

    def test_vector_roundtrip(self, space):
        piece = Piece((0, 1), 2)
        vec = [Fraction(j + 1, 2) for j in range(space.dimension(piece))]
        assert space.vector(space.from_vector(piece, vec), piece) == vec

    def test_state_arithmetic(self, space):
        s = space.ground((1, 0))
        assert (s - s).is_zero()
        assert s.scale(2) == s + s
        assert s != space.ground((0, 1))

    def test_mode_bound_overflow(self, space):
        with pytest.raises(VerificationError) as err:
            space.var(0, space.mode_bound + 1)
        assert err.value.code is ErrorCode.OUT_OF_WINDOW


class TestModes:
    def test_zero_mode_is_inner_product(self, space):
        beta = (1, -1)
        assert heisenberg(space, (1, 0), 0, space.ground(beta)) == space.ground(beta).scale(-1)

    def test_annihilation(self, space):
        state = space.state((0, 0), space.var(1, 1))
        # b_0(-1) d/dx_(1,1) with (b_0, b_1) = 1
        assert heisenberg(space, (1, 0), -1, state) == space.vacuum()
        assert heisenberg(space, (0, 1), -1, state).is_zero()

    def test_vertex_mode_vanishing_and_leading_term(self, space):
        alpha, beta = (1, 1), (0, -1)
        ab = II11.inner(alpha, beta)
        for i in range(-ab, -ab + 3):
            assert vertex_mode(space, alpha, i, space.ground(beta)).is_zero()
        lead = vertex_mode(space, alpha, -1 - ab, space.ground(beta))
        assert lead == space.ground((1, 0)).scale(II11.cocycle(alpha, beta))

    def test_vertex_mode_next_term_is_translation(self, a1_space):
        image = vertex_mode(a1_space, (1,), -2, a1_space.vacuum())
        assert image == a1_space.state((1,), a1_space.var(0, 1))
        assert image == translation(a1_space, a1_space.ground((1,)))

    def test_divided_translation_on_ground_states(self, space):
        beta = (1, -1)
        x1 = space.direction(beta, 1)
        x2 = space.direction(beta, 2)
        want = space.state(beta, (x1 ** 2 + x2).quo_ground(2))
        assert divided_translation(space, 2, space.ground(beta)) == want
        assert h_generator(space, beta, 2, space.ground(beta)) == want

    def test_heisenberg_field_modes(self, space):
        a = space.state((0, 0), space.var(0, 1))
        for piece in low_pieces(space, 1):
            state = space.basis_state(piece, 0)
            for n in range(-2, 3):
                assert general_mode(space, a, n, state) == heisenberg(space, (1, 0), -n, state)

    def test_general_mode_of_ground_state(self, space):
        u = space.ground((1, 0))
        s = space.state((0, 1), space.var(0, 1))
        for n in range(-2, 2):
            assert general_mode(space, u, n, s) == vertex_mode(space, (1, 0), n, s)

    def test_mode_matrix(self, space):
        m = mode_matrix(space, ModeOp(ModeKind.HEISENBERG, 1, (1, 0)), Piece((0, 0), 0))
        assert m.target == Piece((0, 0), 1)
        assert m.shape == (2, 1)
        assert m.columns == [[1, 0]]

    def test_mode_matrix_out_of_window(self, space):
        with pytest.raises(VerificationError) as err:
            mode_matrix(space, ModeOp(ModeKind.VERTEX, -1, (1, 0)), Piece((1, 0), 0))
        assert err.value.code is ErrorCode.OUT_OF_WINDOW

    def test_structural_checks(self, space):
        pieces = low_pieces(space, 1)
        assert check_heisenberg(space, pieces)[0]
        assert check_vacuum_and_leading_terms(space)[0]
        assert check_translation(space, pieces)[0]


class TestVirasoro:
    def test_ground_state_weight(self, space):
        for beta in space.sector_list:
            assert virasoro(space, 0, space.ground(beta)) == space.ground(beta).scale(II11.ground_weight(beta))

    def test_vacuum_annihilated(self, space):
        for n in range(-1, 4):
            assert virasoro(space, n, space.vacuum()).is_zero()

    def test_l_minus_one_is_translation(self, space):
        s = space.state((1, 0), space.var(1, 1))
        assert virasoro(space, -1, s) == translation(space, s)

    def test_central_term(self, space):
        for beta in space.sector_list:
            s = space.ground(beta)
            left = virasoro(space, 2, virasoro(space, -2, s)) - virasoro(space, -2, virasoro(space, 2, s))
            assert left == virasoro(space, 0, s).scale(4) + s.scale(Fraction(II11.rank, 2))

    def test_relations(self, a1_space):
        assert check_virasoro_relations(a1_space, low_pieces(a1_space, 0))[0]

    def test_l0_matrix_is_weight(self, space):
        piece = Piece((1, 0), 2)
        m = virasoro_matrix(space, 0, piece)
        dim = space.dimension(piece)
        assert m.columns == [[2 if r == c else 0 for r in range(dim)] for c in range(dim)]

    def test_commutators(self, space):
        report = verify_commutators(space, low_pieces(space, 0), Report("lattice-va"))
        assert [c.status for c in report.checks] == [CheckStatus.PASS] * 3


class TestIntegralForm:
    def test_closure_is_the_h_lattice(self, space, form):
        assert form == h_basis_lattice(space)
        assert form.lattice(Piece((0, 0), 0)).basis() == [[1]]

    def test_memberships(self, space, form):
        x1 = space.var(0, 1)
        assert form.contains(space.state((0, 0), h_polynomial(space, (1, 0), 2)))
        assert form.classify(space.state((0, 0), (x1 ** 2).quo_ground(2))) is Membership.NOT_IN_LATTICE
        assert form.classify(space.state((0, 0), (x1 ** 2).quo_ground(4))) is Membership.DENOMINATOR

    def test_conformal_vector(self, space, form, a1_space):
        assert virasoro(space, -2, space.vacuum()) == space.state((0, 0), space.var(0, 1) * space.var(1, 1))
        assert conformal_vector_membership(space, form) is Membership.MEMBER
        a1_form = integral_closure(a1_space)
        assert conformal_vector_membership(a1_space, a1_form) is Membership.DENOMINATOR

    def test_fixpoint(self, space, form):
        again = integral_closure(space, seeds={p: form.lattice(p).basis() for p in space.pieces})
        assert again == form and again.rounds == 1

    def test_round_limit(self, space):
        with pytest.raises(VerificationError) as err:
            integral_closure(space, rounds=1)
        assert err.value.code is ErrorCode.NOT_STABILIZED


class TestPowerModes:
    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_norm_two_root(self, space, k):
        assert check_power_modes(space, space.ground((1, 1)), k, -2, low_pieces(space, 0))[0]

    def test_square_of_norm_two_root_vanishes(self, space):
        assert power_state(space, space.ground((1, 1)), 2).is_zero()

    def test_null_vector_powers(self, space):
        a = space.ground((1, 0))
        assert power_state(space, a, 2) == space.ground((2, 0))
        for k in (2, 3):
            assert check_power_modes(space, a, k, -2, low_pieces(space, 0))[0]

    def test_heisenberg_state(self, space):
        a = space.state((0, 0), space.var(0, 1))
        assert power_state(space, a, 2) == space.state((0, 0), space.var(0, 1) ** 2)
        assert check_power_modes(space, a, 2, -2, low_pieces(space, 0))[0]

    @pytest.mark.parametrize("n", list(POWER_MODE_SAMPLES))
    def test_sampled_modes_on_every_piece(self, space, n):
        for a in (space.ground((1, 1)), space.ground((1, 0))):
            for k in (0, 1, 2):
                assert check_power_modes(space, a, k, n, space.pieces)[0]

    def test_sampled_power_modes_witness(self, space):
        ok, witness = sampled_power_modes(space, space.ground((1, 0)), 2, POWER_MODE_SAMPLES, space.pieces)
        assert ok
        assert witness["modes"] == [-3, -2, -1, 0, 1]
        assert witness["states"] == 5 * sum(space.dimension(p) for p in space.pieces)


class TestExponentials:
    def test_choose_vectors(self):
        assert choose_vectors(II11) == ((1, 1), (1, 0), (1, 0))
        assert choose_vectors(A1) == ((1,), None, None)

    def test_exp_zero_mode(self, space, form):
        series = exp_zero_mode(space, (1, 1), 2)
        state = space.ground((-1, -1))
        coeffs = series.coefficients(state)
        assert coeffs[0] == state
        assert coeffs[1] == vertex_mode(space, (1, 1), 0, state)
        witness = check_series_integrality(space, form, series, space.pieces)
        assert witness["images"] > 0
        assert check_group_law(space, series, low_pieces(space, 0))[0]

    def test_exp_zero_mode_needs_norm_two(self, space):
        with pytest.raises(VerificationError) as err:
            exp_zero_mode(space, (1, 0), 2)
        assert err.value.code is ErrorCode.CONFIG_INVALID

    def test_null_root_curve(self, space, form):
        curve = null_root_curve(space, (1, 0), (1, 0), 2)
        state = space.ground((-1, 1))
        generator = space.state((1, 0), space.var(0, 1))
        assert curve.coefficients(state, 1)[1] == general_mode(space, generator, 0, state)
        witness = check_series_integrality(space, form, curve, space.pieces)
        assert witness["order"] == 2
        assert witness["pieces"] == len(space.pieces)

    def test_targets_beyond_the_window(self):
        small = FockSpace(II11, sector_window=0)
        series = exp_zero_mode(small, (1, 1), 2)
        # e^a_0 b_0(-1) e^0 = -(b_0, a) e^a lands one step outside the window
        image = series.coefficients(small.state((0, 0), small.var(0, 1)), 1)[1]
        assert image == small.ground((1, 1)).scale(-1)
        witness = check_series_integrality(small, integral_closure(small), series, small.pieces)
        assert witness["pieces_beyond_window"] > 0

    def test_extended_form(self, space, form):
        far = Piece((2, 0), 0)
        with pytest.raises(VerificationError) as err:
            form.lattice(far)
        assert err.value.code is ErrorCode.OUT_OF_WINDOW
        assert form.extended().lattice(far).basis() == [[1]]
        assert form.extended() == form

    def test_window_overflow(self, space):
        # e^(n, -n) has ground weight -n^2, so order 4 needs oscillator mode 16
        series = OperatorSeries("far", 4, (1, -1), lambda state, upto: [state] + [FockState()] * upto)
        assert space.mode_bound == 15
        with pytest.raises(VerificationError) as err:
            check_series_integrality(space, h_basis_lattice(space), series, [Piece((0, 0), 0)])
        assert err.value.code is ErrorCode.WINDOW_OVERFLOW

    def test_integrality_violation(self, space, form):
        def halve(state, upto):
            return [state, state.scale(Fraction(1, 2))][:upto + 1]

        series = OperatorSeries("half", 1, (0, 0), halve)
        with pytest.raises(VerificationError) as err:
            check_series_integrality(space, form, series, [Piece((0, 0), 0)])
        assert err.value.code is ErrorCode.INTEGRALITY_VIOLATION


class TestSuite:
    def test_a1_certificate(self, a1_space):
        report = check_lattice_va(a1_space)
        statuses = {c.id: c.status for c in report.checks}
        assert statuses["A1.null-root-curve"] is CheckStatus.SKIP
        assert not report.failed

    @pytest.mark.slow
    def test_ii11_certificate(self, space):
        report = check_lattice_va(space)
        assert not report.failed
        assert {c.status for c in report.checks} == {CheckStatus.PASS}

    @pytest.mark.slow
    def test_default_suite_reaches_full_order(self):
        space3 = build_space(II11, 1, 3, order=3)
        report = check_lattice_va(space3, order=3)
        checks = {c.id: c for c in report.checks}
        assert not report.failed, [c.to_dict() for c in report.failed]
        for name in ("exp-zero-mode", "null-root-curve"):
            assert checks[f"II11.{name}"].witness["order"] == 3
            assert checks[f"II11.{name}"].witness["pieces"] == len(space3.pieces)


@pytest.mark.slow
class TestAcceptanceSizes:
    @pytest.fixture(scope="class")
    def space3(self):
        return FockSpace(II11, weight_bound=3)

    def test_power_modes_weight_three(self, space3):
        states = [space3.ground((1, 1)), space3.ground((1, 0)), space3.state((0, 0), space3.var(0, 1))]
        for a in states:
            for k in (0, 1, 2):
                ok, witness = sampled_power_modes(space3, a, k, POWER_MODE_SAMPLES, space3.pieces)
                assert ok, witness["failures"]

    def test_exp_zero_mode_to_order_four(self):
        space4 = FockSpace(II11, weight_bound=4)
        series = exp_zero_mode(space4, (1, 1), 4)
        witness = check_series_integrality(space4, h_basis_lattice(space4), series, space4.pieces)
        assert witness["order"] == 4
        assert witness["pieces"] == len(space4.pieces)

    def test_null_root_curve_to_order_three(self, space3):
        curve = null_root_curve(space3, (1, 0), (1, 0), 3)
        witness = check_series_integrality(space3, integral_closure(space3), curve, space3.pieces)
        assert witness["order"] == 3
        assert witness["pieces"] == len(space3.pieces)
