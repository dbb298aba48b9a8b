import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entmix.linalg import partial_trace
from entmix.measures import (
    LINEAR,
    VON_NEUMANN,
    binary_entropy,
    concurrence,
    entanglement_of_formation,
    entropy_of_entanglement,
    entropy_profile,
    linear_entropy,
    purity,
    von_neumann_entropy,
)
from entmix.states import (
    InvalidParameters,
    InvalidStateError,
    LptpsParams,
    ansatz_state,
    bell_state,
    make_rng,
    maximally_mixed,
    pure,
    random_local_unitary,
    random_state,
    werner_state,
)

from oracles import entropy_from_spectrum, mp_eof, wootters_concurrence

# frozen from 40-digit mpmath evaluations
EOF_HALF = 0.354578902665270
WERNER_HALF_SV = 0.774397470347699
H_09 = 0.468995593589281


def test_frozen_oracles_recompute():
    assert mp_eof(0.5) == pytest.approx(EOF_HALF, abs=1e-14)
    assert entropy_from_spectrum([5 / 8, 1 / 8, 1 / 8, 1 / 8], 4) == pytest.approx(WERNER_HALF_SV, abs=1e-14)


class TestVonNeumann:
    def test_maximally_mixed(self):
        assert von_neumann_entropy(maximally_mixed()) == pytest.approx(1.0, abs=1e-15)
        assert von_neumann_entropy(maximally_mixed(2)) == pytest.approx(1.0, abs=1e-15)

    def test_pure(self, rng):
        assert np.max(von_neumann_entropy(random_state(rng, rank_cap=1, size=100))) <= 1e-12

    def test_werner_half(self):
        s = von_neumann_entropy(werner_state(0.5))
        assert s == pytest.approx(WERNER_HALF_SV, abs=1e-13)
        assert s == pytest.approx(0.774399, abs=1e-5)

    def test_no_negative_zero(self):
        assert np.signbit(von_neumann_entropy(bell_state())) == False  # noqa: E712

    def test_invalid(self):
        with pytest.raises(InvalidStateError):
            von_neumann_entropy(np.eye(4))


class TestLinear:
    def test_maximally_mixed(self):
        assert linear_entropy(maximally_mixed()) == pytest.approx(1.0)
        assert purity(maximally_mixed()) == pytest.approx(0.25)

    def test_pure(self):
        assert linear_entropy(bell_state()) == pytest.approx(0.0, abs=1e-15)
        assert purity(bell_state()) == pytest.approx(1.0)

    def test_werner_half(self):
        assert purity(werner_state(0.5)) == pytest.approx(7 / 16, abs=1e-15)
        assert linear_entropy(werner_state(0.5)) == pytest.approx(0.75, abs=1e-15)

    @pytest.mark.parametrize("p", np.linspace(0, 1, 11))
    def test_werner_purity_closed_form(self, p):
        assert purity(werner_state(p)) == pytest.approx((1 + 3 * p * p) / 4, abs=1e-15)


class TestProfile:
    def test_bell(self):
        prof = entropy_profile(bell_state(), VON_NEUMANN)
        assert (prof.s_global, prof.s_1, prof.s_2) == pytest.approx((0, 1, 1), abs=1e-12)

    def test_pure_product(self):
        rho = pure(np.kron([0.6, 0.8], [1, 0]))
        for kind in (VON_NEUMANN, LINEAR):
            prof = entropy_profile(rho, kind)
            assert (prof.s_global, prof.s_1, prof.s_2) == pytest.approx((0, 0, 0), abs=1e-12)

    def test_ansatz_linear(self):
        prof = entropy_profile(ansatz_state(LptpsParams(0.3, 0.3, 0.2)), LINEAR)
        assert prof.s_1 == pytest.approx(0.84, abs=1e-14)
        assert prof.s_2 == pytest.approx(0.84, abs=1e-14)

    def test_linear_consistency(self, rng):
        prof = entropy_profile(random_state(rng, size=1000), LINEAR)
        assert np.allclose(prof.s_global, 4 / 3 * (1 - prof.mu), atol=1e-15)
        assert np.allclose(prof.s_1, 2 * (1 - prof.mu_1), atol=1e-15)
        assert np.allclose(prof.s_2, 2 * (1 - prof.mu_2), atol=1e-15)

    def test_ranges(self):
        rho = random_state(make_rng(4), size=100_000)
        for kind in (VON_NEUMANN, LINEAR):
            prof = entropy_profile(rho, kind)
            for s in (prof.s_global, prof.s_1, prof.s_2):
                assert np.all((s >= 0) & (s <= 1))
        assert np.all((prof.mu >= 0.25 - 1e-10) & (prof.mu <= 1 + 1e-10))
        assert np.all((prof.mu_1 >= 0.5 - 1e-10) & (prof.mu_1 <= 1 + 1e-10))
        rep = concurrence(rho)
        for m in (rep.concurrence, rep.tangle, rep.eof):
            assert np.all((m >= 0) & (m <= 1))

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            entropy_profile(bell_state(), "renyi")

    def test_wrong_shape(self):
        with pytest.raises(InvalidStateError):
            entropy_profile(maximally_mixed(2))


class TestConcurrence:
    def test_bell(self):
        rep = concurrence(bell_state())
        assert rep.concurrence == pytest.approx(1, abs=1e-12)
        assert rep.tangle == pytest.approx(1, abs=1e-12)
        assert rep.eof == pytest.approx(1, abs=1e-12)
        assert np.allclose(rep.wootters_lambdas, [1, 0, 0, 0], atol=1e-12)

    def test_product_zero(self, rng):
        a = random_state(rng, size=200, dim=2)
        b = random_state(rng, size=200, dim=2)
        rho = np.einsum("nij,nkl->nikjl", a, b).reshape(200, 4, 4)
        assert np.max(concurrence(rho).concurrence) <= 1e-8

    def test_werner(self):
        rep = concurrence(werner_state(0.8))
        assert rep.concurrence == pytest.approx(0.7, abs=1e-12)
        assert rep.tangle == pytest.approx(0.49, abs=1e-12)

    def test_matches_non_hermitian_route(self):
        rho = random_state(make_rng(8), size=5000)
        assert np.max(np.abs(concurrence(rho).concurrence - wootters_concurrence(rho))) <= 1e-9

    def test_report_invariants(self, rng):
        rep = concurrence(random_state(rng, size=5000, rank_cap=2))
        assert np.max(np.abs(rep.tangle - rep.concurrence**2)) <= 1e-12
        assert np.array_equal(rep.eof == 0, rep.concurrence == 0)
        order = np.argsort(rep.concurrence)
        assert np.all(np.diff(rep.eof[order]) >= 0)
        assert np.all(np.diff(rep.wootters_lambdas, axis=-1) <= 0)
        assert np.all(rep.wootters_lambdas >= 0)

    def test_invalid(self):
        with pytest.raises(InvalidStateError):
            concurrence(np.eye(4) * 0.3)

    def test_non_hermitian_reported_before_eigensolver(self):
        m = np.eye(4, dtype=complex) / 4
        m[0, 1] = 1e-3
        with pytest.raises(InvalidStateError) as info:
            concurrence(m)
        assert info.value.reason == "hermiticity"


class TestEof:
    def test_endpoints(self):
        assert entanglement_of_formation(0.0) == 0.0
        assert entanglement_of_formation(1.0) == pytest.approx(1.0, abs=1e-15)

    def test_half(self):
        assert entanglement_of_formation(0.5) == pytest.approx(EOF_HALF, abs=1e-14)

    @pytest.mark.parametrize("c", [0.01, 0.1, 0.3, 0.7, 0.9, 0.99, 1 - 1e-9])
    def test_mpmath(self, c):
        assert entanglement_of_formation(c) == pytest.approx(mp_eof(c), abs=1e-13)

    def test_small_c_no_cancellation(self):
        # E_F ~ (c^2 / 4) log2(4 / c^2) for small c
        c = 1e-6
        assert entanglement_of_formation(c) == pytest.approx(mp_eof(c), rel=1e-9)

    @pytest.mark.parametrize("c", [-0.1, 1.0000001, float("nan")])
    def test_range(self, c):
        with pytest.raises(InvalidParameters):
            entanglement_of_formation(c)

    def test_binary_entropy(self):
        assert binary_entropy(0.0) == 0.0 and binary_entropy(1.0) == 0.0
        assert binary_entropy(0.5) == pytest.approx(1.0)
        assert binary_entropy(0.9) == pytest.approx(H_09, abs=1e-14)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0, 1), st.floats(0, 1))
    def test_monotone(self, a, b):
        lo, hi = sorted((a, b))
        assert entanglement_of_formation(lo) <= entanglement_of_formation(hi) + 1e-15


class TestEntropyOfEntanglement:
    def test_bell(self):
        assert entropy_of_entanglement(bell_state()) == pytest.approx(1.0, abs=1e-12)

    def test_product(self):
        assert entropy_of_entanglement(pure([1, 0, 0, 0])) == 0.0

    def test_schmidt(self):
        rho = pure([np.sqrt(0.9), 0, 0, np.sqrt(0.1)])
        assert entropy_of_entanglement(rho) == pytest.approx(H_09, abs=1e-12)
        assert entropy_of_entanglement(rho) == pytest.approx(0.468996, abs=1e-6)

    def test_not_pure(self):
        with pytest.raises(InvalidParameters, match="not a pure state"):
            entropy_of_entanglement(werner_state(0.9))

    def test_pure_consistency(self):
        rho = random_state(make_rng(9), rank_cap=1, size=10_000)
        rep = concurrence(rho)
        assert np.max(np.abs(rep.eof - entropy_of_entanglement(rho))) <= 1e-8
        s_l1 = linear_entropy(partial_trace(rho, 1))
        assert np.max(np.abs(rep.tangle - s_l1)) <= 1e-8


def test_local_unitary_invariance():
    gen = make_rng(10)
    rho = random_state(gen, size=1000)
    u = random_local_unitary(gen, size=1000)
    moved = u @ rho @ np.conj(np.swapaxes(u, -1, -2))
    for kind in (VON_NEUMANN, LINEAR):
        a, b = entropy_profile(rho, kind), entropy_profile(moved, kind)
        for f in ("s_global", "s_1", "s_2", "mu", "mu_1", "mu_2"):
            assert np.max(np.abs(getattr(a, f) - getattr(b, f))) <= 1e-9
    ra, rb = concurrence(rho), concurrence(moved)
    for f in ("concurrence", "tangle", "eof", "wootters_lambdas"):
        assert np.max(np.abs(getattr(ra, f) - getattr(rb, f))) <= 1e-9


def test_ordering_inequivalence():
    rho = random_state(make_rng(12), size=10_000)
    sv = von_neumann_entropy(rho)
    sl = linear_entropy(rho)
    a, b = sv[:-1], sv[1:]
    la, lb = sl[:-1], sl[1:]
    assert np.any(((a < b) & (la > lb)) | ((a > b) & (la < lb)))
