import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinphase import (
    AmplitudeDampingFamily,
    ChannelSpec,
    DensityMatrix4,
    DephasingFamily,
    build_ad_state,
    build_dephasing_state,
    beta_from_nbar,
    dissipator_apply,
    gibbs_state,
    l1_coherence,
    random_state,
    relative_coherence,
    relative_entropy,
    von_neumann_entropy,
)
from spinphase.errors import Exhausted, NotPositive, SingularReference
from spinphase.qstate import state_from_text, state_to_text

from conftest import QUARTER, random_valid_state


class TestConstructors:
    def test_maximally_mixed(self):
        rho = build_dephasing_state(DephasingFamily(QUARTER))
        assert np.allclose(rho.matrix, np.eye(4) / 4)

    def test_fig1_x_state_coherence(self):
        rho = build_dephasing_state(DephasingFamily(QUARTER, alpha=0.035))
        assert l1_coherence(rho) == pytest.approx(0.14)

    def test_unphysical_coherences_rejected(self):
        fam = DephasingFamily(QUARTER, alpha=0.3, beta=0.3)
        # independent oracle: diagonalize the raw matrix
        assert np.linalg.eigvalsh(fam.matrix())[0] < -1e-10
        with pytest.raises(NotPositive):
            build_dephasing_state(fam)

    def test_fig3_state(self):
        rho = build_ad_state(
            AmplitudeDampingFamily((0.1, 0.2, 0.1, 0.6), alpha=0.02, beta=0.15, gamma=0.02)
        )
        assert l1_coherence(rho) == pytest.approx(0.76)

    def test_ad_diagonal(self):
        rho = build_ad_state(AmplitudeDampingFamily((0.1, 0.2, 0.3, 0.4)))
        assert l1_coherence(rho) == 0.0

    def test_ad_gamma_x_state_is_psd(self):
        fam = AmplitudeDampingFamily(QUARTER, gamma=0.25)
        assert np.linalg.eigvalsh(fam.matrix())[0] >= -1e-10
        build_ad_state(fam)  # does not raise

    def test_populations_validated(self):
        with pytest.raises(ValueError):
            build_dephasing_state(DephasingFamily((0.5, 0.5, 0.5, -0.5)))

    def test_constructors_return_valid_states(self):
        rng = np.random.default_rng(0)
        for kind in ("dephasing", "ad"):
            for _ in range(20):
                rho = random_valid_state(rng, kind)
                m = rho.matrix
                assert np.max(np.abs(m - m.conj().T)) <= 1e-12
                assert abs(m.trace() - 1) <= 1e-12
                assert np.linalg.eigvalsh(m)[0] >= -1e-10


class TestRandomState:
    def test_deterministic(self):
        a = random_state("dephasing", (0.0, 0.25), seed=123)
        b = random_state("dephasing", (0.0, 0.25), seed=123)
        assert state_to_text(a) == state_to_text(b)

    def test_zero_bounds_diagonal(self):
        rho = random_state("ad", (0.0, 0.0), seed=5)
        assert l1_coherence(rho) == 0.0

    def test_sampled_states_psd(self):
        for seed in range(1000):
            rho = random_state("ad", (0.0, 0.25), seed=seed)
            assert np.linalg.eigvalsh(rho.matrix)[0] >= -1e-10

    def test_bounds_validated(self):
        with pytest.raises(ValueError):
            random_state("dephasing", (0.0, 0.7), seed=0)

    def test_exhausted_cap(self, monkeypatch):
        import spinphase.qstate as qs

        monkeypatch.setattr(qs, "MAX_REJECTIONS", 3)
        with pytest.raises(Exhausted):
            # alpha, beta pinned at 0.5 with random pops: essentially never PSD
            qs.random_state("dephasing", (0.5, 0.5), seed=0)


class TestCoherence:
    @given(
        alpha=st.floats(0.0, 0.1),
        beta=st.floats(0.0, 0.08),
    )
    @settings(max_examples=50)
    def test_l1_dephasing_family_closed_form(self, alpha, beta):
        rho = build_dephasing_state(DephasingFamily(QUARTER, alpha=alpha, beta=beta))
        assert l1_coherence(rho) == pytest.approx(4 * alpha + 8 * beta, abs=1e-12)

    def test_l1_ad_family_closed_form(self):
        rho = build_ad_state(
            AmplitudeDampingFamily((0.1, 0.2, 0.1, 0.6), alpha=0.02, beta=0.15, gamma=0.02)
        )
        assert l1_coherence(rho) == pytest.approx(4 * (0.02 + 0.15 + 0.02))

    def test_relative_coherence_diagonal_zero(self):
        rho = build_ad_state(AmplitudeDampingFamily((0.1, 0.2, 0.3, 0.4)))
        assert relative_coherence(rho) == 0.0

    def test_relative_coherence_plus_plus(self):
        rho = DensityMatrix4(np.full((4, 4), 0.25, dtype=complex))
        assert relative_coherence(rho) == pytest.approx(math.log(4), abs=1e-10)

    def test_relative_coherence_fig3_positive(self, fig3_state):
        # eigendecomposition oracle, written out explicitly
        evals = np.linalg.eigvalsh(fig3_state.matrix)
        evals = evals[evals > 1e-15]
        s_rho = -float(np.sum(evals * np.log(evals)))
        diag = np.real(np.diag(fig3_state.matrix))
        s_diag = -float(np.sum(diag * np.log(diag)))
        expected = s_diag - s_rho
        assert expected > 0
        assert relative_coherence(fig3_state) == pytest.approx(expected, abs=1e-12)

    def test_strictly_positive_off_diagonal(self):
        rng = np.random.default_rng(7)
        for kind in ("dephasing", "ad"):
            for _ in range(10):
                rho = random_valid_state(rng, kind)
                if l1_coherence(rho) > 1e-9:
                    assert relative_coherence(rho) > 0

    @given(mu=st.floats(0.01, 1.0))
    @settings(max_examples=30)
    def test_l1_linear_in_mu(self, mu):
        rho = build_dephasing_state(DephasingFamily(QUARTER, alpha=0.1, beta=0.05))
        scaled = rho.rescale_coherences(mu)
        assert l1_coherence(scaled) == pytest.approx(mu * l1_coherence(rho), rel=1e-12)

    def test_relative_coherence_monotone_in_mu(self):
        rng = np.random.default_rng(3)
        for kind in ("dephasing", "ad"):
            rho = random_valid_state(rng, kind)
            mus = np.linspace(0.1, 1.0, 10)
            values = [relative_coherence(rho.rescale_coherences(m)) for m in mus]
            assert all(v1 <= v2 + 1e-12 for v1, v2 in zip(values, values[1:]))


class TestEntropies:
    def test_vn_entropy_mixed(self, maximally_mixed):
        assert von_neumann_entropy(maximally_mixed) == pytest.approx(math.log(4))

    def test_relative_entropy_self_zero(self, fig3_state):
        assert relative_entropy(fig3_state, fig3_state) == pytest.approx(0.0, abs=1e-12)

    def test_relative_entropy_vs_direct_formula(self, maximally_mixed):
        nbar = 1.5
        sigma = gibbs_state(1.0, 1.0, beta_from_nbar(nbar))
        # oracle: exact two-level Gibbs weights
        p_exc = nbar / (2 * nbar + 1)
        weights = np.kron([p_exc, 1 - p_exc], [p_exc, 1 - p_exc])
        expected = -math.log(4) - 0.25 * float(np.sum(np.log(weights)))
        got = relative_entropy(maximally_mixed, sigma)
        assert got == pytest.approx(expected, abs=1e-12)
        assert got >= 0

    def test_relative_entropy_nonnegative(self):
        rng = np.random.default_rng(17)
        sigma = gibbs_state(1.0, 1.0, 0.3)
        for _ in range(20):
            rho = random_valid_state(rng, "ad")
            assert relative_entropy(rho, sigma) >= -1e-10

    def test_singular_reference(self, maximally_mixed):
        pure = gibbs_state(1.0, 1.0, math.inf)
        with pytest.raises(SingularReference):
            relative_entropy(maximally_mixed, pure)


class TestGibbs:
    def test_infinite_temperature(self):
        assert np.allclose(gibbs_state(1.0, 1.0, 0.0).matrix, np.eye(4) / 4)

    def test_zero_temperature(self):
        rho = gibbs_state(1.0, 1.0, math.inf)
        expected = np.zeros((4, 4))
        expected[3, 3] = 1.0
        assert np.allclose(rho.matrix, expected)

    def test_detailed_balance_population(self):
        nbar = 1.5
        rho = gibbs_state(1.0, 1.0, beta_from_nbar(nbar))
        # single-qubit excited population nbar / (2 nbar + 1)
        p_exc = np.real(rho.matrix[0, 0] + rho.matrix[1, 1])
        assert p_exc == pytest.approx(0.375, abs=1e-14)

    def test_gibbs_is_ad_fixed_point(self):
        nbar = 1.5
        spec = ChannelSpec(kind="ad", gamma=0.7, nbar=nbar)
        rho = gibbs_state(1.0, 1.0, beta_from_nbar(nbar))
        assert np.max(np.abs(dissipator_apply(rho, spec))) < 1e-14

    def test_matches_channel_equilibrium(self):
        spec = ChannelSpec(kind="ad", gamma=0.25, nbar=1.5)
        g = gibbs_state(1.0, 1.0, beta_from_nbar(1.5))
        assert np.allclose(g.matrix, spec.equilibrium_state().matrix, atol=1e-14)


class TestSerialization:
    def test_roundtrip(self, fig3_state):
        text = state_to_text(fig3_state)
        back = state_from_text(text)
        assert np.allclose(back.matrix, fig3_state.matrix, atol=1e-15)
        assert len(text.strip().splitlines()) == 4

    def test_complex_entries_roundtrip(self):
        m = np.eye(4, dtype=complex) / 4
        m[0, 1] = 0.05 + 0.02j
        m[1, 0] = 0.05 - 0.02j
        rho = DensityMatrix4(m)
        assert np.allclose(state_from_text(state_to_text(rho)).matrix, m)

    def test_malformed_rejected(self):
        with pytest.raises(ValueError):
            state_from_text("1 0 0\n0 0 0 0\n0 0 0 0\n0 0 0 0")
