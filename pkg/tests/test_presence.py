import numpy as np
import pytest

from pwpshrink import EnhanceConfig, NoiseState, PresenceState
from pwpshrink.teager import TeCoeffs

N_SUB = 24


def _te_zeros(sizes=None):
    sizes = sizes or [10] * 16 + [40] * 4 + [80] * 4
    return TeCoeffs(values=[np.zeros(n) for n in sizes])


def _te_const(value, sizes=None):
    sizes = sizes or [10] * 16 + [40] * 4 + [80] * 4
    return TeCoeffs(values=[np.full(n, value) for n in sizes])


def _unit_noise():
    state = NoiseState()
    state._te.estimate = np.ones(N_SUB)
    state._pwp.estimate = np.ones(N_SUB)
    state.oracle = True
    return state


class TestXiRecursion:
    def test_geometric_decay_closed_form(self):
        cfg = EnhanceConfig()
        state = PresenceState(cfg)
        state.xi_recursion(_te_zeros(), _unit_noise())
        kappa = cfg.beta
        xi0 = cfg.xi_min
        for k in (0, 5, 20):
            m = np.arange(state.xi[k].size)
            np.testing.assert_allclose(state.xi[k], xi0 * kappa**m, rtol=1e-12, atol=0)

    def test_no_memory_when_kappa_zero(self):
        cfg = EnhanceConfig(beta=0.0)
        state = PresenceState(cfg)
        te = _te_const(3.0)  # posterior 3, eta = 2
        state.xi_recursion(te, _unit_noise())
        for k in range(N_SUB):
            assert state.xi[k][0] == cfg.xi_min  # seed
            np.testing.assert_array_equal(state.xi[k][1:], 2.0)

    def test_constant_eta_fixed_point(self):
        cfg = EnhanceConfig()
        state = PresenceState(cfg)
        te = _te_const(1.5)  # eta = 0.5
        for _ in range(40):
            state.xi_recursion(te, _unit_noise())
        for k in range(N_SUB):
            assert abs(state.xi[k][-1] - 0.5) < 1e-6

    def test_carry_between_frames(self):
        cfg = EnhanceConfig()
        state = PresenceState(cfg)
        state.xi_recursion(_te_const(2.0), _unit_noise())
        tail = [state.xi[k][-1] for k in range(N_SUB)]
        state.xi_recursion(_te_zeros(), _unit_noise())
        for k in range(N_SUB):
            assert state.xi[k][0] == tail[k]

    def test_frame_mode_constant_within_frame(self):
        cfg = EnhanceConfig(xi_recursion="frame")
        state = PresenceState(cfg)
        state.xi_recursion(_te_const(4.0), _unit_noise())
        first = [x.copy() for x in state.xi]
        for x in first:
            assert np.all(x == x[0])
        # second frame: kappa*xi + (1-kappa)*eta_prev with eta_prev = 3
        state.xi_recursion(_te_const(4.0), _unit_noise())
        expect = cfg.beta * first[0][0] + (1 - cfg.beta) * 3.0
        for x in state.xi:
            np.testing.assert_allclose(x, expect, rtol=1e-12)


class TestRTau:
    def _state_with_uniform_xi(self, value):
        state = PresenceState(EnhanceConfig())
        state.xi = [np.full(10, value) for _ in range(N_SUB)]
        state._sub_means = None
        return state

    def test_at_lower_bound(self):
        # k = 0 with half-width 1 averages two equal values: exact in floats
        state = self._state_with_uniform_xi(0.1)
        assert state.r_tau(0, 3, "local") == 0.0
        below = self._state_with_uniform_xi(0.09)
        assert below.r_tau(5, 3, "local") == 0.0
        assert below.r_tau(5, 3, "global") == 0.0

    def test_at_upper_bound(self):
        state = self._state_with_uniform_xi(10 ** (-5 / 10))
        assert state.r_tau(5, 3, "global") == 1.0

    def test_log_interpolation(self):
        # log10(0.17783/0.1) / log10(0.31623/0.1) = 0.25/0.5
        state = self._state_with_uniform_xi(0.17783)
        assert abs(state.r_tau(5, 3, "local") - 0.5) < 1e-4

    def test_monotone_in_xi(self):
        values = [0.05, 0.12, 0.2, 0.31, 0.5]
        rs = [self._state_with_uniform_xi(v).r_tau(3, 2, "global") for v in values]
        assert rs == sorted(rs)
        assert all(0.0 <= r <= 1.0 for r in rs)

    def test_unknown_tau(self):
        with pytest.raises(ValueError):
            self._state_with_uniform_xi(0.2).r_tau(0, 0, "medium")

    def test_window_mixes_neighbor_subbands(self):
        state = PresenceState(EnhanceConfig())
        state.xi = [np.full(10, 0.0) for _ in range(N_SUB)]
        state.xi[5] = np.full(10, 0.3)
        state._sub_means = None
        # local window at k=5 spans subbands 4..6: mean = 0.1
        got = state._xi_tau_array(5, 1)[0]
        assert abs(got - 0.1) < 1e-12

    def test_window_truncates_and_renormalizes_at_edge(self):
        state = PresenceState(EnhanceConfig())
        state.xi = [np.full(10, 0.0) for _ in range(N_SUB)]
        state.xi[0] = np.full(10, 0.3)
        state._sub_means = None
        # k=0 with half-width 1 only sees subbands {0, 1}: mean = 0.15
        assert abs(state._xi_tau_array(0, 1)[0] - 0.15) < 1e-12

    def test_mapping_between_subband_lengths(self):
        state = PresenceState(EnhanceConfig())
        idx = state._map_index(80, 10)
        assert idx.size == 80
        assert idx.min() == 0 and idx.max() == 9
        # co-temporal: coefficient 40/80 maps to 5/10
        assert idx[40] == 5


class TestRSubband:
    def _state(self, means):
        state = PresenceState(EnhanceConfig())
        state.xi = [np.full(4, m) for m in means]
        state._sub_means = None
        return state

    def test_below_minimum_is_zero(self):
        means = [0.05] * N_SUB
        assert self._state(means).r_subband(3) == 0.0

    def test_rising_subband_is_one(self):
        means = [0.15] * N_SUB
        means[7] = 0.2
        assert self._state(means).r_subband(7) == 1.0

    def test_first_subband_uses_itself(self):
        means = [0.15] * N_SUB
        state = self._state(means)
        assert state.r_subband(0) == 1.0  # 0.15 > xi_min

    def test_peak_scaled_upper_branch(self):
        cfg = EnhanceConfig()
        means = [0.32] * N_SUB
        means[0] = 1.0   # sets the peak
        state = self._state(means)
        state.xi_peak = cfg.xi_min
        # subband 3 is non-rising; xi_peak -> 1.0; 0.32 >= 1.0*xi_max -> mu = 1
        assert state.r_subband(3) == 1.0

    def test_peak_scaled_lower_branch(self):
        means = [0.3] * N_SUB
        means[0] = 4.0
        state = self._state(means)
        # peak 4: mu band is [0.4, 1.26]; 0.3 <= 0.4 -> 0
        assert state.r_subband(3) == 0.0

    def test_peak_is_clamped(self):
        cfg = EnhanceConfig()
        means = [100.0] * N_SUB
        state = self._state(means)
        state.r_subband(0)
        assert state.xi_peak == cfg.xi_peak_cap


class TestShapeAlpha:
    def test_endpoints_via_formula(self):
        state = PresenceState(EnhanceConfig())
        state.r_tau = lambda k, m, tau: 1.0
        state.r_subband = lambda k: 1.0
        assert state.shape_alpha(0, 0) == 1.0  # q = 0
        state.r_subband = lambda k: 0.0
        assert state.shape_alpha(0, 0) == 0.25  # q = 1
        state.r_subband = lambda k: 0.5
        assert state.shape_alpha(0, 0) == 0.5  # q = 0.5

    def test_full_path_silence_gives_floor(self):
        state = PresenceState(EnhanceConfig())
        state.xi = [np.full(10, 1e-4) for _ in range(N_SUB)]
        state._sub_means = None
        assert state.shape_alpha(5, 3) == 0.25

    def test_full_path_speech_gives_one(self):
        state = PresenceState(EnhanceConfig())
        state.xi = [np.full(10, float(k + 1)) for k in range(N_SUB)]
        state._sub_means = None
        assert state.shape_alpha(5, 3) == 1.0

    def test_alpha_monotone_decreasing_in_q(self):
        state = PresenceState(EnhanceConfig())
        alphas = []
        for product in np.linspace(0.0, 1.0, 11):
            state.r_tau = lambda k, m, tau, p=product: p
            state.r_subband = lambda k: 1.0
            alphas.append(state.shape_alpha(0, 0))
        assert alphas == sorted(alphas)

    def test_bounds_on_random_states(self, rng):
        cfg = EnhanceConfig()
        sizes = [10] * 16 + [40] * 4 + [80] * 4
        for _ in range(50):
            state = PresenceState(cfg)
            state.xi = [
                10.0 ** rng.uniform(-4, 2, size=n) for n in sizes
            ]
            state._sub_means = None
            state.xi_peak = float(10.0 ** rng.uniform(-1, 1))
            for k in (0, 3, 17, 23):
                assert 0.0 <= state.r_subband(k) <= 1.0
                for m in (0, sizes[k] // 2):
                    r_l = state.r_tau(k, m, "local")
                    r_g = state.r_tau(k, m, "global")
                    assert 0.0 <= r_l <= 1.0 and 0.0 <= r_g <= 1.0
                    alpha = state.shape_alpha(k, m)
                    assert 0.25 <= alpha <= 1.0

    def test_vectorized_matches_scalar(self, rng):
        cfg = EnhanceConfig()
        sizes = [10] * 16 + [40] * 4 + [80] * 4
        state = PresenceState(cfg)
        state.xi = [10.0 ** rng.uniform(-3, 1, size=n) for n in sizes]
        state._sub_means = None
        frame = state.alpha_frame()
        for k in (0, 1, 11, 16, 23):
            for m in (0, 2, sizes[k] - 1):
                assert abs(frame[k][m] - state.shape_alpha(k, m)) < 1e-12
