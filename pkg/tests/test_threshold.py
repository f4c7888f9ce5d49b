import numpy as np
import pytest

from pwpshrink import NoiseState, analyze, build_tree, compute_spec, db10_filters, split_frames
from pwpshrink import lambda_erlang, lambda_gaussian, lambda_student
from pwpshrink import AudioBuffer
from pwpshrink.noise_tracker import POWER_FLOOR

from conftest import make_white_noise

FS = 8000


class TestLambdaErlang:
    def test_hand_value(self):
        # 4 ln 4 / (2 - 1)
        assert abs(lambda_erlang(1.0, 4.0) - 5.54518) < 1e-4

    def test_limit_at_gamma_one(self):
        assert lambda_erlang(1.0, 1.0) == 2.0
        assert abs(lambda_erlang(4.0, 1.0) - 4.0) < 1e-12

    def test_continuity_at_gamma_one(self):
        for eps in (1e-6, -1e-6):
            assert abs(lambda_erlang(1.0, 1.0 + eps) - 2.0) < 1e-4

    def test_positive_for_gamma_below_one(self):
        for g in (0.01, 0.3, 0.9999):
            assert lambda_erlang(1.0, g) > 0.0

    def test_noise_std_scaling(self):
        assert abs(lambda_erlang(4.0, 4.0) - 2.0 * lambda_erlang(1.0, 4.0)) < 1e-9

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            lambda_erlang(0.0, 1.0)
        with pytest.raises(ValueError):
            lambda_erlang(1.0, -2.0)


class TestLambdaGaussian:
    def test_hand_value(self):
        # sqrt(2*2) * ln(sqrt(2)) = 2 ln sqrt(2)
        assert abs(lambda_gaussian(1.0, 1.0) - 0.69315) < 1e-4

    def test_positive_everywhere(self):
        for g in 10.0 ** np.linspace(-3, 3, 13):
            assert lambda_gaussian(1.0, g) > 0.0

    def test_noise_std_scaling(self):
        assert abs(lambda_gaussian(4.0, 2.5) - 2.0 * lambda_gaussian(1.0, 2.5)) < 1e-9


class TestLambdaStudent:
    def test_hand_value(self):
        # sqrt(2 / ((sqrt(2) + 3) * 0.5))
        assert abs(lambda_student(1.0, 1.0, 0.5) - 0.95197) < 1e-4

    def test_noise_std_scaling(self):
        assert abs(lambda_student(4.0, 1.7, 0.5) - 2.0 * lambda_student(1.0, 1.7, 0.5)) < 1e-9

    def test_finite_over_wide_gamma_range(self):
        for g in 10.0 ** np.linspace(-3, 3, 25):
            v = lambda_student(1.0, g, 0.5)
            assert np.isfinite(v) and v > 0.0


class TestComputeSpec:
    def _oracle_state(self, noise_buf):
        tree = build_tree()
        filters = db10_filters()
        stack = split_frames(noise_buf, 640)
        frames = [analyze(f, tree, filters) for f in stack.frames]
        return NoiseState().set_oracle(frames), tree, filters, stack

    def test_gamma_one_gives_two_noise_std(self):
        # frame whose per-band power equals the oracle power exactly
        noise = make_white_noise(3.0, seed=21, scale=0.3)
        state, tree, filters, stack = self._oracle_state(noise)
        sb = analyze(stack.frames[10], tree, filters)
        for k, c in enumerate(sb.coeffs):
            c *= np.sqrt(state.sigma_n2_pwp[k] / np.mean(c**2))
        spec = compute_spec(state, sb, "pwp")
        np.testing.assert_allclose(spec.gamma, 1.0, rtol=1e-9)
        np.testing.assert_allclose(
            spec.lambda1, 2.0 * np.sqrt(state.sigma_n2_pwp), rtol=1e-9
        )

    def test_silence_mean_threshold_near_two_noise_std(self):
        # averaged over noise-only frames, gamma ~ 1 and lambda1 ~ 2 noise std
        noise = make_white_noise(4.0, seed=21, scale=0.3)
        state, tree, filters, stack = self._oracle_state(noise)
        gammas, lams = [], []
        for frame in stack.frames:
            spec = compute_spec(state, analyze(frame, tree, filters), "pwp")
            gammas.append(spec.gamma)
            lams.append(spec.lambda1)
        mean_gamma = np.mean(gammas, axis=0)
        mean_lam = np.mean(lams, axis=0)
        assert np.all(np.abs(mean_gamma - 1.0) < 0.3)
        np.testing.assert_allclose(
            mean_lam, 2.0 * np.sqrt(state.sigma_n2_pwp), rtol=0.4
        )

    def test_floored_noise_passes_through(self):
        state = NoiseState()  # fresh: estimates at floor
        assert np.all(state.sigma_n2_pwp == POWER_FLOOR)
        tree = build_tree()
        filters = db10_filters()
        gen = np.random.default_rng(1)
        sb = analyze(gen.standard_normal(640), tree, filters)
        spec = compute_spec(state, sb, "pwp")
        np.testing.assert_array_equal(spec.lambda1, 0.0)

    def test_lambda2_is_twice_lambda1(self):
        noise = make_white_noise(2.0, seed=22)
        state, tree, filters, stack = self._oracle_state(noise)
        sb = analyze(stack.frames[4], tree, filters)
        for mode in ("pwp", "te"):
            spec = compute_spec(state, sb, mode)
            np.testing.assert_array_equal(spec.lambda2, 2.0 * spec.lambda1)

    def test_amplitude_doubling_doubles_lambda(self):
        noise = make_white_noise(3.0, seed=23)
        state, tree, filters, stack = self._oracle_state(noise)
        doubled = AudioBuffer(2.0 * noise.samples, FS)
        state2, _, _, stack2 = self._oracle_state(doubled)
        sb = analyze(stack.frames[6], tree, filters)
        sb2 = analyze(stack2.frames[6], tree, filters)
        s1 = compute_spec(state, sb, "pwp")
        s2 = compute_spec(state2, sb2, "pwp")
        np.testing.assert_allclose(s2.lambda1, 2.0 * s1.lambda1, rtol=1e-9)

    def test_te_mode_uses_te_statistics(self):
        noise = make_white_noise(2.0, seed=24)
        state, tree, filters, stack = self._oracle_state(noise)
        sb = analyze(stack.frames[3], tree, filters)
        spec_pwp = compute_spec(state, sb, "pwp")
        spec_te = compute_spec(state, sb, "te")
        assert not np.allclose(spec_pwp.lambda1, spec_te.lambda1)

    def test_unknown_mode(self):
        noise = make_white_noise(1.0, seed=25)
        state, tree, filters, stack = self._oracle_state(noise)
        sb = analyze(stack.frames[0], tree, filters)
        with pytest.raises(ValueError):
            compute_spec(state, sb, "spectral")
