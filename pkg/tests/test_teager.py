import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from pwpshrink import analyze, build_tree, db10_filters, te_operator
from pwpshrink.pwpt import SubbandSet


def _as_subbands(*vectors):
    tree = build_tree()
    return SubbandSet(
        coeffs=[np.asarray(v, dtype=np.float64) for v in vectors],
        tree=tree,
        frame_len=0,
    )


def test_constant_sequence_interior_zero():
    te = te_operator(_as_subbands([2.5, 2.5, 2.5, 2.5]))
    np.testing.assert_array_equal(te.values[0][1:-1], 0.0)


def test_hand_value():
    te = te_operator(_as_subbands([3.0, 2.0, 5.0]))
    # interior: 2^2 - 5*3 = -11; edges are plain squares
    np.testing.assert_array_equal(te.values[0], [9.0, -11.0, 25.0])


def test_cosine_gives_constant_energy():
    omega = 0.37
    amp = 1.9
    m = np.arange(200)
    w = amp * np.cos(omega * m)
    te = te_operator(_as_subbands(w))
    expect = amp**2 * np.sin(omega) ** 2
    assert np.abs(te.values[0][1:-1] - expect).max() < 1e-9


def test_boundary_rule_is_square():
    w = np.array([1.5, -2.0, 0.25, 3.0])
    te = te_operator(_as_subbands(w))
    assert te.values[0][0] == w[0] ** 2
    assert te.values[0][-1] == w[-1] ** 2


def test_shapes_preserved(rng):
    vectors = [rng.standard_normal(n) for n in (10, 10, 40, 80)]
    te = te_operator(_as_subbands(*vectors))
    assert [v.size for v in te.values] == [10, 10, 40, 80]


@given(
    scale=st.floats(min_value=-8.0, max_value=8.0, allow_nan=False),
    seed=st.integers(min_value=0, max_value=2**31),
)
@settings(max_examples=50, deadline=None)
def test_scale_law(scale, seed):
    w = np.random.default_rng(seed).standard_normal(32)
    base = te_operator(_as_subbands(w)).values[0]
    scaled = te_operator(_as_subbands(scale * w)).values[0]
    np.testing.assert_allclose(scaled, scale * scale * base, rtol=1e-12, atol=1e-13)


def test_scale_law_exact_for_powers_of_two(rng):
    # powers of two scale without rounding, so equality is bitwise
    w = rng.standard_normal(32)
    base = te_operator(_as_subbands(w)).values[0]
    scaled = te_operator(_as_subbands(4.0 * w)).values[0]
    np.testing.assert_array_equal(scaled, 16.0 * base)


def test_full_frame_shapes(rng):
    sb = analyze(rng.standard_normal(640), build_tree(), db10_filters())
    te = te_operator(sb)
    assert [t.size for t in te.values] == [c.size for c in sb.coeffs]
