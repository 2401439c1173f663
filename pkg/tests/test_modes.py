import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ifm.modes import (
    AbsorberSpec,
    BeamSplitterSpec,
    ConfigurationError,
    ModeState,
    apply_absorber,
    apply_beamsplitter,
    apply_phase,
    beamsplitter_matrix,
    propagate,
)

AB = ("a", "b")


def state(u, v, p_abs=0.0):
    return ModeState(AB, [u, v], p_abs)


@pytest.mark.parametrize(
    "R, uv, expected",
    [
        (0.5, (1, 0), (math.sqrt(0.5), 1j * math.sqrt(0.5))),
        (0.0, (0.6, 0.8j), (0.6, 0.8j)),
        (1.0, (1, 0), (0, 1j)),
    ],
)
def test_beamsplitter_examples(R, uv, expected):
    out = apply_beamsplitter(state(*uv), BeamSplitterSpec(R, AB))
    np.testing.assert_allclose(out.amplitudes, expected, atol=1e-15)
    assert out.p_absorbed == 0.0


def test_beamsplitter_leaves_other_modes_alone():
    s = ModeState(("a", "b", "c"), [0.6, 0, 0.8])
    out = apply_beamsplitter(s, BeamSplitterSpec(0.3, ("a", "b")))
    assert out.amplitude("c") == 0.8


def test_beamsplitter_matrix_unitary_for_random_R(rng):
    for R in rng.uniform(0, 1, 100):
        U = beamsplitter_matrix(R)
        np.testing.assert_allclose(U @ U.conj().T, np.eye(2), atol=1e-12)


@pytest.mark.parametrize("R", [-0.1, 1.2, math.nan])
def test_bad_reflectivity(R):
    with pytest.raises(ConfigurationError):
        BeamSplitterSpec(R, AB)


def test_bad_mode_pair():
    with pytest.raises(ConfigurationError):
        BeamSplitterSpec(0.5, ("a", "a"))


def test_unknown_mode_errors():
    s = state(1, 0)
    with pytest.raises(ConfigurationError):
        apply_beamsplitter(s, BeamSplitterSpec(0.5, ("a", "z")))
    with pytest.raises(ConfigurationError):
        apply_phase(s, "z", 1.0)
    with pytest.raises(ConfigurationError):
        apply_absorber(s, AbsorberSpec("z"))


def test_phase_examples():
    s = state(1, 0)
    np.testing.assert_array_equal(apply_phase(s, "a", 0.0).amplitudes, s.amplitudes)
    assert apply_phase(s, "a", math.pi).amplitude("a") == pytest.approx(-1, abs=1e-15)
    twice = apply_phase(apply_phase(s, "a", math.pi / 2), "a", math.pi / 2)
    once = apply_phase(s, "a", math.pi)
    np.testing.assert_allclose(twice.amplitudes, once.amplitudes, atol=1e-15)


def test_absorber_half():
    s = state(math.sqrt(0.5), 1j * math.sqrt(0.5))
    out = apply_absorber(s, AbsorberSpec("b"))
    np.testing.assert_allclose(out.amplitudes, [math.sqrt(0.5), 0], atol=1e-15)
    assert out.p_absorbed == pytest.approx(0.5, abs=1e-15)


def test_absorber_on_empty_mode_is_identity():
    s = state(1, 0)
    assert apply_absorber(s, AbsorberSpec("b")) is s


def test_absorber_idempotent():
    s = state(0.6, 0.8)
    once = apply_absorber(s, AbsorberSpec("b"))
    twice = apply_absorber(once, AbsorberSpec("b"))
    assert twice.p_absorbed == once.p_absorbed
    np.testing.assert_array_equal(twice.amplitudes, once.amplitudes)


def test_state_is_immutable():
    s = state(1, 0)
    with pytest.raises(ValueError):
        s.amplitudes[0] = 0
    out = apply_phase(s, "a", 1.0)
    assert s.amplitude("a") == 1


def _random_state(rng, n=2):
    z = rng.normal(size=n) + 1j * rng.normal(size=n)
    return z / np.linalg.norm(z)


def test_unitarity_over_random_states(rng):
    labels = ("a", "b", "c")
    for _ in range(1000):
        s = ModeState(labels, _random_state(rng, 3))
        els = [
            BeamSplitterSpec(rng.uniform(), ("a", "b")),
            ("b", rng.uniform(0, 2 * math.pi)),
            BeamSplitterSpec(rng.uniform(), ("b", "c")),
            ("c", rng.uniform(0, 2 * math.pi)),
            BeamSplitterSpec(rng.uniform(), ("c", "a")),
        ]
        out = propagate(s, els)
        assert abs(out.mode_norm() - 1.0) < 1e-12
        assert out.p_absorbed == 0.0


element = st.one_of(
    st.tuples(st.just("bs"), st.floats(0, 1), st.sampled_from([("a", "b"), ("b", "a")])),
    st.tuples(st.just("phase"), st.sampled_from(AB), st.floats(-10, 10)),
    st.tuples(st.just("abs"), st.sampled_from(AB)),
)


@settings(max_examples=300, deadline=None)
@given(
    st.floats(0, 2 * math.pi),
    st.floats(0, 1),
    st.lists(element, max_size=12),
)
def test_norm_conservation_and_monotone_absorption(theta, split, seq):
    s = ModeState(AB, [math.sqrt(split), math.sqrt(1 - split) * np.exp(1j * theta)])
    last = s.p_absorbed
    for kind, *args in seq:
        if kind == "bs":
            s = apply_beamsplitter(s, BeamSplitterSpec(args[0], args[1]))
        elif kind == "phase":
            s = apply_phase(s, *args)
        else:
            s = apply_absorber(s, AbsorberSpec(args[0]))
        assert s.p_absorbed >= last
        last = s.p_absorbed
        assert abs(s.total_probability() - 1.0) < 1e-12
