import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIXTURES
from hyperprob.errors import BasisNotOrthonormal, NotDecomposable, NotDecomposableOutput, NotGUnitary
from hyperprob.forward import (
    ForwardInterference,
    decompose,
    forward_probabilities,
    interference_terms,
    sign_constraint_residual,
)
from hyperprob.generators import random_decomposable_state, random_g_unitary, random_space, standard_basis
from hyperprob.hypernum import HyperNumber, hexp, in_G_plus_star, sq_modulus
from hyperprob.hyperspace import GMatrix2, HyperState, apply, state
from hyperprob.kolmogorov import context_stats
from hyperprob.qlra import represent


def load_fixture(name):
    return json.loads((FIXTURES / name).read_text())


def test_decompose_examples(rep_c):
    e1, e2 = standard_basis()
    coeffs, ok = decompose(e1, (e1, e2))
    assert ok and coeffs[0] == HyperNumber(1) and coeffs[1] == HyperNumber(0)
    coeffs, ok = decompose(rep_c.amplitude, rep_c.a_basis)
    assert ok
    assert all(abs(sq_modulus(c) - 0.5) <= 1e-12 for c in coeffs)
    bad = HyperNumber(0.2, 0.7)
    coeffs, ok = decompose(state([1, 0]).scale(1) + state([0, 1]).scale(bad), (e1, e2))
    assert not ok and coeffs[1] == bad
    with pytest.raises(BasisNotOrthonormal):
        decompose(e1, (e1, e1))


def test_expansion_keeps_normalization(rep_c):
    coeffs, _ = decompose(rep_c.amplitude, rep_c.a_basis)
    assert abs(sum(sq_modulus(c) for c in coeffs) - 1) <= 1e-12


def test_round_trip_hyp8(rep_c):
    probs = forward_probabilities((math.sqrt(0.5), math.sqrt(0.5)), rep_c.V)
    assert np.allclose(probs, (0.95, 0.05), atol=1e-10, rtol=0)
    coeffs, _ = decompose(rep_c.amplitude, rep_c.a_basis)
    assert np.allclose(forward_probabilities(coeffs, rep_c.V), (0.95, 0.05), atol=1e-10, rtol=0)


def test_permutation_is_trivial():
    P = GMatrix2(((HyperNumber(0), HyperNumber(1)), (HyperNumber(1), HyperNumber(0))), "a", "b")
    v = (math.sqrt(0.3), math.sqrt(0.7) * hexp(0.4))
    assert np.allclose(forward_probabilities(v, P), (0.7, 0.3), atol=1e-12, rtol=0)


def test_frozen_counterexample_is_rejected():
    v = HyperState.from_json(load_fixture("nondecomposable_state.json"))
    V = GMatrix2.from_json(load_fixture("hyp8_V.json"))
    with pytest.raises(NotDecomposableOutput):
        forward_probabilities(tuple(v), V)
    # the exit is a genuine negative square modulus, not round-off
    assert min(sq_modulus(c) for c in apply(V, v)) < -0.4


def test_input_gates(rep_c):
    with pytest.raises(NotDecomposable):
        forward_probabilities((HyperNumber(0.2, 0.7), 1.0), rep_c.V)
    skew = GMatrix2(((HyperNumber(math.sqrt(0.9)), HyperNumber(math.sqrt(0.1))), rep_c.V.entries[1]), "a", "b")
    with pytest.raises(NotGUnitary):
        forward_probabilities((1.0, 0.0), skew)


def test_closed_form_hyp8(rep_c):
    terms = interference_terms((math.sqrt(0.5), math.sqrt(0.5)), rep_c.V)
    assert terms.epsilon == (1, -1)
    assert terms.theta[0] == pytest.approx(terms.theta[1], abs=1e-12)
    assert abs(abs(terms.theta[0]) - math.acosh(1.125)) <= 1e-12
    assert np.allclose(terms.probabilities, (0.95, 0.05), atol=1e-12, rtol=0)


def test_sign_constraint_examples():
    assert abs(sign_constraint_residual(((0.8, 0.2), (0.2, 0.8)), math.acosh(1.125))) <= 1e-12
    assert sign_constraint_residual(((0.5, 0.5), (0.5, 0.5)), 0.0) == 0.0
    r = sign_constraint_residual(((0.9, 0.1), (0.2, 0.8)), 0.3)
    assert abs(r - (math.sqrt(0.08) - math.sqrt(0.18)) * math.cosh(0.3)) <= 1e-12
    assert abs(r) > 0.1


seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


@settings(max_examples=200)
@given(seeds)
def test_forward_matches_closed_form(seed):
    rng = np.random.default_rng(seed)
    V, v = random_g_unitary(rng), random_decomposable_state(rng)
    if not all(in_G_plus_star(V[i, k]) for i in range(2) for k in range(2)):
        return
    terms = interference_terms(tuple(v), V)
    direct = [sq_modulus(c) for c in apply(V, v)]
    scale = max(abs(c.x) + abs(c.y) for c in apply(V, v)) ** 2 + 1
    assert np.allclose(terms.probabilities, direct, atol=1e-9 * scale, rtol=0)
    # unitarity forces equal phases and opposite signs
    assert abs(terms.theta[0] - terms.theta[1]) <= 1e-8 * (1 + abs(terms.theta[0]))
    assert terms.epsilon[0] == -terms.epsilon[1]
    assert abs(sum(direct) - 1) <= 1e-9 * scale


@given(seeds, st.floats(min_value=-3, max_value=3))
def test_common_phase_is_invisible(seed, xi):
    rng = np.random.default_rng(seed)
    space = random_space(rng, double_stochastic=True)
    rep = represent(context_stats(space, "B1"))
    coeffs, _ = decompose(rep.amplitude, rep.a_basis)
    shifted = tuple(c * hexp(xi) for c in coeffs)
    base = forward_probabilities(coeffs, rep.V)
    moved = forward_probabilities(shifted, rep.V, tol=1e-9 * math.cosh(xi) ** 2)
    assert np.allclose(base, moved, atol=1e-9 * math.cosh(xi) ** 2, rtol=0)


@given(seeds)
def test_double_stochastic_closed_form_is_normalized(seed):
    rng = np.random.default_rng(seed)
    p = float(rng.uniform(0.05, 0.95))
    q = float(rng.uniform(0.05, 0.95))
    theta = float(rng.uniform(0, 1))
    fi = ForwardInterference((q, 1 - q), ((p, 1 - p), (1 - p, p)), (1, -1), (theta, theta))
    assert abs(sign_constraint_residual(fi.transition, theta)) <= 1e-12
    assert abs(sum(fi.probabilities) - 1) <= 1e-12
