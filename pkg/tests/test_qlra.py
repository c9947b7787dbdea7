import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperprob.errors import DegenerateContext, NotDoubleStochastic, NotHyperbolicContext, ZeroConditioningContext
from hyperprob.generators import random_space
from hyperprob.hypernum import hexp, sq_modulus
from hyperprob.hyperspace import GMatrix2, HyperState, g_inner, is_g_unitary, is_orthonormal_basis, state
from hyperprob.interference import classify, lambda_coefficients, phases
from hyperprob.kolmogorov import ContextStatistics, context_stats, is_double_stochastic
from hyperprob.qlra import (
    Representation,
    a_basis_vectors,
    a_operator,
    apply_operator,
    b_operator,
    born_residual_a,
    born_residual_b,
    build_a_basis,
    build_amplitude,
    commutator_norm,
    expectation,
    noncommutativity_witness,
    represent,
    shared_basis_check,
)

THETA = math.acosh(1.125)


def test_hyp8_amplitude(stats_c, rep_c):
    phi = build_amplitude(stats_c, phases(lambda_coefficients(stats_c)))
    # sqrt(.5 .8) + e^{j theta} sqrt(.5 .2) and sqrt(.5 .2) - e^{j theta} sqrt(.5 .8), expanded by hand
    s = math.sinh(THETA)
    expect = [
        (math.sqrt(0.4) + 1.125 * math.sqrt(0.1), s * math.sqrt(0.1)),
        (math.sqrt(0.1) - 1.125 * math.sqrt(0.4), -s * math.sqrt(0.4)),
    ]
    for c, (x, y) in zip(phi, expect):
        assert abs(c.x - x) <= 1e-12 and abs(c.y - y) <= 1e-12
    assert abs(phi[0].x - 0.988212) <= 1e-6 and abs(phi[1].y + 0.325960) <= 1e-6
    assert np.allclose([sq_modulus(c) for c in phi], (0.95, 0.05), atol=1e-10, rtol=0)
    assert rep_c.amplitude.isclose(phi)


def test_symmetric_boundary_profile():
    stats = ContextStatistics((0.5, 0.5), (1.0, 0.0), ((0.5, 0.5), (0.5, 0.5)))
    prof = phases(lambda_coefficients(stats))
    assert prof.context_class == "boundary" and prof.theta == (0.0, 0.0)
    phi = build_amplitude(stats, prof)
    assert phi.isclose(state([1, 0]))


def test_basic_context_amplitude(space8):
    rep = represent(context_stats(space8, "B1"))
    assert rep.thetas == (0.0, 0.0)
    assert np.allclose([sq_modulus(c) for c in rep.amplitude], (1.0, 0.0), atol=1e-10, rtol=0)
    assert born_residual_b(rep) <= 1e-10


def test_trigonometric_context_rejected(space8):
    stats = context_stats(space8, "D")
    with pytest.raises(NotHyperbolicContext):
        represent(stats)


def test_residual_zero_on_basis_vector(stats_c, rep_c):
    stats = ContextStatistics((1.0, 0.0), (1.0, 0.0), stats_c.transition)
    rep = Representation(stats, rep_c.profile, state([1, 0]), (0.0, 0.0))
    assert born_residual_b(rep) == 0.0


def test_hyp8_a_basis(stats_c, rep_c):
    (e1, e2), V = build_a_basis(stats_c, rep_c.profile)
    E = hexp(THETA)
    assert e1.isclose(state([math.sqrt(0.8), math.sqrt(0.2)]), 1e-12)
    assert e2.isclose(state([math.sqrt(0.2) * E, -math.sqrt(0.8) * E]), 1e-12)
    assert is_g_unitary(V)
    assert V.source == "a" and V.target == "b"


def test_non_double_stochastic_basis_refused(stats_c, rep_c):
    stats = ContextStatistics(stats_c.p_a, stats_c.p_b, ((0.9, 0.1), (0.2, 0.8)))
    with pytest.raises(NotDoubleStochastic):
        build_a_basis(stats, rep_c.profile)


def test_hyp8_born_rule_in_a(rep_c):
    v1 = g_inner(rep_c.amplitude, rep_c.a_basis[0])
    assert abs(v1.x - math.sqrt(0.5)) <= 1e-12 and abs(v1.y) <= 1e-12
    assert born_residual_a(rep_c) <= 1e-10
    assert born_residual_b(rep_c) <= 1e-10


def test_a_basis_vector_has_residual_zero(stats_c, rep_c):
    stats = ContextStatistics((1.0, 0.0), stats_c.p_b, stats_c.transition)
    rep = Representation(stats, rep_c.profile, rep_c.a_basis[0], rep_c.thetas, rep_c.a_basis, rep_c.V)
    assert born_residual_a(rep) <= 1e-12


def test_misaligned_phases_break_unitarity(stats_c, rep_c):
    basis, V = build_a_basis(stats_c, rep_c.profile, phase_signs=(1, -1))
    assert not is_g_unitary(V)
    assert not is_orthonormal_basis(*basis)
    bad = represent(stats_c, phase_signs=(1, -1))
    assert born_residual_a(bad) > 1e-3
    assert not shared_basis_check(bad, rep_c)


def test_shared_basis(space8, rep_c):
    rep_b1 = represent(context_stats(space8, "B1"))
    assert shared_basis_check(rep_c, rep_b1)
    assert shared_basis_check(rep_c, rep_c)


def test_expectation_examples(space8, rep_c):
    assert abs(expectation(rep_c, (1, -1)) - 0.90) <= 1e-10
    assert abs(expectation(rep_c, (1, 1)) - 1.0) <= 1e-10
    rep_b1 = represent(context_stats(space8, "B1"))
    assert abs(expectation(rep_b1, (0, 1))) <= 1e-10


def test_a_operator_eigenvectors(rep_c):
    A = a_operator(rep_c.a_basis, (2.0, -3.0))
    for e, val in zip(rep_c.a_basis, (2.0, -3.0)):
        assert apply_operator(A, e).isclose(e.scale(val), 1e-12)


def test_noncommutativity(rep_c):
    assert noncommutativity_witness(rep_c) > 0.1
    std = (state([1, 0]), state([0, 1]))
    assert commutator_norm(a_operator(std, (1, -1)), b_operator((1, -1))) == 0.0
    assert noncommutativity_witness(rep_c, a_values=(0.7, 0.7)) <= 1e-12


def test_representation_json(rep_c):
    doc = rep_c.to_json()
    assert {"amplitude", "a_basis", "V", "born_residual_a", "born_residual_b"} <= set(doc)
    assert HyperState.from_json(doc["amplitude"]) == rep_c.amplitude
    assert GMatrix2.from_json(doc["V"]).entries == rep_c.V.entries


def hyperbolic_stats(space):
    for name in space.contexts:
        try:
            s = context_stats(space, name)
        except (DegenerateContext, ZeroConditioningContext):
            continue
        if classify(lambda_coefficients(s)) == "hyperbolic":
            yield s


seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


@settings(max_examples=200)
@given(seeds)
def test_double_stochastic_born_rule_in_both_bases(seed):
    space = random_space(np.random.default_rng(seed), double_stochastic=True)
    for s in hyperbolic_stats(space):
        rep = represent(s)
        assert rep.has_a_basis
        assert born_residual_b(rep) <= 1e-10
        assert born_residual_a(rep) <= 1e-10
        assert all(sq_modulus(c) >= -1e-12 for c in rep.amplitude)
        assert is_g_unitary(rep.V)


@settings(max_examples=200)
@given(seeds)
def test_non_double_stochastic_keeps_b_rule_only(seed):
    space = random_space(np.random.default_rng(seed), double_stochastic=False)
    for s in hyperbolic_stats(space):
        assert not is_double_stochastic(s.transition)
        rep = represent(s)
        assert not rep.has_a_basis and "NotDoubleStochastic" in rep.note
        assert born_residual_b(rep) <= 1e-10
        # phi = u1 e1 + u2 e2 still holds with per-outcome phases
        e1, e2 = a_basis_vectors(s, rep.profile.epsilon, rep.thetas)
        rebuilt = e1.scale(s.u_a[0]) + e2.scale(s.u_a[1])
        assert rebuilt.isclose(rep.amplitude, 1e-12)
        with pytest.raises(NotDoubleStochastic):
            born_residual_a(rep)
