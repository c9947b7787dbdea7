"""Quantum-like representation of hyperbolic contexts.

A context whose disturbance coefficients all satisfy ``|lambda| >= 1`` is
mapped to a normalized state of G^2 (coordinates in the ``b`` basis)

    phi(b_k) = sqrt(p_a(a1) p(b_k|a1)) + eps_k e^{j theta_k} sqrt(p_a(a2) p(b_k|a2)),

whose square moduli return ``P(b=b_k | C)``.  When the transition matrix is
double stochastic the phases can be aligned (``theta_1 = theta_2``) and the
vectors

    e1 = (u11, u12),   e2 = (eps_1 e^{j theta} u21, eps_2 e^{j theta} u22)

form an orthonormal ``a`` basis in which the Born rule also reproduces
``P(a=a_i | C)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotDoubleStochastic, NotHyperbolicContext
from .hyperspace import (
    DEFAULT_TOL,
    GMatrix2,
    HyperState,
    g_inner,
    is_decomposable,
    is_orthonormal_basis,
)
from .hypernum import ZERO, HyperNumber, hexp, sq_modulus
from .interference import DisturbanceProfile, lambda_coefficients, phases
from .kolmogorov import ContextStatistics, is_double_stochastic

__all__ = [
    "Representation",
    "build_amplitude",
    "a_basis_vectors",
    "build_a_basis",
    "represent",
    "born_residual_b",
    "born_residual_a",
    "shared_basis_check",
    "b_operator",
    "a_operator",
    "apply_operator",
    "expectation",
    "commutator_norm",
    "noncommutativity_witness",
]


@dataclass(frozen=True)
class Representation:
    stats: ContextStatistics
    profile: DisturbanceProfile
    amplitude: HyperState
    thetas: tuple[float, float]
    a_basis: tuple[HyperState, HyperState] | None = None
    V: GMatrix2 | None = None
    note: str = ""

    @property
    def has_a_basis(self) -> bool:
        return self.a_basis is not None

    def to_json(self) -> dict:
        out = {
            "amplitude": self.amplitude.to_json(),
            "thetas_used": list(self.thetas),
            "born_residual_b": born_residual_b(self),
        }
        if self.a_basis is not None:
            out["a_basis"] = [e.to_json() for e in self.a_basis]
            out["V"] = self.V.to_json()
            out["born_residual_a"] = born_residual_a(self)
        else:
            out["a_basis"] = None
            out["V"] = None
            out["born_residual_a"] = None
        if self.note:
            out["note"] = self.note
        return out


def _require_hyperbolic(profile: DisturbanceProfile):
    if profile.context_class not in ("hyperbolic", "boundary") or not profile.in_hyperbolic_family:
        raise NotHyperbolicContext(
            f"context is {profile.context_class} (lambda = {list(profile.lambdas)}); "
            "a hyperbolic amplitude needs |lambda| >= 1 for both values of b"
        )


def _amplitude(stats: ContextStatistics, epsilon, thetas) -> HyperState:
    ua, u = stats.u_a, stats.u
    comps = tuple(
        ua[0] * u[0][k] + (epsilon[k] * ua[1] * u[1][k]) * hexp(thetas[k])
        for k in range(2)
    )
    return HyperState(comps, "b")


def build_amplitude(stats: ContextStatistics, profile: DisturbanceProfile) -> HyperState:
    """Hyperbolic amplitude of the context in the ``b`` basis, using the profile's own phases."""
    _require_hyperbolic(profile)
    return _amplitude(stats, profile.epsilon, profile.theta)


def a_basis_vectors(stats: ContextStatistics, epsilon, thetas) -> tuple[HyperState, HyperState]:
    """Candidate ``a`` basis from the transition roots; orthonormal only in the double stochastic case."""
    u = stats.u
    e1 = HyperState((HyperNumber(u[0][0]), HyperNumber(u[0][1])), "b")
    e2 = HyperState(tuple((epsilon[k] * u[1][k]) * hexp(thetas[k]) for k in range(2)), "b")
    return e1, e2


def _aligned_thetas(profile: DisturbanceProfile, phase_signs) -> tuple[float, float]:
    theta = profile.theta[0]
    return tuple(s * theta for s in phase_signs)


def build_a_basis(
    stats: ContextStatistics,
    profile: DisturbanceProfile,
    phase_signs=(1, 1),
    tol: float = DEFAULT_TOL,
):
    """Orthonormal ``a`` basis and the transition matrix ``V`` (rows = basis vectors).

    ``phase_signs`` picks the branch of ``theta_2 = +-theta_1``; only ``(s, s)``
    keeps ``V`` G-unitary, anything else is a deliberate misalignment.
    """
    if not is_double_stochastic(stats.transition, tol):
        cols = [stats.transition[0][j] + stats.transition[1][j] for j in range(2)]
        raise NotDoubleStochastic(
            f"transition matrix column sums are {cols}; the a-variable Born rule is unavailable"
        )
    _require_hyperbolic(profile)
    e1, e2 = a_basis_vectors(stats, profile.epsilon, _aligned_thetas(profile, phase_signs))
    return (e1, e2), GMatrix2.from_rows(e1, e2, source="a")


def represent(
    stats: ContextStatistics,
    profile: DisturbanceProfile | None = None,
    phase_signs=(1, 1),
    tol: float = DEFAULT_TOL,
) -> Representation:
    """Full representation of a hyperbolic context.

    With a double stochastic transition matrix the amplitude is built with the
    aligned phases so that it expands in the ``a`` basis; otherwise each
    value of ``b`` keeps its own phase and no ``a`` basis is produced.
    """
    if profile is None:
        profile = phases(lambda_coefficients(stats))
    _require_hyperbolic(profile)
    if is_double_stochastic(stats.transition, tol):
        thetas = _aligned_thetas(profile, phase_signs)
        basis, V = build_a_basis(stats, profile, phase_signs, tol)
        return Representation(stats, profile, _amplitude(stats, profile.epsilon, thetas), thetas, basis, V)
    thetas = tuple(s * th for s, th in zip(phase_signs, profile.theta))
    return Representation(
        stats,
        profile,
        _amplitude(stats, profile.epsilon, thetas),
        thetas,
        note="NotDoubleStochastic: a-basis omitted",
    )


def born_residual_b(rep: Representation) -> float:
    return max(
        abs(sq_modulus(g_inner(rep.amplitude, HyperState.basis_vector(k, "b"))) - rep.stats.p_b[k])
        for k in range(2)
    )


def born_residual_a(rep: Representation) -> float:
    if rep.a_basis is None:
        raise NotDoubleStochastic("representation has no a-basis")
    return max(
        abs(sq_modulus(g_inner(rep.amplitude, e)) - rep.stats.p_a[i])
        for i, e in enumerate(rep.a_basis)
    )


def shared_basis_check(rep_C: Representation, rep_C0: Representation, tol: float = DEFAULT_TOL) -> bool:
    """Can ``phi_C`` be expanded in the ``a`` basis of ``C0`` with ``|v_j|^2 = P(a=a_j | C)``?"""
    if rep_C.a_basis is None or rep_C0.a_basis is None:
        return False
    basis = rep_C0.a_basis
    if not is_orthonormal_basis(*basis, tol=tol):
        return False
    # the expansion coefficients against an orthonormal basis are the scalar products
    coeffs = [g_inner(rep_C.amplitude, e) for e in basis]
    expanded = basis[0].scale(coeffs[0]) + basis[1].scale(coeffs[1])
    if not expanded.isclose(rep_C.amplitude, tol):
        return False
    if any(abs(sq_modulus(v) - p) > tol for v, p in zip(coeffs, rep_C.stats.p_a)):
        return False
    d_C = rep_C.thetas[0] - rep_C.thetas[1]
    d_C0 = rep_C0.thetas[0] - rep_C0.thetas[1]
    return abs(d_C - d_C0) <= tol


# Operators are 2x2 G-matrices acting on *column* coordinate vectors in the b basis.

def b_operator(values) -> GMatrix2:
    """Multiplication operator ``(b phi)(x) = x phi(x)``."""
    return GMatrix2(((HyperNumber(values[0]), ZERO), (ZERO, HyperNumber(values[1]))))


def a_operator(basis: tuple[HyperState, HyperState], values) -> GMatrix2:
    """``sum_i a_i |e_i><e_i|`` written in the b coordinates of the basis vectors."""
    return GMatrix2(tuple(
        tuple(
            values[0] * (basis[0][k] * basis[0][l].conj()) + values[1] * (basis[1][k] * basis[1][l].conj())
            for l in range(2)
        )
        for k in range(2)
    ))


def apply_operator(op: GMatrix2, phi: HyperState) -> HyperState:
    e = op.entries
    return HyperState(tuple(e[k][0] * phi[0] + e[k][1] * phi[1] for k in range(2)), phi.basis)


def expectation(rep: Representation, values) -> float:
    """``E(b | C) = (b phi, phi)`` evaluated as a G-valued scalar product."""
    phi = rep.amplitude
    # light-cone components of exact zero-probability outcomes come out as -1e-17
    if not is_decomposable(phi, DEFAULT_TOL):
        raise ValueError("expectation needs a decomposable amplitude")
    val = g_inner(apply_operator(b_operator(values), phi), phi)
    if abs(val.y) > 1e-9 * max(1.0, abs(val.x)):
        raise ArithmeticError(f"(b phi, phi) = {val} is not real")
    return val.x


def noncommutativity_witness(rep: Representation, a_values=(1.0, -1.0), b_values=(1.0, -1.0)) -> float:
    """Frobenius norm (over real components) of ``[a, b]`` in the b basis."""
    if rep.a_basis is None:
        raise NotDoubleStochastic("representation has no a-basis")
    return commutator_norm(a_operator(rep.a_basis, a_values), b_operator(b_values))


def commutator_norm(A: GMatrix2, B: GMatrix2) -> float:
    AB, BA = A @ B, B @ A
    diff = [(AB[i, k] - BA[i, k]) for i in range(2) for k in range(2)]
    return float(np.sqrt(sum(d.x ** 2 + d.y ** 2 for d in diff)))
