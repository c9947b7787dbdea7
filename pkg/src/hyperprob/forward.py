"""From states to probabilities: decomposition and hyperbolic interference under a change of basis.

Starting from a state with ``a``-coordinates ``v_a`` and a G-unitary matrix
``V`` whose rows are the ``a`` basis vectors in ``b`` coordinates, the
``b``-coordinates are ``v_b = v_a V``.  Writing every coordinate in polar
form ``+-sqrt(p) e^{j phase}`` gives

    p_b(b_k) = p_a(a1) p_1k + p_a(a2) p_2k + 2 eps_k cosh(theta_k) sqrt(p_a(a1) p_1k p_a(a2) p_2k)

with ``eps_1 = -eps_2`` and ``theta_1 = theta_2`` forced by unitarity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import BasisNotOrthonormal, NotDecomposable, NotDecomposableOutput, NotGUnitary
from .hyperspace import (
    DEFAULT_TOL,
    GMatrix2,
    HyperState,
    apply,
    g_inner,
    is_g_unitary,
    is_orthonormal_basis,
    unitarity_defects,
)
from .hypernum import as_hyper, in_G_plus, polar, sq_modulus

__all__ = [
    "ForwardInterference",
    "decompose",
    "forward_probabilities",
    "interference_terms",
    "sign_constraint_residual",
]


def decompose(phi: HyperState, basis: Sequence[HyperState], tol: float = DEFAULT_TOL):
    """Coordinates of ``phi`` in an orthonormal basis and whether they all lie in G+."""
    f1, f2 = basis
    if not is_orthonormal_basis(f1, f2, tol):
        raise BasisNotOrthonormal("decomposition needs an orthonormal basis")
    coeffs = (g_inner(phi, f1), g_inner(phi, f2))
    return coeffs, all(in_G_plus(c) for c in coeffs)


def forward_probabilities(v_a: Sequence, V: GMatrix2, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Born probabilities of ``b`` for the state with ``a``-coordinates ``v_a``.

    Raises :class:`NotDecomposableOutput` when the change of basis leaves the
    positive cone, i.e. the ``b`` probabilities are undefined.
    """
    v_a = tuple(as_hyper(v) for v in v_a)
    if not is_g_unitary(V, tol):
        raise NotGUnitary(f"V is not G-unitary (defects {unitarity_defects(V)})")
    if not all(in_G_plus(v) for v in v_a):
        raise NotDecomposable("input state is not decomposable in the a basis")
    v_b = apply(V, HyperState(v_a, V.source or "a"))
    probs = tuple(sq_modulus(c) for c in v_b)
    if any(p < -tol for p in probs):
        raise NotDecomposableOutput(
            f"b-coordinates {[str(c) for c in v_b]} have square moduli {probs}; "
            "state is not b-decomposable"
        )
    return probs


@dataclass(frozen=True)
class ForwardInterference:
    """Closed-form pieces of the forward interference formula."""

    p_a: tuple[float, float]
    transition: tuple[tuple[float, float], tuple[float, float]]
    epsilon: tuple[int, int]
    theta: tuple[float, float]

    @property
    def probabilities(self) -> tuple[float, float]:
        q, p = self.p_a, self.transition
        return tuple(
            q[0] * p[0][k] + q[1] * p[1][k]
            + 2.0 * self.epsilon[k] * math.cosh(self.theta[k]) * math.sqrt(q[0] * p[0][k] * q[1] * p[1][k])
            for k in range(2)
        )


def interference_terms(v_a: Sequence, V: GMatrix2) -> ForwardInterference:
    """Polar decomposition of the inputs; all coordinates and entries must lie in G+*."""
    pa = [polar(as_hyper(v)) for v in v_a]
    pv = [[polar(V[i, k]) for k in range(2)] for i in range(2)]
    eps, theta = [], []
    for k in range(2):
        eps.append(pa[0].sign * pa[1].sign * pv[0][k].sign * pv[1][k].sign)
        theta.append((pa[0].theta + pv[0][k].theta) - (pa[1].theta + pv[1][k].theta))
    return ForwardInterference(
        tuple(p.modulus ** 2 for p in pa),
        tuple(tuple(pv[i][k].modulus ** 2 for k in range(2)) for i in range(2)),
        tuple(eps),
        tuple(theta),
    )


def sign_constraint_residual(transition, theta) -> float:
    """``sqrt(p12 p22) cosh(theta_2) - sqrt(p11 p21) cosh(theta_1)``.

    Vanishes exactly when the normalization of the output is compatible with
    opposite interference signs; ``theta`` is a common phase or a pair.
    """
    if isinstance(theta, (int, float)):
        theta = (theta, theta)
    p = transition
    return (
        math.sqrt(p[0][1] * p[1][1]) * math.cosh(theta[1])
        - math.sqrt(p[0][0] * p[1][0]) * math.cosh(theta[0])
    )
