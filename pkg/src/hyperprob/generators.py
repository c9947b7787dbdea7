"""Random spaces, states and G-unitary matrices for property checks and demos."""
from __future__ import annotations

import numpy as np

from .hyperspace import GMatrix2, HyperState
from .hypernum import ONE, ZERO, HyperNumber, hexp
from .kolmogorov import A_VALUES, B_VALUES, FiniteContextSpace, load_space

__all__ = [
    "random_transition",
    "random_space",
    "random_corpus",
    "random_unit",
    "random_g_unitary",
    "random_decomposable_state",
    "standard_basis",
]


def random_transition(rng: np.random.Generator, double_stochastic: bool, margin: float = 0.05):
    """Row-stochastic 2x2 matrix with entries in ``[margin, 1 - margin]``.

    Non-double-stochastic draws keep the first column sum at least ``margin`` away from 1.
    """
    if double_stochastic:
        p = rng.uniform(margin, 1 - margin)
        return ((p, 1 - p), (1 - p, p))
    while True:
        p11, p21 = rng.uniform(margin, 1 - margin, size=2)
        if abs(p11 + p21 - 1) >= margin:
            return ((p11, 1 - p11), (p21, 1 - p21))


def random_space(
    rng: np.random.Generator,
    double_stochastic: bool | None = None,
    n_contexts: int = 3,
    max_atoms_per_cell: int = 3,
) -> FiniteContextSpace:
    """Incompatible space with random cell masses and ``n_contexts`` random contexts.

    Each context draws its own inclusion probability per (a, b) cell, which
    lets it tilt the conditional distribution of ``b`` far enough from the
    classical mixture to produce hyperbolic contexts regularly.
    """
    if double_stochastic is None:
        double_stochastic = bool(rng.integers(2))
    pi1 = rng.uniform(0.1, 0.9)
    t = random_transition(rng, double_stochastic)
    names = [f"C{k}" for k in range(n_contexts)]
    prefs = rng.uniform(0.0, 1.0, size=(n_contexts, 2, 2))

    atoms = []
    for i, av in enumerate(A_VALUES):
        for j, bv in enumerate(B_VALUES):
            mass = (pi1 if i == 0 else 1 - pi1) * t[i][j]
            k = int(rng.integers(1, max_atoms_per_cell + 1))
            shares = rng.dirichlet(np.ones(k))
            for s, share in enumerate(shares):
                member = [n for c, n in enumerate(names) if rng.uniform() < prefs[c, i, j]]
                atoms.append({
                    "id": f"{av}{bv}_{s}",
                    "weight": float(mass * share),
                    "a": av,
                    "b": bv,
                    "in": member,
                })
    return load_space({"atoms": atoms, "contexts": names})


def random_corpus(seed: int, n_spaces: int, double_stochastic: bool | None = None, **kwargs):
    rng = np.random.default_rng(seed)
    return [random_space(rng, double_stochastic, **kwargs) for _ in range(n_spaces)]


def random_unit(rng: np.random.Generator, scale: float = 2.0) -> HyperNumber:
    """Random element ``+-e^{j theta}`` of the unit circle."""
    sign = 1 if rng.uniform() < 0.5 else -1
    return sign * hexp(float(rng.uniform(-scale, scale)))


def random_g_unitary(rng: np.random.Generator, scale: float = 1.5) -> GMatrix2:
    """Product of random rotations, diagonal unit phases and ``j``-boosts.

    The boost ``[[cosh t, j sinh t], [j sinh t, cosh t]]`` has entries outside
    G+, so the generated group is larger than the positive-entry matrices.
    """
    out = GMatrix2.identity()
    for _ in range(3):
        phi = rng.uniform(0, 2 * np.pi)
        c, s = float(np.cos(phi)), float(np.sin(phi))
        rot = GMatrix2(((HyperNumber(c), HyperNumber(s)), (HyperNumber(-s), HyperNumber(c))))
        diag = GMatrix2(((random_unit(rng, scale), ZERO), (ZERO, random_unit(rng, scale))))
        t = float(rng.uniform(-scale, scale)) * 0.5
        boost = GMatrix2((
            (HyperNumber(np.cosh(t)), HyperNumber(0.0, np.sinh(t))),
            (HyperNumber(0.0, np.sinh(t)), HyperNumber(np.cosh(t))),
        ))
        out = out @ rot @ diag @ boost
    return GMatrix2(out.entries, "a", "b")


def random_decomposable_state(rng: np.random.Generator, basis: str = "a", scale: float = 2.0) -> HyperState:
    """Normalized state with both coordinates in G+* (polar form ``+-sqrt(q) e^{j xi}``)."""
    q = rng.uniform(0.02, 0.98)
    return HyperState(
        (float(np.sqrt(q)) * random_unit(rng, scale), float(np.sqrt(1 - q)) * random_unit(rng, scale)),
        basis,
    )


def standard_basis(basis: str = "b") -> tuple[HyperState, HyperState]:
    return HyperState((ONE, ZERO), basis), HyperState((ZERO, ONE), basis)
