"""The two-dimensional hyperbolic Hilbert module G^2.

States are coordinate pairs in a *labelled* basis; the G-valued scalar
product refuses to mix labels.  A ``GMatrix2`` stores, row by row, the
coordinates of the images of the source basis vectors, so changing basis
is the row-vector product ``w = v V``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BasisMismatch, NotDecomposable
from .hypernum import ONE, ZERO, HyperNumber, as_hyper, conj, sq_modulus

__all__ = [
    "DEFAULT_TOL",
    "HyperState",
    "GMatrix2",
    "g_inner",
    "norm_defect",
    "is_orthonormal_basis",
    "unitarity_defects",
    "is_g_unitary",
    "apply",
    "is_decomposable",
    "born_probabilities",
    "real_bilinear_form",
    "state",
]

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class HyperState:
    components: tuple[HyperNumber, HyperNumber]
    basis: str = "b"

    def __post_init__(self):
        comps = tuple(as_hyper(c) for c in self.components)
        if len(comps) != 2:
            raise ValueError(f"expected two coordinates, got {len(comps)}")
        object.__setattr__(self, "components", comps)

    def __getitem__(self, i) -> HyperNumber:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def scale(self, a) -> HyperState:
        a = as_hyper(a)
        return HyperState(tuple(a * c for c in self.components), self.basis)

    def __add__(self, other: HyperState) -> HyperState:
        if not isinstance(other, HyperState):
            return NotImplemented
        _same_basis(self, other)
        return HyperState(tuple(u + v for u, v in zip(self, other)), self.basis)

    def is_normalized(self, tol: float = DEFAULT_TOL) -> bool:
        return norm_defect(self) <= tol

    def isclose(self, other: HyperState, tol: float = 1e-12) -> bool:
        return self.basis == other.basis and all(
            u.isclose(v, tol) for u, v in zip(self, other)
        )

    @classmethod
    def basis_vector(cls, index: int, basis: str = "b") -> HyperState:
        comps = [ZERO, ZERO]
        comps[index] = ONE
        return cls(tuple(comps), basis)

    def to_json(self) -> dict:
        return {"basis": self.basis, "components": [c.to_json() for c in self.components]}

    @classmethod
    def from_json(cls, obj) -> HyperState:
        return cls(tuple(HyperNumber.from_json(c) for c in obj["components"]), obj.get("basis", "b"))


@dataclass(frozen=True)
class GMatrix2:
    """2x2 matrix over G; row ``i`` holds the coordinates of the ``i``-th source basis vector.

    ``source``/``target`` are optional basis labels used by :func:`apply`.
    """

    entries: tuple[tuple[HyperNumber, HyperNumber], tuple[HyperNumber, HyperNumber]]
    source: str | None = None
    target: str | None = None

    def __post_init__(self):
        rows = tuple(tuple(as_hyper(v) for v in row) for row in self.entries)
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("GMatrix2 needs a 2x2 array of entries")
        object.__setattr__(self, "entries", rows)

    def __getitem__(self, idx) -> HyperNumber:
        i, k = idx
        return self.entries[i][k]

    def row(self, i: int, basis: str | None = None) -> HyperState:
        return HyperState(self.entries[i], basis or self.target or "b")

    @classmethod
    def identity(cls, source=None, target=None) -> GMatrix2:
        return cls(((ONE, ZERO), (ZERO, ONE)), source, target)

    @classmethod
    def from_rows(cls, r1: HyperState, r2: HyperState, source: str | None = None) -> GMatrix2:
        _same_basis(r1, r2)
        return cls((r1.components, r2.components), source, r1.basis)

    def conj_transpose(self) -> GMatrix2:
        e = self.entries
        return GMatrix2(((conj(e[0][0]), conj(e[1][0])), (conj(e[0][1]), conj(e[1][1]))))

    def __matmul__(self, other: GMatrix2) -> GMatrix2:
        a, b = self.entries, other.entries
        return GMatrix2(tuple(
            tuple(a[i][0] * b[0][k] + a[i][1] * b[1][k] for k in range(2))
            for i in range(2)
        ))

    def to_json(self) -> list:
        return [[v.to_json() for v in row] for row in self.entries]

    @classmethod
    def from_json(cls, obj) -> GMatrix2:
        if isinstance(obj, dict):
            return cls(
                tuple(tuple(HyperNumber.from_json(v) for v in row) for row in obj["entries"]),
                obj.get("source"),
                obj.get("target"),
            )
        return cls(tuple(tuple(HyperNumber.from_json(v) for v in row) for row in obj))


def _same_basis(u: HyperState, v: HyperState):
    if u.basis != v.basis:
        raise BasisMismatch(f"states live in different bases ({u.basis!r} vs {v.basis!r})")


def g_inner(u: HyperState, v: HyperState) -> HyperNumber:
    """G-valued scalar product ``sum_x u(x) conj(v(x))``; linear in ``u``."""
    _same_basis(u, v)
    return u[0] * conj(v[0]) + u[1] * conj(v[1])


def norm_defect(u: HyperState) -> float:
    """Distance of ``(u, u)`` from the real unit 1."""
    s = g_inner(u, u)
    return max(abs(s.x - 1.0), abs(s.y))


def is_orthonormal_basis(f1: HyperState, f2: HyperState, tol: float = DEFAULT_TOL) -> bool:
    cross = g_inner(f1, f2)
    return (
        norm_defect(f1) <= tol
        and norm_defect(f2) <= tol
        and abs(cross.x) <= tol
        and abs(cross.y) <= tol
    )


def unitarity_defects(V: GMatrix2) -> tuple[float, float, float]:
    """Residuals of ``conj(V)^T V = I``: the two column norms minus 1 and the column overlap.

    The first two are real numbers (signed); the overlap is reported as the
    largest absolute component of the G-valued cross term.
    """
    v = V.entries
    col1 = conj(v[0][0]) * v[0][0] + conj(v[1][0]) * v[1][0]
    col2 = conj(v[0][1]) * v[0][1] + conj(v[1][1]) * v[1][1]
    cross = conj(v[0][0]) * v[0][1] + conj(v[1][0]) * v[1][1]
    return col1.x - 1.0, col2.x - 1.0, max(abs(cross.x), abs(cross.y))


def is_g_unitary(V: GMatrix2, tol: float = DEFAULT_TOL) -> bool:
    # conj(V)^T V has a vanishing j-part on the diagonal identically
    d1, d2, cross = unitarity_defects(V)
    return abs(d1) <= tol and abs(d2) <= tol and cross <= tol


def apply(V: GMatrix2, phi: HyperState) -> HyperState:
    """Change of basis: coordinates ``v`` in the source basis -> ``v V`` in the target basis."""
    if V.source is not None and phi.basis != V.source:
        raise BasisMismatch(f"matrix expects {V.source!r} coordinates, state is in {phi.basis!r}")
    v = V.entries
    out = (
        phi[0] * v[0][0] + phi[1] * v[1][0],
        phi[0] * v[0][1] + phi[1] * v[1][1],
    )
    return HyperState(out, V.target or phi.basis)


def is_decomposable(phi: HyperState, tol: float = 0.0) -> bool:
    """All coordinates in the closed positive cone G+ (square modulus ``>= -tol``)."""
    return all(sq_modulus(c) >= -tol for c in phi)


def born_probabilities(phi: HyperState, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    if not is_decomposable(phi):
        raise NotDecomposable(
            "state has a coordinate with negative square modulus "
            f"({', '.join(f'{sq_modulus(c):.6g}' for c in phi)}); Born rule undefined"
        )
    if not phi.is_normalized(tol):
        raise ValueError(f"state is not normalized (defect {norm_defect(phi):.3g})")
    return sq_modulus(phi[0]), sq_modulus(phi[1])


def real_bilinear_form() -> np.ndarray:
    """Gram matrix of ``Re (u, v)`` on the real basis (1,0), (j,0), (0,1), (0,j)."""
    units = (ONE, HyperNumber(0.0, 1.0))
    basis = [
        HyperState((u, ZERO)) if k == 0 else HyperState((ZERO, u))
        for k in range(2) for u in units
    ]
    return np.array([[g_inner(p, q).x for q in basis] for p in basis])


def state(components: Sequence, basis: str = "b") -> HyperState:
    """Convenience constructor accepting reals or HyperNumbers."""
    return HyperState(tuple(as_hyper(c) for c in components), basis)
