"""Finite contextual Kolmogorov spaces with two dichotomous reference variables.

Every atom carries a value of ``a`` (``"a1"``/``"a2"``), a value of ``b``
(``"b1"``/``"b2"``) and the set of named contexts it belongs to.  Besides
the contexts declared in the document, five names are always available:
``OMEGA`` (the whole space) and the basic contexts ``A1``, ``A2``, ``B1``,
``B2`` (the level sets of the reference variables).
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Union

from .errors import (
    CompatibleVariables,
    DegenerateContext,
    DuplicateAtomId,
    SpaceFormatError,
    UnknownContextName,
    WeightSumError,
    ZeroConditioningContext,
)

__all__ = [
    "A_VALUES",
    "B_VALUES",
    "RESERVED_CONTEXTS",
    "Atom",
    "FiniteContextSpace",
    "ContextStatistics",
    "load_space",
    "load_space_file",
    "hyp8",
    "prob",
    "cond_prob",
    "is_nondegenerate",
    "are_incompatible",
    "cell_masses",
    "context_stats",
    "is_double_stochastic",
]

A_VALUES = ("a1", "a2")
B_VALUES = ("b1", "b2")
RESERVED_CONTEXTS = ("OMEGA", "A1", "A2", "B1", "B2")
WEIGHT_SUM_TOL = 1e-9

Event = Union[str, Iterable[str]]


@dataclass(frozen=True)
class Atom:
    id: str
    weight: float
    a: str
    b: str
    contexts: frozenset[str] = frozenset()

    @property
    def a_index(self) -> int:
        return A_VALUES.index(self.a)

    @property
    def b_index(self) -> int:
        return B_VALUES.index(self.b)


@dataclass(frozen=True)
class FiniteContextSpace:
    atoms: tuple[Atom, ...]
    contexts: tuple[str, ...] = ()
    _by_id: Mapping[str, Atom] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_id", {at.id: at for at in self.atoms})

    @property
    def ids(self) -> frozenset[str]:
        return frozenset(self._by_id)

    def atom(self, atom_id: str) -> Atom:
        return self._by_id[atom_id]

    def context(self, name: str) -> frozenset[str]:
        """Atom ids making up a named context (declared or reserved)."""
        if name == "OMEGA":
            return self.ids
        if name in ("A1", "A2"):
            return frozenset(at.id for at in self.atoms if at.a == name.lower())
        if name in ("B1", "B2"):
            return frozenset(at.id for at in self.atoms if at.b == name.lower())
        if name not in self.contexts:
            raise UnknownContextName(f"unknown context {name!r}; known: {', '.join(self.context_names())}")
        return frozenset(at.id for at in self.atoms if name in at.contexts)

    def context_names(self) -> tuple[str, ...]:
        return tuple(self.contexts) + RESERVED_CONTEXTS

    def event(self, event: Event) -> frozenset[str]:
        if isinstance(event, str):
            return self.context(event)
        ids = frozenset(event)
        unknown = ids - self.ids
        if unknown:
            raise KeyError(f"unknown atom ids {sorted(unknown)}")
        return ids

    def to_document(self) -> dict:
        return {
            "atoms": [
                {"id": at.id, "weight": at.weight, "a": at.a, "b": at.b, "in": sorted(at.contexts)}
                for at in self.atoms
            ],
            "contexts": list(self.contexts),
        }

    def fingerprint(self) -> str:
        blob = json.dumps(self.to_document(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def load_space(document: Mapping) -> FiniteContextSpace:
    """Validate a space document (see README for the schema) and build the space."""
    if not isinstance(document, Mapping) or "atoms" not in document:
        raise SpaceFormatError("space document must be an object with an 'atoms' list")
    declared = tuple(document.get("contexts", ()))
    clash = set(declared) & set(RESERVED_CONTEXTS)
    if clash:
        raise SpaceFormatError(f"context names {sorted(clash)} are reserved")
    if len(set(declared)) != len(declared):
        raise SpaceFormatError("duplicate context names")

    atoms = []
    seen = set()
    for raw in document["atoms"]:
        try:
            atom_id = str(raw["id"])
            weight = float(raw["weight"])
            a, b = raw["a"], raw["b"]
        except (KeyError, TypeError, ValueError) as exc:
            raise SpaceFormatError(f"malformed atom record {raw!r}") from exc
        if atom_id in seen:
            raise DuplicateAtomId(f"atom id {atom_id!r} appears twice")
        seen.add(atom_id)
        if not (math.isfinite(weight) and weight >= 0.0):
            raise SpaceFormatError(f"atom {atom_id!r} has invalid weight {weight!r}")
        if a not in A_VALUES or b not in B_VALUES:
            raise SpaceFormatError(f"atom {atom_id!r}: a must be in {A_VALUES}, b in {B_VALUES}")
        member = frozenset(raw.get("in", ()))
        undeclared = member - set(declared)
        if undeclared:
            raise UnknownContextName(
                f"atom {atom_id!r} refers to undeclared context(s) {sorted(undeclared)}"
            )
        atoms.append(Atom(atom_id, weight, a, b, member))

    if not atoms:
        raise SpaceFormatError("space has no atoms")
    total = math.fsum(at.weight for at in atoms)
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        raise WeightSumError(f"weights sum to {total!r}, expected 1 within {WEIGHT_SUM_TOL:g}")
    return FiniteContextSpace(tuple(atoms), declared)


def load_space_file(path) -> FiniteContextSpace:
    with open(path) as fh:
        return load_space(json.load(fh))


def hyp8() -> FiniteContextSpace:
    """The bundled eight-atom space with a hyperbolic context ``C``."""
    text = resources.files("hyperprob").joinpath("data/hyp8.json").read_text()
    return load_space(json.loads(text))


def hyp8_path() -> Path:
    return Path(str(resources.files("hyperprob").joinpath("data/hyp8.json")))


def prob(space: FiniteContextSpace, event: Event) -> float:
    ids = space.event(event)
    return math.fsum(at.weight for at in space.atoms if at.id in ids)


def cond_prob(space: FiniteContextSpace, A: Event, C: Event) -> float:
    """Bayes conditional probability ``P(A | C) = P(A C) / P(C)``."""
    a_ids, c_ids = space.event(A), space.event(C)
    pc = prob(space, c_ids)
    if pc <= 0.0:
        raise ZeroConditioningContext("conditioning context has probability zero")
    return prob(space, a_ids & c_ids) / pc


def _a_masses(space, c_ids) -> tuple[float, float]:
    return tuple(
        math.fsum(at.weight for at in space.atoms if at.id in c_ids and at.a == av)
        for av in A_VALUES
    )


def is_nondegenerate(space: FiniteContextSpace, C: Event) -> bool:
    c_ids = space.event(C)
    if prob(space, c_ids) <= 0.0:
        raise ZeroConditioningContext("context has probability zero")
    return all(m > 0.0 for m in _a_masses(space, c_ids))


def cell_masses(space: FiniteContextSpace) -> tuple[tuple[float, float], tuple[float, float]]:
    """Joint masses ``P(A_i B_j)``, indexed ``[i][j]``."""
    return tuple(
        tuple(
            math.fsum(at.weight for at in space.atoms if at.a == av and at.b == bv)
            for bv in B_VALUES
        )
        for av in A_VALUES
    )


def are_incompatible(space: FiniteContextSpace) -> bool:
    return all(m > 0.0 for row in cell_masses(space) for m in row)


@dataclass(frozen=True)
class ContextStatistics:
    """Probabilities of one context.

    ``p_a[i] = P(a=a_i | C)``, ``p_b[j] = P(b=b_j | C)`` and
    ``transition[i][j] = P(b=b_j | a=a_i)`` -- the transition matrix is *not*
    conditioned on the context.
    """

    p_a: tuple[float, float]
    p_b: tuple[float, float]
    transition: tuple[tuple[float, float], tuple[float, float]]
    context_name: str = ""
    empirical: bool = False

    @property
    def u_a(self) -> tuple[float, float]:
        return tuple(math.sqrt(p) for p in self.p_a)

    @property
    def u_b(self) -> tuple[float, float]:
        return tuple(math.sqrt(p) for p in self.p_b)

    @property
    def u(self) -> tuple[tuple[float, float], tuple[float, float]]:
        return tuple(tuple(math.sqrt(p) for p in row) for row in self.transition)

    def to_json(self) -> dict:
        return {
            "context": self.context_name,
            "p_a": list(self.p_a),
            "p_b": list(self.p_b),
            "transition": [list(r) for r in self.transition],
            "empirical": self.empirical,
        }

    @classmethod
    def from_json(cls, obj) -> ContextStatistics:
        return cls(
            tuple(obj["p_a"]),
            tuple(obj["p_b"]),
            tuple(tuple(r) for r in obj["transition"]),
            obj.get("context", ""),
            bool(obj.get("empirical", False)),
        )


def context_stats(space: FiniteContextSpace, C: Event) -> ContextStatistics:
    c_ids = space.event(C)
    name = C if isinstance(C, str) else "custom"
    if not is_nondegenerate(space, c_ids):
        raise DegenerateContext(f"context {name!r} gives zero mass to some value of a")
    cells = cell_masses(space)
    if not all(m > 0.0 for row in cells for m in row):
        raise CompatibleVariables(
            "reference variables are not incompatible: "
            f"P(A_i B_j) = {[[round(m, 12) for m in r] for r in cells]}"
        )
    pc = prob(space, c_ids)
    p_a = tuple(m / pc for m in _a_masses(space, c_ids))
    p_b = tuple(
        math.fsum(at.weight for at in space.atoms if at.id in c_ids and at.b == bv) / pc
        for bv in B_VALUES
    )
    transition = tuple(
        tuple(m / math.fsum(row) for m in row) for row in cells
    )
    return ContextStatistics(p_a, p_b, transition, name)


def is_double_stochastic(transition, tol: float = 1e-10) -> bool:
    """Column sums of a row-stochastic 2x2 matrix equal 1."""
    return all(abs(transition[0][j] + transition[1][j] - 1.0) <= tol for j in range(2))
