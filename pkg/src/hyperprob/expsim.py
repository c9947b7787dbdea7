"""Monte-Carlo two-slit-type experiments on a finite context space.

Draws are iid atoms, proportional to weight.  Everything the estimator needs
is the 2x2x2 table of counts over (a value, b value, inside the context):
``p_a`` and ``p_b`` come from the draws inside the context, the transition
matrix from all draws (the "one slit closed" runs are not conditioned on
the context).

Random streams
--------------
All randomness comes from Philox (counter-based) generators keyed by
``SeedSequence(seed, spawn_key=(stream, index))``:

* stream ``SAMPLE_STREAM``, index ``b``: block ``b`` of ``BLOCK_SIZE`` trials;
* stream ``BOOTSTRAP_STREAM``, index 0: bootstrap resampling.

Shards own contiguous ranges of blocks, so a run gives bit-identical counts
for any number of shards.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import InsufficientData
from .interference import CLASS_TOL, lambda_coefficients
from .kolmogorov import ContextStatistics, FiniteContextSpace

__all__ = [
    "SAMPLE_STREAM",
    "BOOTSTRAP_STREAM",
    "BLOCK_SIZE",
    "TrialCounts",
    "sample",
    "sample_shard",
    "exact_counts",
    "estimate_stats",
    "lambda_from_cells",
    "RegimeReport",
    "detect_regime",
    "convergence_report",
    "spread_slope",
    "simulate",
]

SAMPLE_STREAM = 0
BOOTSTRAP_STREAM = 1
BLOCK_SIZE = 1 << 16


def _generator(seed: int, stream: int, index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(stream, index))
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class TrialCounts:
    """Counts of one (possibly sharded) run.

    ``cells[i, j, c]`` counts draws with ``a = a_{i+1}``, ``b = b_{j+1}`` and
    context membership ``c`` (1 = inside).  In exact mode ``n_total`` is
    ``None`` and the arrays hold probabilities instead of counts.
    """

    context: str
    space_fingerprint: str
    seed: int | None
    n_total: int | None
    atom_ids: tuple[str, ...]
    atom_counts: np.ndarray = field(repr=False)
    cells: np.ndarray = field(repr=False)

    @property
    def exact(self) -> bool:
        return self.n_total is None

    @property
    def n_context(self):
        return self.cells[:, :, 1].sum()

    @property
    def n_a_context(self):
        return self.cells[:, :, 1].sum(axis=1)

    @property
    def n_b_context(self):
        return self.cells[:, :, 1].sum(axis=0)

    @property
    def joint_ab(self):
        """Counts of ``b = b_j`` and ``a = a_i`` over all draws, ``[i, j]``."""
        return self.cells.sum(axis=2)

    @property
    def n_a(self):
        return self.joint_ab.sum(axis=1)

    def merge(self, other: TrialCounts) -> TrialCounts:
        if (self.context, self.space_fingerprint, self.seed, self.atom_ids) != (
            other.context, other.space_fingerprint, other.seed, other.atom_ids
        ):
            raise ValueError("can only merge counts of the same space, context and seed")
        if self.exact or other.exact:
            raise ValueError("exact-mode tables cannot be merged")
        return TrialCounts(
            self.context,
            self.space_fingerprint,
            self.seed,
            self.n_total + other.n_total,
            self.atom_ids,
            self.atom_counts + other.atom_counts,
            self.cells + other.cells,
        )

    def to_json(self) -> dict:
        cast = float if self.exact else int
        return {
            "context": self.context,
            "space_fingerprint": self.space_fingerprint,
            "seed": self.seed,
            "n_total": self.n_total,
            "n_context": cast(self.n_context),
            "atom_counts": {k: cast(v) for k, v in zip(self.atom_ids, self.atom_counts)},
            "cells": [[[cast(v) for v in row] for row in plane] for plane in self.cells],
        }


def _layout(space: FiniteContextSpace, context: str):
    members = space.context(context)
    idx = np.array([[at.a_index, at.b_index, int(at.id in members)] for at in space.atoms])
    w = np.array([at.weight for at in space.atoms], dtype=float)
    return idx, w / w.sum()


def _cells(idx: np.ndarray, atom_counts: np.ndarray) -> np.ndarray:
    cells = np.zeros((2, 2, 2), dtype=atom_counts.dtype)
    np.add.at(cells, (idx[:, 0], idx[:, 1], idx[:, 2]), atom_counts)
    return cells


def _block_sizes(n: int) -> list[int]:
    full, rest = divmod(n, BLOCK_SIZE)
    return [BLOCK_SIZE] * full + ([rest] if rest else [])


def sample_shard(space: FiniteContextSpace, context: str, n: int, seed: int, shard: int, shards: int) -> TrialCounts:
    """Counts for the blocks owned by one shard of an ``n``-trial run."""
    if n < 1:
        raise ValueError("need at least one trial")
    if not 0 <= shard < shards:
        raise ValueError(f"shard {shard} out of range for {shards} shards")
    idx, p = _layout(space, context)
    sizes = _block_sizes(n)
    lo, hi = shard * len(sizes) // shards, (shard + 1) * len(sizes) // shards
    counts = np.zeros(len(p), dtype=np.int64)
    for b in range(lo, hi):
        counts += _generator(seed, SAMPLE_STREAM, b).multinomial(sizes[b], p)
    return TrialCounts(
        context,
        space.fingerprint(),
        seed,
        int(sum(sizes[lo:hi])),
        tuple(at.id for at in space.atoms),
        counts,
        _cells(idx, counts),
    )


def sample(
    space: FiniteContextSpace,
    context: str,
    n: int,
    seed: int,
    shards: int = 1,
    workers: int | None = None,
) -> TrialCounts:
    """Draw ``n`` atoms; the result does not depend on ``shards`` or ``workers``."""
    shards = max(1, min(int(shards), len(_block_sizes(n))))
    if shards == 1:
        return sample_shard(space, context, n, seed, 0, 1)
    with ThreadPoolExecutor(max_workers=workers or shards) as pool:
        parts = list(pool.map(lambda s: sample_shard(space, context, n, seed, s, shards), range(shards)))
    out = parts[0]
    for part in parts[1:]:
        out = out.merge(part)
    return out


def exact_counts(space: FiniteContextSpace, context: str) -> TrialCounts:
    """The infinite-sample limit: atom weights in place of counts."""
    idx, p = _layout(space, context)
    return TrialCounts(
        context, space.fingerprint(), None, None, tuple(at.id for at in space.atoms), p, _cells(idx, p)
    )


def estimate_stats(counts: TrialCounts) -> ContextStatistics:
    """Frequency estimates of the context statistics."""
    n_ctx = counts.n_context
    n_a_ctx = counts.n_a_context
    joint = counts.joint_ab
    if n_ctx <= 0 or np.any(n_a_ctx <= 0):
        raise InsufficientData(f"context {counts.context!r}: some value of a never observed inside the context")
    if np.any(joint <= 0):
        raise InsufficientData("some (a, b) pair never observed; transition probabilities degenerate")
    rows = joint.sum(axis=1)
    return ContextStatistics(
        tuple(float(v) for v in n_a_ctx / n_ctx),
        tuple(float(v) for v in counts.n_b_context / n_ctx),
        tuple(tuple(float(v) for v in joint[i] / rows[i]) for i in range(2)),
        counts.context,
        empirical=not counts.exact,
    )


def lambda_from_cells(cells: np.ndarray) -> np.ndarray:
    """Vectorized disturbance coefficients for tables of shape ``(..., 2, 2, 2)``; NaN where undefined."""
    cells = np.asarray(cells, dtype=float)
    inside = cells[..., 1]
    n_ctx = inside.sum(axis=(-2, -1))[..., None]
    joint = cells.sum(axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        pa = inside.sum(axis=-1) / n_ctx
        pb = inside.sum(axis=-2) / n_ctx
        t = joint / joint.sum(axis=-1, keepdims=True)
        classical = pa[..., 0, None] * t[..., 0, :] + pa[..., 1, None] * t[..., 1, :]
        rad = np.sqrt(pa[..., 0, None] * t[..., 0, :] * pa[..., 1, None] * t[..., 1, :])
        lam = (pb - classical) / (2.0 * rad)
    lam[~np.isfinite(lam)] = np.nan
    return lam


def _stderr_bootstrap(counts: TrialCounts, n_boot: int) -> np.ndarray:
    rng = _generator(counts.seed, BOOTSTRAP_STREAM, 0)
    n = counts.n_total
    probs = counts.cells.ravel() / n
    boot = rng.multinomial(n, probs, size=n_boot).reshape(n_boot, 2, 2, 2)
    lam = lambda_from_cells(boot)
    valid = np.isfinite(lam)
    se = np.full(2, np.inf)
    for j in range(2):
        # too many undefined resamples means the estimate itself is unreliable
        if valid[:, j].sum() >= max(2, n_boot // 2):
            se[j] = np.std(lam[valid[:, j], j], ddof=1)
    return se


def _stderr_delta(counts: TrialCounts, step: float = 1e-6) -> np.ndarray:
    n = counts.n_total
    p = counts.cells.ravel() / n
    grads = np.zeros((2, p.size))
    for k in range(p.size):
        up, down = p.copy(), p.copy()
        up[k] += step
        down[k] = max(down[k] - step, 0.0)
        h = up[k] - down[k]
        grads[:, k] = (lambda_from_cells(up.reshape(2, 2, 2)) - lambda_from_cells(down.reshape(2, 2, 2))) / h
    cov = (np.diag(p) - np.outer(p, p)) / n
    var = np.einsum("ik,kl,il->i", grads, cov, grads)
    return np.sqrt(np.maximum(var, 0.0))


def _outcome_verdict(lam: float, se: float, z: float) -> str:
    m = abs(lam)
    if not np.isfinite(se):
        return "inconclusive"
    # the absolute floor keeps exact zeros (e.g. the whole space) from flipping on round-off
    if m <= z * se + CLASS_TOL and m + z * se < 1.0:
        return "classical"
    if m - 1.0 > z * se:
        return "hyperbolic"
    if 1.0 - m > z * se and m > z * se:
        return "trigonometric"
    return "inconclusive"


def _overall_verdict(per_outcome) -> str:
    kinds = set(per_outcome)
    if kinds == {"hyperbolic"}:
        return "hyperbolic"
    if kinds == {"classical"}:
        return "classical"
    if kinds <= {"classical", "trigonometric"}:
        return "trigonometric"
    return "inconclusive"


@dataclass(frozen=True)
class RegimeReport:
    stats: ContextStatistics
    lambdas: tuple[float, float]
    stderr: tuple[float, float]
    outcome_verdicts: tuple[str, str]
    verdict: str
    method: str
    n_total: int | None
    n_context: float

    def to_json(self) -> dict:
        return {
            "empirical_stats": self.stats.to_json(),
            "lambda_hat": list(self.lambdas),
            "stderr": [None if not math.isfinite(s) else s for s in self.stderr],
            "outcome_verdicts": list(self.outcome_verdicts),
            "verdict": self.verdict,
            "method": self.method,
            "n_total": self.n_total,
            "n_context": self.n_context,
        }


def detect_regime(counts: TrialCounts, method: str = "bootstrap", n_boot: int = 200, z: float = 2.0) -> RegimeReport:
    """Estimate the disturbance coefficients with error bars and classify the regime.

    A value of ``b`` is called hyperbolic when ``|lambda| - 1 > z * stderr``,
    trigonometric when ``1 - |lambda| > z * stderr`` and ``|lambda| > z * stderr``,
    classical when the band around ``lambda`` contains 0 but not ``+-1``;
    anything else is inconclusive.
    """
    stats = estimate_stats(counts)
    lambdas = lambda_coefficients(stats)
    if counts.exact:
        se, method = np.zeros(2), "exact"
    elif method == "bootstrap":
        se = _stderr_bootstrap(counts, n_boot)
    elif method == "delta":
        se = _stderr_delta(counts)
    else:
        raise ValueError(f"unknown error-bar method {method!r}")
    per = tuple(_outcome_verdict(lam, s, z) for lam, s in zip(lambdas, se))
    n_ctx = counts.n_context
    return RegimeReport(
        stats,
        tuple(lambdas),
        tuple(float(s) for s in se),
        per,
        _overall_verdict(per),
        method,
        counts.n_total,
        float(n_ctx) if counts.exact else int(n_ctx),
    )


def convergence_report(space: FiniteContextSpace, context: str, n_grid, seeds) -> list[dict]:
    """Mean and spread (sample std over seeds) of the estimated coefficients for each ``n``.

    ``None`` in ``n_grid`` stands for the exact (infinite-sample) row.
    """
    rows = []
    for n in n_grid:
        if n is None:
            lam = np.array([lambda_coefficients(estimate_stats(exact_counts(space, context)))])
            failures = 0
        else:
            lam, failures = [], 0
            for seed in seeds:
                try:
                    lam.append(lambda_coefficients(estimate_stats(sample(space, context, n, seed))))
                except InsufficientData:
                    failures += 1
            lam = np.array(lam)
        spread = lam.std(axis=0, ddof=1) if len(lam) > 1 else np.zeros(2)
        rows.append({
            "n": n,
            "n_seeds": int(len(lam)),
            "failures": failures,
            "mean_lambda": [float(v) for v in lam.mean(axis=0)],
            "spread": [float(v) for v in spread],
        })
    return rows


def spread_slope(rows, outcome: int = 0) -> float:
    """Least-squares slope of log(spread) against log(n) over the finite-n rows."""
    pts = [(r["n"], r["spread"][outcome]) for r in rows if r["n"] is not None and r["spread"][outcome] > 0]
    if len(pts) < 2:
        raise ValueError("need at least two finite rows with positive spread")
    x, y = np.log10([p[0] for p in pts]), np.log10([p[1] for p in pts])
    return float(np.polyfit(x, y, 1)[0])


def simulate(
    space: FiniteContextSpace,
    context: str,
    n: int,
    seed: int,
    shards: int = 1,
    n_boot: int = 200,
) -> dict:
    """One full run: counts, empirical statistics and regime verdict as a JSON-ready dict."""
    counts = sample(space, context, n, seed, shards)
    report = detect_regime(counts, "bootstrap" if n_boot > 0 else "delta", n_boot)
    return {"counts": counts.to_json(), "regime": report.to_json()}
