"""Coefficients of statistical disturbance and the interference form of total probability.

For each value ``x`` of ``b`` the coefficient ``lambda(x)`` measures how far
``P(b=x | C)`` departs from the classical total-probability sum, in units of
``2 sqrt(prod_y P(a=y | C) P(b=x | a=y))``.  ``|lambda| <= 1`` admits a
trigonometric phase (``lambda = cos theta``), ``|lambda| >= 1`` a hyperbolic
one (``lambda = +-cosh theta``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import MixedClassUnsupported, ZeroDenominator
from .kolmogorov import ContextStatistics

__all__ = [
    "CLASS_TOL",
    "CLASSES",
    "DisturbanceProfile",
    "interference_radicals",
    "lambda_coefficients",
    "classify",
    "phases",
    "reconstruct_total_probability",
    "balance_check",
    "analyze",
]

CLASS_TOL = 1e-9
CLASSES = ("classical", "trigonometric", "hyperbolic", "mixed", "boundary")


def interference_radicals(stats: ContextStatistics) -> tuple[float, float]:
    """``sqrt(p_a(a1) p(x|a1) p_a(a2) p(x|a2))`` for ``x = b1, b2``."""
    pa, t = stats.p_a, stats.transition
    return tuple(math.sqrt(pa[0] * t[0][j] * pa[1] * t[1][j]) for j in range(2))


def lambda_coefficients(stats: ContextStatistics) -> tuple[float, float]:
    pa, pb, t = stats.p_a, stats.p_b, stats.transition
    out = []
    for j, rad in enumerate(interference_radicals(stats)):
        if rad == 0.0:
            raise ZeroDenominator(
                f"interference radical for b{j + 1} vanishes; context degenerate or variables compatible"
            )
        classical = math.fsum((pa[0] * t[0][j], pa[1] * t[1][j]))
        out.append((pb[j] - classical) / (2.0 * rad))
    return tuple(out)


def _level(lam: float, tol: float) -> str:
    m = abs(lam)
    if m > 1.0 + tol:
        return "high"
    if m >= 1.0 - tol:
        return "one"
    return "low"


def classify(lambdas, tol: float = CLASS_TOL) -> str:
    """Context class from the pair of disturbance coefficients.

    ``|lambda|`` within ``tol`` of 1 is its own level, so the overlap of the
    trigonometric and hyperbolic families (``|lambda| = 1``) is reported as
    ``"boundary"`` unless the other coefficient is strictly hyperbolic.
    """
    if all(abs(lam) <= tol for lam in lambdas):
        return "classical"
    levels = {_level(lam, tol) for lam in lambdas}
    if levels == {"low"}:
        return "trigonometric"
    if "high" in levels:
        return "mixed" if "low" in levels else "hyperbolic"
    return "boundary"


@dataclass(frozen=True)
class DisturbanceProfile:
    lambdas: tuple[float, float]
    epsilon: tuple[int, int]
    theta: tuple[float, float]
    context_class: str
    tol: float = CLASS_TOL

    def is_hyperbolic_branch(self, j: int) -> bool:
        """Whether ``theta[j]`` is a hyperbolic phase (``lambda = eps cosh theta``)."""
        return abs(self.lambdas[j]) >= 1.0 - self.tol

    def interference_factor(self, j: int) -> float:
        if self.is_hyperbolic_branch(j):
            return self.epsilon[j] * math.cosh(self.theta[j])
        return math.cos(self.theta[j])

    @property
    def in_hyperbolic_family(self) -> bool:
        """Every ``|lambda| >= 1`` (up to ``tol``)."""
        return all(self.is_hyperbolic_branch(j) for j in range(2))

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lambdas),
            "epsilon": list(self.epsilon),
            "theta": list(self.theta),
            "class": self.context_class,
        }


def _sign(x: float) -> int:
    return 1 if x >= 0.0 else -1


def phases(lambdas, tol: float = CLASS_TOL) -> DisturbanceProfile:
    cls = classify(lambdas, tol)
    if cls == "mixed":
        raise MixedClassUnsupported(
            f"mixed hyper-trigonometric context (lambda = {tuple(lambdas)}) has no representation here"
        )
    thetas = []
    for lam in lambdas:
        m = abs(lam)
        if m >= 1.0 - tol:
            # boundary noise above 1 still gets its exact arccosh so the Born rule stays exact
            thetas.append(math.acosh(m) if m > 1.0 else 0.0)
        else:
            thetas.append(math.acos(lam))
    return DisturbanceProfile(
        tuple(float(v) for v in lambdas),
        tuple(_sign(v) for v in lambdas),
        tuple(thetas),
        cls,
        tol,
    )


def reconstruct_total_probability(stats: ContextStatistics, profile: DisturbanceProfile) -> tuple[float, float]:
    """Evaluate the interference formula of total probability from the phases."""
    pa, t = stats.p_a, stats.transition
    rads = interference_radicals(stats)
    return tuple(
        pa[0] * t[0][j] + pa[1] * t[1][j] + 2.0 * profile.interference_factor(j) * rads[j]
        for j in range(2)
    )


def balance_check(stats: ContextStatistics, lambdas) -> float:
    """Residual of ``sum_x lambda(x) sqrt(p_a(a1) p_a(a2) p(x|a1) p(x|a2))``; zero for consistent data."""
    return math.fsum(lam * rad for lam, rad in zip(lambdas, interference_radicals(stats)))


def analyze(stats: ContextStatistics, tol: float = CLASS_TOL) -> dict:
    """Report fragment: coefficients, class, phases (when representable) and balance residual."""
    lambdas = lambda_coefficients(stats)
    cls = classify(lambdas, tol)
    out = {"lambda": list(lambdas), "class": cls, "balance_residual": balance_check(stats, lambdas)}
    if cls == "mixed":
        out["epsilon"] = [_sign(v) for v in lambdas]
        out["theta"] = None
    else:
        prof = phases(lambdas, tol)
        out["epsilon"] = list(prof.epsilon)
        out["theta"] = list(prof.theta)
    return out
