"""Command-line frontend.

Exit codes: 0 success, 1 an invariant failed (``verify``), 2 invalid input,
3 the requested object does not exist for valid input (non-hyperbolic
context, non-decomposable output, too little data).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import (
    BasisMismatch,
    CompatibleVariables,
    DegenerateContext,
    HyperprobError,
    InsufficientData,
    MixedClassUnsupported,
    NotDecomposable,
    NotDecomposableOutput,
    NotGUnitary,
    NotHyperbolicContext,
    NotInGroup,
    SpaceFormatError,
    UnknownContextName,
    ZeroConditioningContext,
    ZeroDenominator,
)
from .expsim import simulate
from .forward import decompose, forward_probabilities, interference_terms
from .hyperspace import GMatrix2, HyperState, unitarity_defects
from .interference import analyze, balance_check, lambda_coefficients, phases
from .kolmogorov import RESERVED_CONTEXTS, context_stats, is_double_stochastic, load_space_file
from .qlra import born_residual_a, born_residual_b, represent

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_UNDEFINED = 0, 1, 2, 3

_INVALID = (
    SpaceFormatError,
    UnknownContextName,
    ZeroConditioningContext,
    DegenerateContext,
    CompatibleVariables,
    ZeroDenominator,
    BasisMismatch,
    NotGUnitary,
    OSError,
    json.JSONDecodeError,
    KeyError,
    TypeError,
    ValueError,
)
_UNDEFINED = (NotHyperbolicContext, MixedClassUnsupported, NotDecomposable, InsufficientData, NotInGroup)


class CommandError(Exception):
    def __init__(self, code: int, exc: BaseException):
        super().__init__(f"{type(exc).__name__}: {exc}")
        self.code = code


def dumps(report: dict) -> str:
    """Canonical JSON; parsing and re-emitting gives the same bytes."""
    return json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else k)
    elif isinstance(obj, list) and obj and all(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, obj


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, list):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return "-" if value is None else str(value)


def render_text(report: dict) -> str:
    rows = list(_flatten(report))
    width = max(len(k) for k, _ in rows)
    return "".join(f"{k:<{width}}  {_fmt(v)}\n" for k, v in rows)


def _report(command: str, body: dict) -> dict:
    return {"command": command, "version": __version__, **body}


def _load(path):
    try:
        return load_space_file(path)
    except _INVALID as exc:
        raise CommandError(EXIT_INVALID, exc) from exc


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CommandError(EXIT_INVALID, exc) from exc


def cmd_classify(args) -> tuple[dict, int]:
    space = _load(args.space)
    stats = context_stats(space, args.context)
    return _report("classify", {
        "space_fingerprint": space.fingerprint(),
        "context": args.context,
        "stats": stats.to_json(),
        "profile": analyze(stats, args.tolerance),
    }), EXIT_OK


def cmd_represent(args) -> tuple[dict, int]:
    space = _load(args.space)
    stats = context_stats(space, args.context)
    lambdas = lambda_coefficients(stats)
    try:
        profile = phases(lambdas, args.tolerance)
        rep = represent(stats, profile, tol=args.tolerance)
    except (NotHyperbolicContext, MixedClassUnsupported) as exc:
        raise CommandError(
            EXIT_UNDEFINED, NotHyperbolicContext(f"context {args.context!r} has lambda = {list(lambdas)}: {exc}")
        ) from exc
    return _report("represent", {
        "space_fingerprint": space.fingerprint(),
        "context": args.context,
        "stats": stats.to_json(),
        "profile": profile.to_json(),
        "representation": rep.to_json(),
    }), EXIT_OK


def _mark(ok: bool) -> str:
    return "pass" if ok else "fail"


def verify_context(space, name: str, tol: float) -> dict:
    """Invariant table for one context; checks that do not apply are ``"n/a"``."""
    try:
        stats = context_stats(space, name)
        lambdas = lambda_coefficients(stats)
    except (DegenerateContext, ZeroConditioningContext, CompatibleVariables, ZeroDenominator) as exc:
        return {"context": name, "skipped": f"{type(exc).__name__}: {exc}"}
    ds = is_double_stochastic(stats.transition, tol)
    row = {
        "context": name,
        "lambda": list(lambdas),
        "double_stochastic": ds,
        "balance": _mark(abs(balance_check(stats, lambdas)) <= tol),
        "lambda_symmetry": _mark(abs(abs(lambdas[0]) - abs(lambdas[1])) <= tol) if ds else "n/a",
    }
    try:
        profile = phases(lambdas, tol)
    except MixedClassUnsupported:
        row.update({"class": "mixed", "epsilon_sum": "n/a", "born_b": "n/a", "born_a": "n/a", "round_trip": "n/a"})
        return row
    row["class"] = profile.context_class
    if not profile.in_hyperbolic_family or profile.context_class not in ("hyperbolic", "boundary"):
        row.update({"epsilon_sum": "n/a", "born_b": "n/a", "born_a": "n/a", "round_trip": "n/a"})
        return row
    row["epsilon_sum"] = _mark(profile.epsilon[0] + profile.epsilon[1] == 0)
    rep = represent(stats, profile, tol=tol)
    row["born_b"] = _mark(born_residual_b(rep) <= tol)
    if not rep.has_a_basis:
        row["born_a"] = row["round_trip"] = "n/a"
        return row
    row["born_a"] = _mark(born_residual_a(rep) <= tol)
    try:
        coeffs, ok = decompose(rep.amplitude, rep.a_basis, tol)
        probs = forward_probabilities(coeffs, rep.V, tol) if ok else None
    except HyperprobError:
        probs = None
    row["round_trip"] = _mark(probs is not None and max(abs(p - q) for p, q in zip(probs, stats.p_b)) <= tol)
    return row


_CHECKS = ("balance", "lambda_symmetry", "epsilon_sum", "born_b", "born_a", "round_trip")


def cmd_verify(args) -> tuple[dict, int]:
    space = _load(args.space)
    names = list(space.contexts) + [n for n in ("OMEGA", "B1", "B2") if n in RESERVED_CONTEXTS]
    rows = [verify_context(space, n, args.tolerance) for n in names]
    ok = all(r.get(c) != "fail" for r in rows for c in _CHECKS)
    return _report("verify", {
        "space_fingerprint": space.fingerprint(),
        "contexts": rows,
        "all_pass": ok,
    }), EXIT_OK if ok else EXIT_FAILED


def cmd_forward(args) -> tuple[dict, int]:
    try:
        state = HyperState.from_json(_read_json(args.state))
        V = GMatrix2.from_json(_read_json(args.matrix))
    except (KeyError, TypeError, ValueError) as exc:
        raise CommandError(EXIT_INVALID, exc) from exc
    if V.source is None:
        V = GMatrix2(V.entries, state.basis, V.target)
    probs = forward_probabilities(tuple(state), V, args.tolerance)
    body = {
        "input": state.to_json(),
        "unitarity_defects": list(unitarity_defects(V)),
        "probabilities": list(probs),
    }
    try:
        terms = interference_terms(tuple(state), V)
        body["interference"] = {
            "p_a": list(terms.p_a),
            "transition": [list(r) for r in terms.transition],
            "epsilon": list(terms.epsilon),
            "theta": list(terms.theta),
        }
    except NotInGroup:
        # a coordinate or entry on the light cone has no polar form
        body["interference"] = None
    return _report("forward", body), EXIT_OK


def cmd_simulate(args) -> tuple[dict, int]:
    space = _load(args.space)
    if args.trials < 1:
        raise CommandError(EXIT_INVALID, ValueError("--trials must be at least 1"))
    out = simulate(space, args.context, args.trials, args.seed, args.shards, args.bootstrap)
    return _report("simulate", {"space_fingerprint": space.fingerprint(), **out}), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # accepted before or after the subcommand
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--tolerance", type=float, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="hyperprob", parents=[common], description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="disturbance coefficients and context class")
    p.add_argument("--space", required=True)
    p.add_argument("--context", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("represent", parents=[common], help="hyperbolic amplitude and a-basis")
    p.add_argument("--space", required=True)
    p.add_argument("--context", required=True)
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("verify", parents=[common], help="invariant table for every context")
    p.add_argument("--space", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("forward", parents=[common], help="b probabilities of an a-state under V")
    p.add_argument("--state", required=True)
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("simulate", parents=[common], help="Monte-Carlo experiment with regime verdict")
    p.add_argument("--space", required=True)
    p.add_argument("--context", required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--bootstrap", type=int, default=200, help="resamples; 0 uses the delta method")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.format = getattr(args, "format", "json")
    args.tolerance = getattr(args, "tolerance", 1e-10)
    try:
        try:
            report, code = args.func(args)
        except NotDecomposableOutput as exc:
            raise CommandError(EXIT_UNDEFINED, exc) from exc
        except _UNDEFINED as exc:
            raise CommandError(EXIT_UNDEFINED, exc) from exc
        except _INVALID as exc:
            raise CommandError(EXIT_INVALID, exc) from exc
    except CommandError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.code
    sys.stdout.write(dumps(report) if args.format == "json" else render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
