"""Command-line front end.

Subcommands: ``validate``, ``consistency``, ``utility``, ``weights``,
``ahp``, ``convert``.  Every command reads one JSON problem file, never
mutates it (``convert`` writes to ``--out``), and is deterministic: the
same file and flags produce byte-identical output.

Exit codes: 0 success, 1 parse error, 2 validation failure, 3 the
optimization model is infeasible.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .ahp import AhpProblem, amm_weights, deviation, gmm_weights, run_ahp
from .errors import InfeasibleError, ParseError, ValidationError
from .files import LoadedProblem, load_problem, parse_scalar, save_problem
from .lad import Model, UtilityVector, derive_utility, derive_weights
from .relations import (
    DEFAULT_CONSISTENCY_TOL,
    TrFPR,
    TrMPR,
    check_consistency,
    check_consistency_mult,
    to_additive,
    to_multiplicative,
)
from .trfn import DEFAULT_MAG_WEIGHTS, MagWeights, TrFN, magnitude, rank

__all__ = ["main"]


def _fmt(x: float) -> str:
    return f"{x:.4f}"


def _fmt_trfn(t: TrFN) -> str:
    return f"T({_fmt(t.a)}, {_fmt(t.b)}, {_fmt(t.c)}, {_fmt(t.d)})"


def _parse_sigma(text: str) -> TrFN:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValidationError("--sigma expects four comma-separated components")
    try:
        return TrFN(*(parse_scalar(p, "--sigma") for p in parts))
    except ValidationError as exc:
        raise ValidationError(f"--sigma: {exc}") from exc


def _parse_mag_weights(text: str) -> MagWeights:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValidationError("--mag-weights expects two comma-separated values")
    return MagWeights(parse_scalar(parts[0], "--mag-weights"), parse_scalar(parts[1], "--mag-weights"))


def _resolve_mag_weights(args, problem: LoadedProblem) -> MagWeights:
    if args.mag_weights is not None:
        return _parse_mag_weights(args.mag_weights)
    if problem.mag_weights is not None:
        return problem.mag_weights
    return DEFAULT_MAG_WEIGHTS


def _resolve_sigma(args, problem: LoadedProblem) -> TrFN | None:
    if getattr(args, "sigma", None) is not None:
        return _parse_sigma(args.sigma)
    return problem.sigma


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _utility_payload(result: UtilityVector, mag_weights: MagWeights) -> dict:
    ranking = rank(result.utilities, mag_weights)
    return {
        "model": result.model.value,
        "utilities": [list(u.components) for u in result.utilities],
        "objective": result.objective,
        "magnitudes": list(ranking.magnitudes),
        "ranking": ranking.label(),
        "ranking_groups": [list(g) for g in ranking.groups],
    }


def _print_utility(result: UtilityVector, mag_weights: MagWeights, as_json: bool) -> None:
    if as_json:
        _print_json(_utility_payload(result, mag_weights))
        return
    ranking = rank(result.utilities, mag_weights)
    print(f"model: {result.model.value}")
    for i, u in enumerate(result.utilities):
        print(f"  A{i + 1}: {_fmt_trfn(u)}  Mag = {_fmt(ranking.magnitudes[i])}")
    print(f"objective: {_fmt(result.objective)}")
    print(f"ranking: {ranking.label()}")


def cmd_validate(args) -> int:
    problem = load_problem(args.file)
    if args.json:
        _print_json({"valid": True, "kind": problem.kind, "n": problem.n})
    else:
        extent = f"{problem.n} alternatives"
        if problem.kind == "ahp":
            extent += f", {len(problem.matrices)} criteria"
        print(f"valid {problem.kind} problem ({extent})")
    return 0


def cmd_consistency(args) -> int:
    problem = load_problem(args.file)
    tol = args.tol if args.tol is not None else DEFAULT_CONSISTENCY_TOL
    if problem.kind == "additive":
        report = check_consistency(problem.relation, tol)
    elif problem.kind == "multiplicative":
        report = check_consistency_mult(problem.relation, tol)
    else:
        raise ValidationError("consistency expects an additive or multiplicative file")
    i, j, k = report.worst_triple
    if args.json:
        _print_json(
            {
                "consistent": report.consistent,
                "max_violation": report.max_violation,
                "worst_triple": [i + 1, j + 1, k + 1],
                "tol": report.tol,
            }
        )
    else:
        print(f"verdict: {'consistent' if report.consistent else 'inconsistent'}")
        print(f"max violation: {report.max_violation:.6g}")
        print(f"worst triple: ({i + 1}, {j + 1}, {k + 1})")
    return 0


def _derive_for_file(problem: LoadedProblem, model: Model, sigma: TrFN | None) -> UtilityVector:
    needs_sigma = model in (Model.PSIGMA, Model.QSIGMA)
    if needs_sigma and sigma is None:
        raise ValidationError(
            "a total-utility target is required: pass --sigma or add a sigma field"
        )
    if problem.kind == "additive":
        return derive_utility(problem.relation, model, sigma if needs_sigma else None)
    if model in (Model.PSIGMA, Model.QSIGMA):
        return derive_weights(problem.relation, sigma)
    return derive_utility(to_additive(problem.relation), model)


def cmd_utility(args) -> int:
    problem = load_problem(args.file)
    if problem.kind == "ahp":
        raise ValidationError("utility expects an additive or multiplicative file; use ahp")
    if args.model is not None:
        model = Model(args.model)
    else:
        model = Model.PUNIT if problem.kind == "additive" else Model.P
    if model is Model.PSIGMA and problem.kind == "multiplicative":
        model = Model.QSIGMA
    result = _derive_for_file(problem, model, _resolve_sigma(args, problem))
    _print_utility(result, _resolve_mag_weights(args, problem), args.json)
    return 0


def cmd_weights(args) -> int:
    problem = load_problem(args.file)
    if problem.kind == "ahp":
        raise ValidationError("weights expects an additive or multiplicative file; use ahp")
    model = Model.PSIGMA if problem.kind == "additive" else Model.QSIGMA
    result = _derive_for_file(problem, model, _resolve_sigma(args, problem))
    _print_utility(result, _resolve_mag_weights(args, problem), args.json)
    return 0


def _comparison_payload(y: TrMPR, lad: UtilityVector) -> dict:
    amm = amm_weights(y)
    gmm = gmm_weights(y)
    return {
        "lad": {
            "weights": [list(t.components) for t in lad.utilities],
            "deviation": lad.objective,
        },
        "amm": {
            "weights": [list(t.components) for t in amm],
            "deviation": deviation(y, amm),
        },
        "gmm": {
            "weights": [list(t.components) for t in gmm],
            "deviation": deviation(y, gmm),
        },
    }


def cmd_ahp(args) -> int:
    problem = load_problem(args.file)
    if problem.kind != "ahp":
        raise ValidationError("ahp expects a file of kind ahp")
    sigma = _resolve_sigma(args, problem)
    if sigma is None:
        raise ValidationError(
            "a total-utility target is required: pass --sigma or add a sigma field"
        )
    mag_weights = _resolve_mag_weights(args, problem)
    hierarchy = AhpProblem(problem.criteria_weights, problem.matrices, sigma, mag_weights)
    result = run_ahp(hierarchy)
    comparisons = None
    if args.compare:
        comparisons = [
            _comparison_payload(y, local)
            for y, local in zip(hierarchy.matrices, result.local_weights)
        ]
    if args.json:
        payload = {
            "criteria_weights": list(hierarchy.criteria_weights),
            "local_weights": [
                [list(t.components) for t in vec.utilities] for vec in result.local_weights
            ],
            "per_criterion_objectives": list(result.per_criterion_objectives),
            "global_weights": [list(t.components) for t in result.global_weights],
            "magnitudes": list(result.magnitudes),
            "ranking": result.ranking.label(),
            "ranking_groups": [list(g) for g in result.ranking.groups],
        }
        if comparisons is not None:
            payload["comparison"] = comparisons
        _print_json(payload)
        return 0
    for k, vec in enumerate(result.local_weights):
        weight = hierarchy.criteria_weights[k]
        print(f"criterion {k + 1} (weight {_fmt(weight)}): objective {_fmt(vec.objective)}")
        for i, t in enumerate(vec.utilities):
            print(f"  A{i + 1}: {_fmt_trfn(t)}")
    print("global weights:")
    for i, t in enumerate(result.global_weights):
        print(f"  A{i + 1}: {_fmt_trfn(t)}  Mag = {_fmt(result.magnitudes[i])}")
    print(f"ranking: {result.ranking.label()}")
    if comparisons is not None:
        for k, (block, y) in enumerate(zip(comparisons, hierarchy.matrices)):
            print(f"comparison (criterion {k + 1}):")
            for method in ("lad", "amm", "gmm"):
                entry = block[method]
                print(f"  {method}: deviation {_fmt(entry['deviation'])}")
                for i, comps in enumerate(entry["weights"]):
                    print(f"    A{i + 1}: {_fmt_trfn(TrFN(*comps))}")
    return 0


def cmd_convert(args) -> int:
    problem = load_problem(args.file)
    if problem.kind == "ahp":
        raise ValidationError("convert expects an additive or multiplicative file")
    if args.to == problem.kind:
        raise ValidationError(f"file already is {problem.kind}; nothing to convert")
    if args.to == "multiplicative":
        converted: TrFPR | TrMPR = to_multiplicative(problem.relation, args.scale)
    else:
        converted = to_additive(problem.relation)
    save_problem(args.out, converted)
    if args.json:
        _print_json({"written": str(args.out), "kind": args.to})
    else:
        print(f"wrote {args.to} problem to {args.out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    common.add_argument("--tol", type=float, default=None, help="consistency tolerance")
    common.add_argument(
        "--mag-weights",
        default=None,
        metavar="W1,W2",
        help="magnitude weights, must satisfy 2*(w1+w2) = 1",
    )
    parser = argparse.ArgumentParser(
        prog="fuzzylad",
        description="Fuzzy preference relations with LAD-derived utilities and weights",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a problem file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("consistency", parents=[common], help="transitivity diagnosis")
    p.add_argument("file")
    p.set_defaults(func=cmd_consistency)

    p = sub.add_parser("utility", parents=[common], help="derive ranking utilities")
    p.add_argument("file")
    p.add_argument("--model", choices=[m.value for m in Model if m is not Model.QSIGMA])
    p.add_argument("--sigma", default=None, metavar="A,B,C,D", help="total-utility target")
    p.set_defaults(func=cmd_utility)

    p = sub.add_parser("weights", parents=[common], help="derive normalized fuzzy weights")
    p.add_argument("file")
    p.add_argument("--sigma", default=None, metavar="A,B,C,D", help="total-utility target")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("ahp", parents=[common], help="multi-criteria pipeline")
    p.add_argument("file")
    p.add_argument("--sigma", default=None, metavar="A,B,C,D", help="total-utility target")
    p.add_argument(
        "--compare", action="store_true", help="also report arithmetic/geometric mean baselines"
    )
    p.set_defaults(func=cmd_ahp)

    p = sub.add_parser("convert", parents=[common], help="switch between the two scales")
    p.add_argument("file")
    p.add_argument("--to", required=True, choices=["additive", "multiplicative"])
    p.add_argument("--scale", type=int, default=9, help="target ratio scale (default 9)")
    p.add_argument("--out", required=True, help="output path")
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValidationError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 2
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 3
    except (ArithmeticError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
