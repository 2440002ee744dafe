"""Command-line interface.

Subcommands: gen, classify, bounds, witness, optimize, report.  All of them
read and write the "udisc-1" JSON interchange format and never modify their
input files; reports go to stdout or to an explicit --output path.

Exit codes: 0 ok, 2 missing/unreadable file, 3 parse error, 4 validation
error, 5 identifiability failure, 6 desk scale exceeded, 7 bad flags.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .bounds import bound_series, verify_proof_chain
from .classify import classify_ensemble, linear_independence_gap, perfect_povm
from .errors import (
    BadFlagsError,
    BadPriorsError,
    BadRankError,
    ConditionFailsError,
    DeskScaleExceededError,
    ParseError,
    PreconditionNotMetError,
    RanksExceedDimError,
    UdiscError,
)
from .formats import (
    SCHEMA_VERSION,
    doc_seed,
    dump_document,
    ensemble_to_doc,
    load_document,
    doc_to_ensemble,
    matrix_to_lists,
    save_document,
    complex_to_pair,
)
from .generators import GenSpec, orthogonal_family, shared_support_counterexample, random_ensemble
from .numerics import ToleranceConfig
from .oracle import optimal_unambiguous
from .states import evaluate_povm, make_ensemble, uniform_priors
from .supports import support_of
from .witness import build_witness_povm

EXIT_OK = 0
EXIT_FILE = 2
EXIT_PARSE = 3
EXIT_VALIDATION = 4
EXIT_IDENTIFIABILITY = 5
EXIT_SCALE = 6
EXIT_FLAGS = 7

RANK_TOL_ENV = "UDISC_RANK_TOL"


def fmt(x: float) -> str:
    """Numeric text output at 12 significant digits."""
    return format(float(x), ".12g")


class _Parser(argparse.ArgumentParser):
    """argparse that reports flag problems through the exit-code contract."""

    def error(self, message):
        raise BadFlagsError(message)


def _tolerances(args) -> ToleranceConfig:
    rank_tol = getattr(args, "tol", None)
    if rank_tol is None:
        env = os.environ.get(RANK_TOL_ENV)
        if env is not None:
            try:
                rank_tol = float(env)
            except ValueError:
                raise BadFlagsError(f"{RANK_TOL_ENV} must be a number, got {env!r}")
    try:
        if rank_tol is None:
            return ToleranceConfig()
        return ToleranceConfig(rank_rel_tol=rank_tol)
    except ValueError as exc:
        raise BadFlagsError(str(exc))


def _tolerances_doc(tol: ToleranceConfig) -> dict:
    return {
        "rank_rel_tol": tol.rank_rel_tol,
        "orth_tol": tol.orth_tol,
        "psd_tol": tol.psd_tol,
    }


def _load(args, tol: ToleranceConfig):
    doc = load_document(args.input)
    return doc, doc_to_ensemble(doc, tol)


# --------------------------------------------------------------------------
# Section builders shared by the single commands and the combined report.
# --------------------------------------------------------------------------

def _classification_doc(e, tol: ToleranceConfig) -> dict:
    cls = classify_ensemble(e, tol)
    gap = linear_independence_gap(e, tol)
    audits = []
    for s in e.states:
        sup = support_of(s, tol)
        audits.append({
            "rank": sup.rank,
            "smallest_retained": sup.smallest_retained,
            "largest_discarded": sup.largest_discarded,
        })
    return {
        "kind": cls.kind,
        "per_state_identifiable": list(cls.per_state_identifiable),
        "orthogonality_violation": cls.orthogonality_violation,
        "joint_support_rank": cls.joint_rank,
        "excluded_support_ranks": list(cls.excluded_ranks),
        "state_supports": audits,
        "linearly_independent": gap.linearly_independent,
        "gram_rank": gap.gram_rank,
    }


def _bounds_doc(e, tol: ToleranceConfig, max_level: int) -> dict:
    report = bound_series(e, max_level=max_level, tol=tol)
    return {
        "fidelity_matrix": [[float(x) for x in row] for row in report.fidelities],
        "exponents": list(report.exponents),
        "coefficients": list(report.coefficients),
        "levels": list(report.levels),
        "limit": report.limit,
        "converged_at": report.converged_at,
    }


def _witness_doc(e, ws) -> dict:
    outcome = evaluate_povm(e, ws.povm)
    return {
        "applicable": True,
        "vectors": [[complex_to_pair(z) for z in phi] for phi in ws.vectors],
        "overlaps": [float(x) for x in ws.overlaps],
        "scale": ws.scale,
        "povm": [matrix_to_lists(el) for el in ws.povm.elements],
        "success_probs": [float(x) for x in outcome.success_probs],
        "inconclusive_prob": outcome.inconclusive_prob,
    }


def _oracle_doc(e, result) -> dict:
    outcome = evaluate_povm(e, result.povm)
    return {
        "applicable": True,
        "p_star": result.p_star,
        "objective_gap": result.objective_gap,
        "iterations": result.iterations,
        "status": result.status,
        "per_state_identifiable": list(result.per_state_identifiable),
        "success_probs": [float(x) for x in outcome.success_probs],
        "povm": [matrix_to_lists(el) for el in result.povm.elements],
    }


def _proof_chain_doc(e, povm, tol: ToleranceConfig) -> dict:
    slacks = verify_proof_chain(e, povm, tol)
    return {
        "inconclusive_terms": [float(x) for x in slacks.inconclusive_terms],
        "inconclusive_prob": slacks.inconclusive_prob,
        "pairwise_slack": slacks.pairwise_slack,
        "cauchy_slacks": {str(k): v for k, v in sorted(slacks.cauchy_slacks.items())},
        "level_slacks": list(slacks.level_slacks),
    }


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------

def cmd_classify(args) -> int:
    tol = _tolerances(args)
    _, e = _load(args, tol)
    doc = _classification_doc(e, tol)
    if args.json:
        sys.stdout.write(dump_document({"schema_version": SCHEMA_VERSION, "classification": doc}))
        return EXIT_OK
    print(f"classification: {doc['kind']}")
    for i, (flag, audit, rank_without) in enumerate(
        zip(doc["per_state_identifiable"], doc["state_supports"], doc["excluded_support_ranks"])
    ):
        print(
            f"state {i}: identifiable={'yes' if flag else 'no'}"
            f"  support rank {audit['rank']}  joint rank without it {rank_without}"
        )
    print(f"joint support rank: {doc['joint_support_rank']}")
    print(f"orthogonality violation: {fmt(doc['orthogonality_violation'])}")
    print(f"linearly independent: {'yes' if doc['linearly_independent'] else 'no'}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    if args.levels < 1:
        raise BadFlagsError(f"--levels must be >= 1, got {args.levels}")
    tol = _tolerances(args)
    _, e = _load(args, tol)
    doc = _bounds_doc(e, tol, args.levels)
    if args.json:
        sys.stdout.write(dump_document({"schema_version": SCHEMA_VERSION, "bounds": doc}))
        return EXIT_OK
    for level, (exp, value) in enumerate(zip(doc["exponents"], doc["levels"]), start=1):
        print(f"level {level} (innermost exponent {exp}): {fmt(value)}")
    print(f"limit: {fmt(doc['limit'])} (converged at level {doc['converged_at']})")
    return EXIT_OK


def cmd_witness(args) -> int:
    tol = _tolerances(args)
    _, e = _load(args, tol)
    doc = _witness_doc(e, build_witness_povm(e, tol))
    if args.json:
        sys.stdout.write(dump_document({"schema_version": SCHEMA_VERSION, "witness": doc}))
        return EXIT_OK
    print(f"scale q: {fmt(doc['scale'])}")
    for i, (phi, p) in enumerate(zip(doc["vectors"], doc["success_probs"])):
        parts = ", ".join(f"{fmt(re)}{'+' if im >= 0 else '-'}{fmt(abs(im))}j" for re, im in phi)
        print(f"state {i}: phi = [{parts}]  p_{i} = {fmt(p)}")
    print(f"inconclusive probability: {fmt(doc['inconclusive_prob'])}")
    return EXIT_OK


def cmd_optimize(args) -> int:
    if args.iter_cap < 1:
        raise BadFlagsError(f"--iter-cap must be >= 1, got {args.iter_cap}")
    tol = _tolerances(args)
    _, e = _load(args, tol)
    doc = _oracle_doc(e, optimal_unambiguous(e, tol, iter_cap=args.iter_cap))
    doc["restarts"] = args.restarts
    doc["seed"] = args.seed

    limit = bound_series(e, tol=tol).limit
    witness_p0 = None
    if all(doc["per_state_identifiable"]):
        witness_p0 = evaluate_povm(e, build_witness_povm(e, tol).povm).inconclusive_prob
    slack = 1e-7
    ok = doc["p_star"] >= limit - slack and (witness_p0 is None or doc["p_star"] <= witness_p0 + slack)
    doc["sandwich"] = {
        "bound_limit": limit,
        "p_star": doc["p_star"],
        "witness_inconclusive_prob": witness_p0,
        "ok": bool(ok),
    }
    if args.json:
        sys.stdout.write(dump_document({"schema_version": SCHEMA_VERSION, "oracle": doc}))
        return EXIT_OK
    print(f"status: {doc['status']}  iterations: {doc['iterations']}")
    print(f"p_star: {fmt(doc['p_star'])}  objective gap: {fmt(doc['objective_gap'])}")
    for i, p in enumerate(doc["success_probs"]):
        print(f"p_{i}: {fmt(p)}")
    wtxt = fmt(witness_p0) if witness_p0 is not None else "n/a"
    print(
        f"sandwich: bound limit {fmt(limit)} <= p_star {fmt(doc['p_star'])} "
        f"<= witness P0 {wtxt} : {'ok' if ok else 'VIOLATED'}"
    )
    return EXIT_OK


def _parse_ranks(text: str, n: int) -> tuple:
    try:
        ranks = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise BadFlagsError(f"--ranks must be comma-separated integers, got {text!r}")
    if len(ranks) != n:
        raise BadFlagsError(f"--ranks lists {len(ranks)} entries for n={n}")
    return ranks


def _parse_priors(text: str, n: int):
    if text == "uniform":
        return uniform_priors(n)
    try:
        priors = [float(part) for part in text.split(",")]
    except ValueError:
        raise BadFlagsError(f"--priors must be 'uniform' or comma-separated numbers, got {text!r}")
    if len(priors) != n:
        raise BadFlagsError(f"--priors lists {len(priors)} entries for n={n}")
    return priors


def cmd_gen(args) -> int:
    if args.fixture is not None:
        if args.fixture != "counterexample":
            raise BadFlagsError(f"unknown fixture {args.fixture!r}")
        e = shared_support_counterexample()
        save_document(args.output, ensemble_to_doc(e))
        return EXIT_OK
    if args.dim is None or args.n is None:
        raise BadFlagsError("--dim and --n are required unless --fixture is given")
    ranks = _parse_ranks(args.ranks, args.n) if args.ranks else (1,) * args.n
    priors = _parse_priors(args.priors, args.n)
    try:
        if args.family == "orthogonal":
            states = orthogonal_family(args.dim, ranks, args.seed)
            e = make_ensemble(states, priors)
        else:
            e = random_ensemble(GenSpec(dim=args.dim, n=args.n, ranks=ranks,
                                        seed=args.seed, priors="uniform"))
            e = make_ensemble(e.states, priors)
    except (BadRankError, RanksExceedDimError, BadPriorsError) as exc:
        raise BadFlagsError(str(exc))
    save_document(args.output, ensemble_to_doc(e, seed=args.seed))
    return EXIT_OK


def cmd_report(args) -> int:
    if args.levels < 1:
        raise BadFlagsError(f"--levels must be >= 1, got {args.levels}")
    if args.iter_cap < 1:
        raise BadFlagsError(f"--iter-cap must be >= 1, got {args.iter_cap}")
    tol = _tolerances(args)
    doc, e = _load(args, tol)
    report = {
        "schema_version": SCHEMA_VERSION,
        "tolerances": _tolerances_doc(tol),
        "seed": doc_seed(doc),
        "ensemble": doc,
        "classification": _classification_doc(e, tol),
    }
    report["bounds"] = _bounds_doc(e, tol, args.levels)

    identifiable = report["classification"]["per_state_identifiable"]
    witness_set = None
    if all(identifiable):
        witness_set = build_witness_povm(e, tol)
        report["witness"] = _witness_doc(e, witness_set)
        if report["classification"]["kind"] == "Perfect":
            projectors = perfect_povm(e, tol)
            outcome = evaluate_povm(e, projectors)
            report["perfect"] = {
                "povm": [matrix_to_lists(el) for el in projectors.elements],
                "success_probs": [float(x) for x in outcome.success_probs],
                "inconclusive_prob": outcome.inconclusive_prob,
            }
    else:
        failing = [i for i, flag in enumerate(identifiable) if not flag]
        report["witness"] = {"applicable": False,
                             "reason": f"states {failing} are not identifiable"}

    oracle_result = None
    if not any(identifiable):
        report["oracle"] = {"applicable": False, "reason": "no state is identifiable"}
    else:
        try:
            oracle_result = optimal_unambiguous(e, tol, iter_cap=args.iter_cap)
            oracle_doc = _oracle_doc(e, oracle_result)
        except DeskScaleExceededError as exc:
            oracle_doc = {"applicable": False, "reason": str(exc)}
        report["oracle"] = oracle_doc
        if oracle_doc.get("applicable"):
            limit = report["bounds"]["limit"]
            witness_p0 = report["witness"].get("inconclusive_prob")
            ok = oracle_doc["p_star"] >= limit - 1e-7 and (
                witness_p0 is None or oracle_doc["p_star"] <= witness_p0 + 1e-7
            )
            oracle_doc["sandwich"] = {
                "bound_limit": limit,
                "p_star": oracle_doc["p_star"],
                "witness_inconclusive_prob": witness_p0,
                "ok": bool(ok),
            }

    chains = {}
    for name, povm in (
        ("witness", witness_set.povm if witness_set else None),
        ("oracle", oracle_result.povm if oracle_result else None),
    ):
        if povm is None:
            continue
        try:
            chains[name] = _proof_chain_doc(e, povm, tol)
        except PreconditionNotMetError:
            pass
    if chains:
        report["proof_chain"] = chains

    if args.output:
        save_document(args.output, report)
    if args.json or not args.output:
        sys.stdout.write(dump_document(report))
    else:
        cls = report["classification"]
        print(f"classification: {cls['kind']}")
        print(f"bound limit: {fmt(report['bounds']['limit'])}")
        if report["witness"].get("applicable"):
            print(f"witness P0: {fmt(report['witness']['inconclusive_prob'])}")
        if report["oracle"].get("applicable"):
            print(f"oracle p_star: {fmt(report['oracle']['p_star'])}")
        print(f"report written to {args.output}")
    return EXIT_OK


# --------------------------------------------------------------------------
# Parser and dispatch
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="udisc",
                     description="Unambiguous mixed-state discrimination toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("input", help="ensemble file (udisc-1 JSON)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--tol", type=float, default=None,
                       help=f"relative rank cutoff (default 1e-9; env {RANK_TOL_ENV})")

    p = sub.add_parser("classify", help="Perfect / Unambiguous / NotUnambiguous")
    add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bounds", help="nested lower-bound series on the inconclusive probability")
    add_common(p)
    p.add_argument("--levels", type=int, default=64,
                   help="maximum number of levels (stops earlier on convergence)")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("witness", help="rank-one witness measurement")
    add_common(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("optimize", help="desk-scale optimal inconclusive probability")
    add_common(p)
    p.add_argument("--iter-cap", type=int, default=200, help="solver iteration cap")
    p.add_argument("--restarts", type=int, default=8,
                   help="recorded in the output; the deterministic interior-point "
                        "backend does not need restarts")
    p.add_argument("--seed", type=int, default=0,
                   help="recorded in the output; the backend is deterministic")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("gen", help="write a deterministic ensemble file")
    p.add_argument("output", help="destination path")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--ranks", type=str, default=None, help="comma-separated, one per state")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--priors", type=str, default="uniform",
                   help="'uniform' or comma-separated probabilities")
    p.add_argument("--family", choices=("generic", "orthogonal"), default="generic")
    p.add_argument("--fixture", type=str, default=None,
                   help="named fixture instead of random generation ('counterexample')")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("report", help="combined analysis document")
    add_common(p)
    p.add_argument("--levels", type=int, default=64)
    p.add_argument("--iter-cap", type=int, default=200)
    p.add_argument("--output", type=str, default=None, help="write the JSON document here")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except BadFlagsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FLAGS
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename or exc}", file=sys.stderr)
        return EXIT_FILE
    except IsADirectoryError as exc:
        print(f"error: not a file: {exc.filename or exc}", file=sys.stderr)
        return EXIT_FILE
    except PermissionError as exc:
        print(f"error: cannot read: {exc.filename or exc}", file=sys.stderr)
        return EXIT_FILE
    except ParseError as exc:
        print(f"error: parse: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConditionFailsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IDENTIFIABILITY
    except DeskScaleExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except BadFlagsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FLAGS
    except UdiscError as exc:
        print(f"error: validation: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"error: validation: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
