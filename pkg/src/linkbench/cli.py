"""Command-line entry point: generate / evaluate / train / benchmark.

Every command is a pure function of its input files and flags: identical
invocations produce byte-identical outputs, and every emitted report embeds
the fully resolved configuration.  Exit codes: 0 success, 1 usage error,
2 data error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import pipeline
from .errors import (
    DegenerateLabelsError,
    GraphTooSmallError,
    InvalidPairError,
    InvalidParameterError,
    LinkbenchError,
    MalformedInputError,
    SamplingExhaustedError,
)
from .evaluation import roc_points, split_edges, split_edges_temporal
from .graph import build_graph
from .io import (
    read_edge_csv,
    write_edge_csv,
    write_id_map,
    write_report_json,
    write_roc_csv,
    write_scored_tsv,
)
from .serialize import save_model
from .synthgen import GeneratorSpec, barabasi_albert, erdos_renyi, stochastic_block

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3

_DATA_ERRORS = (MalformedInputError, DegenerateLabelsError, GraphTooSmallError,
                SamplingExhaustedError, InvalidPairError, OSError)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _parse_ratios(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise InvalidParameterError(f"ratios must be 'train,test,valid', got {text!r}")
    return tuple(float(p) for p in parts)  # type: ignore[return-value]


def _apply_config(args: argparse.Namespace) -> None:
    """Fill unset flags from --config (JSON object keyed by flag dest)."""
    if not getattr(args, "config", None):
        return
    try:
        conf = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInputError(f"cannot read config {args.config}: {exc}")
    for key, value in conf.items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)


def _setdefaults(args: argparse.Namespace, **defaults) -> None:
    for key, value in defaults.items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)


def _add_split_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="edge-list CSV")
    p.add_argument("--config", help="JSON config file; flags override it")
    p.add_argument("--seed", type=int)
    p.add_argument("--ratios", help="train,test,valid fractions (default 0.8,0.1,0.1)")
    p.add_argument("--negative-ratio", type=float, dest="negative_ratio")
    p.add_argument("--alpha", type=float, help="CNC hyperparameter (default 0.8)")
    p.add_argument("--k", type=int, help="K for precision@K (default 50)")
    p.add_argument("--temporal", action="store_true",
                   help="chronological split using the timestamp column")
    p.add_argument("--lenient", action="store_true",
                   help="skip self-loops instead of rejecting them")


def _resolve_common(args: argparse.Namespace) -> None:
    _apply_config(args)
    _setdefaults(args, seed=0, ratios="0.8,0.1,0.1", negative_ratio=1.0,
                 alpha=0.8, k=50)
    if isinstance(args.ratios, str):
        args.ratios = _parse_ratios(args.ratios)
    args.ratios = tuple(float(r) for r in args.ratios)


def _load_split(args: argparse.Namespace):
    edges, timestamps, ids = read_edge_csv(args.input)
    g = build_graph(edges, len(ids), strict=not args.lenient)
    if args.temporal:
        if any(t is None for t in timestamps):
            raise MalformedInputError(
                "--temporal requires a timestamp on every edge row")
        rows = [(u, v, t) for (u, v), t in zip(edges, timestamps)]
        split = split_edges_temporal(rows, len(ids), args.ratios, args.seed,
                                     negative_ratio=args.negative_ratio)
    else:
        split = split_edges(g, args.ratios, args.seed,
                            negative_ratio=args.negative_ratio)
    return g, split, ids


def _params_block(args: argparse.Namespace, method=None) -> dict:
    block = {
        "input": args.input, "seed": args.seed, "ratios": list(args.ratios),
        "negative_ratio": args.negative_ratio, "alpha": args.alpha,
        "k": args.k, "temporal": bool(args.temporal),
    }
    if method is not None:
        block["method"] = method
    return block


def _hyperparams(args: argparse.Namespace, method: str) -> dict:
    hp = dict(pipeline.DEFAULT_HYPERPARAMS[method])
    overrides = {
        "svm": {"C": args.svm_c, "eta": args.svm_eta, "epochs": args.epochs},
        "gb": {"T": args.rounds, "eta": args.gb_eta, "max_depth": args.max_depth},
        "rf": {"n_trees": args.n_trees, "max_depth": args.max_depth,
               "min_leaf": args.min_leaf},
        "stacking": {"folds": args.folds},
    }[method]
    hp.update({k: v for k, v in overrides.items() if v is not None})
    return hp


def _train_model(args: argparse.Namespace, g, split):
    X, y = pipeline.learner_train_data(g, split, args.alpha,
                                       args.negative_ratio)
    hp = _hyperparams(args, args.method)
    model = pipeline.train_method(args.method, X, y, args.seed, hp)
    return model, hp


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_generate(args: argparse.Namespace) -> int:
    _apply_config(args)
    _setdefaults(args, seed=0)
    if args.kind == "er":
        spec = GeneratorSpec("erdos_renyi", args.n, args.seed, {"p": args.p})
        g = erdos_renyi(args.n, args.p, args.seed)
        blocks = None
    elif args.kind == "ba":
        spec = GeneratorSpec("barabasi_albert", args.n, args.seed, {"m": args.m})
        g = barabasi_albert(args.n, args.m, args.seed)
        blocks = None
    elif args.kind == "sbm":
        spec = GeneratorSpec("stochastic_block", args.n, args.seed,
                             {"k": args.k, "p_in": args.p_in, "p_out": args.p_out})
        g, blocks = stochastic_block(args.n, args.k, args.p_in, args.p_out,
                                     args.seed)
    else:  # unreachable via argparse choices
        raise InvalidParameterError(f"unknown kind {args.kind!r}")
    write_edge_csv(args.out, g.edges())
    sidecar = spec.to_dict()
    if blocks is not None:
        sidecar["blocks"] = blocks
    Path(str(args.out) + ".spec.json").write_text(
        json.dumps(sidecar, sort_keys=True, indent=1) + "\n")
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    _resolve_common(args)
    g, split, ids = _load_split(args)
    pair_sets = pipeline.split_pair_sets(g, split, args.negative_ratio)
    report = {"params": _params_block(args, args.method)}
    if args.method in pipeline.INDEX_METHODS:
        report.update(pipeline.evaluate_index(
            split, pair_sets, args.method, args.alpha, args.k))
        test_scored = pipeline.scored_pairs_for_index(
            split, pair_sets["test"], args.method, args.alpha)
    else:
        model, hp = _train_model(args, g, split)
        report["params"]["hyperparams"] = hp
        result = pipeline.evaluate_learner(
            model, split, pair_sets, args.alpha, args.k,
            eval_sets=("train", "test", "valid"))
        report["method"] = args.method
        report["sets"] = result["sets"]
        test_scored = pipeline.model_scored_pairs(model, split,
                                                  pair_sets["test"], args.alpha)
    write_report_json(args.out, report)
    write_id_map(str(args.out) + ".idmap.json", ids)
    if args.roc_out:
        write_roc_csv(args.roc_out, roc_points(test_scored))
    if args.scores_out:
        write_scored_tsv(args.scores_out, test_scored)
    return EXIT_OK


def cmd_train(args: argparse.Namespace) -> int:
    _resolve_common(args)
    g, split, ids = _load_split(args)
    pair_sets = pipeline.split_pair_sets(g, split, args.negative_ratio)
    model, hp = _train_model(args, g, split)
    result = pipeline.evaluate_learner(model, split, pair_sets,
                                       args.alpha, args.k)
    report = {"params": _params_block(args, args.method),
              "method": args.method, "sets": result["sets"]}
    report["params"]["hyperparams"] = hp
    save_model(model, args.model_out)
    write_report_json(args.report_out, report)
    write_id_map(str(args.report_out) + ".idmap.json", ids)
    return EXIT_OK


def cmd_benchmark(args: argparse.Namespace) -> int:
    _resolve_common(args)
    g, split, ids = _load_split(args)
    pair_sets = pipeline.split_pair_sets(g, split, args.negative_ratio)
    entries = []
    any_ok = False
    for method in pipeline.ALL_METHODS:
        try:
            if method in pipeline.INDEX_METHODS:
                result = pipeline.evaluate_index(split, pair_sets, method,
                                                 args.alpha, args.k)
            else:
                args.method = method
                model, hp = _train_model(args, g, split)
                result = pipeline.evaluate_learner(
                    model, split, pair_sets, args.alpha, args.k,
                    eval_sets=("train", "test", "valid"))
                result["hyperparams"] = hp
            entry = {"method": method, **{k: v for k, v in result.items()
                                          if k != "method"}}
            entry["test_auc_roc"] = result["sets"]["test"]["auc_roc"]
            any_ok = True
        except LinkbenchError as exc:
            entry = {"method": method, "error": str(exc)}
        entries.append(entry)
    # ranked by test AUC descending, ties and failures by method name
    entries.sort(key=lambda e: (-e.get("test_auc_roc", float("-inf")),
                                e["method"]))
    report = {"params": _params_block(args), "methods": entries}
    write_report_json(args.out, report)
    write_id_map(str(args.out) + ".idmap.json", ids)
    return EXIT_OK if any_ok else EXIT_DATA


def build_parser() -> _Parser:
    parser = _Parser(prog="linkbench",
                     description="Link-prediction indices, learners, and benchmarks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic edge-list CSV")
    p.add_argument("--kind", required=True, choices=["er", "ba", "sbm"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, help="ER edge probability")
    p.add_argument("--m", type=int, help="BA attachments per node")
    p.add_argument("--k", type=int, help="SBM block count")
    p.add_argument("--p-in", type=float, dest="p_in")
    p.add_argument("--p-out", type=float, dest="p_out")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--config", help="JSON config file; flags override it")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("evaluate", help="Table-style metrics for one method")
    _add_split_flags(p)
    p.add_argument("--method", required=True, choices=pipeline.ALL_METHODS)
    p.add_argument("--out", required=True, help="metrics report JSON")
    p.add_argument("--roc-out", dest="roc_out", help="fpr,tpr CSV (test set)")
    p.add_argument("--scores-out", dest="scores_out",
                   help="scored test pairs TSV")
    _add_learner_flags(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("train", help="train a learner, write model + reports")
    _add_split_flags(p)
    p.add_argument("--method", required=True, choices=pipeline.LEARNER_METHODS)
    p.add_argument("--model-out", dest="model_out", required=True)
    p.add_argument("--report-out", dest="report_out", required=True)
    _add_learner_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("benchmark", help="all methods under one shared split")
    _add_split_flags(p)
    p.add_argument("--out", required=True)
    _add_learner_flags(p)
    p.set_defaults(func=cmd_benchmark)

    return parser


def _add_learner_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--svm-c", type=float, dest="svm_c")
    p.add_argument("--svm-eta", type=float, dest="svm_eta")
    p.add_argument("--epochs", type=int)
    p.add_argument("--rounds", type=int, help="boosting rounds T")
    p.add_argument("--gb-eta", type=float, dest="gb_eta")
    p.add_argument("--n-trees", type=int, dest="n_trees")
    p.add_argument("--max-depth", type=int, dest="max_depth")
    p.add_argument("--min-leaf", type=int, dest="min_leaf")
    p.add_argument("--folds", type=int)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidParameterError as exc:
        print(f"linkbench: parameter error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _DATA_ERRORS as exc:
        print(f"linkbench: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # invariant violation or bug
        print(f"linkbench: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
