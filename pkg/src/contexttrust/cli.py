"""Command-line interface wiring the library end to end.

Subcommands:
  weigh    weight a tree's edges from co-occurrence counts and write it back out
  sim      print the similarity between two contexts under a chosen measure
  predict  predict a seller's rate in an unknown context from a known one
  eval     score measures over seller/context pairs and write a report CSV
  counts   inspect the hit counts a provider returns for a term pair

All numeric output is printed with 6 decimal places.  On any error the
process exits nonzero without touching the designated output file.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import dataset, evaluation, ontology, semantic, similarity, trust
from .errors import ContextTrustError, DomainError, SchemaError
from .similarity import ALL_MEASURES, PathMode, TREE_MEASURES


def _write_atomic(path: str | Path, text: str) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    try:
        tmp.write_text(text, encoding="utf-8")
        os.replace(tmp, path)
    finally:
        tmp.unlink(missing_ok=True)


def _build_provider(args: argparse.Namespace) -> semantic.CountProvider:
    config = semantic.load_provider_config(args.provider)
    provider = semantic.make_provider(config)
    if getattr(args, "cache", None):
        provider = semantic.CachedProvider(provider, semantic.PairCache(args.cache))
    return provider


def _load_profiles(args: argparse.Namespace) -> dict[str, dataset.TrustProfile]:
    reviews_by_seller: dict[str, list[dataset.Review]] = {}
    for spec in args.reviews:
        if "=" in spec:
            seller, _, path = spec.partition("=")
        else:
            seller, path = Path(spec).stem, spec
        reviews_by_seller.setdefault(seller, []).extend(
            dataset.parse_reviews(Path(path), seller=seller)
        )
    profiles = dataset.build_profiles(reviews_by_seller)
    return dataset.filter_profiles(profiles, args.min_contexts, args.min_ratings)


def _read_pairs(path: str | Path) -> list[evaluation.Pair]:
    text = Path(path).read_text(encoding="utf-8-sig")
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError(f"{path}: pairs file is empty, expected header row") from None
    if [h.strip() for h in header] != ["seller", "known", "unknown"]:
        raise SchemaError(f"{path}: pairs header must be seller,known,unknown")
    pairs: list[evaluation.Pair] = []
    for number, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 3:
            raise SchemaError(f"{path}: row {number}: expected 3 columns")
        pairs.append((row[0].strip(), row[1].strip(), row[2].strip()))
    return pairs


def _cmd_weigh(args: argparse.Namespace) -> int:
    if not 0.0 < args.epsilon <= 1.0:
        raise DomainError(f"--epsilon must lie in (0, 1], got {args.epsilon}")
    tree = ontology.load_tree(args.tree)
    provider = _build_provider(args)
    weighted, annotations = ontology.weigh_tree(tree, provider, epsilon=args.epsilon)
    document = ontology.dump_tree(weighted)
    _write_atomic(args.out, document)
    for parent, child, weight in weighted.edge_list():
        print(f"{parent}\t{child}\t{weight:.6f}")
    for note in annotations:
        print(f"note: edge ({note.parent} -> {note.child}) forced to floor: {note.reason}")
    return 0


def _parse_task_vector(text: str) -> similarity.TaskContext:
    try:
        values = [float(part) for part in text.split(",")]
    except ValueError:
        raise DomainError(f"task context {text!r} is not a comma-separated number list") from None
    return similarity.TaskContext(values)


def _cmd_sim(args: argparse.Namespace) -> int:
    mode = PathMode(args.mode)
    if args.measure in TREE_MEASURES:
        if args.tree is None:
            raise DomainError(f"--tree is required for measure {args.measure!r}")
        tree = ontology.load_tree(args.tree)
        value = similarity.tree_similarity(tree, args.a, args.b, args.measure, mode)
    elif args.measure == "keyword":
        value = similarity.keyword_similarity(
            similarity.KeywordContext(args.a.split(",")),
            similarity.KeywordContext(args.b.split(",")),
        )
    else:  # task
        value = similarity.task_similarity(_parse_task_vector(args.a), _parse_task_vector(args.b))
    print(f"{value:.6f}")
    return 0


def _require_profile(
    profiles: dict[str, dataset.TrustProfile], seller: str
) -> dataset.TrustProfile:
    profile = profiles.get(seller)
    if profile is None:
        raise DomainError(f"no eligible profile for seller {seller!r} after filtering")
    return profile


def _cmd_predict(args: argparse.Namespace) -> int:
    tree = ontology.load_tree(args.tree)
    profiles = _load_profiles(args)
    profile = _require_profile(profiles, args.seller)
    prediction = trust.predict_for_pair(
        profile, tree, args.measure, args.known, args.unknown, PathMode(args.mode)
    )
    print(f"{prediction.predicted_rate:.6f}")
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    tree = ontology.load_tree(args.tree)
    profiles = _load_profiles(args)
    if not profiles:
        raise DomainError(
            "no eligible sellers: every profile fell below the context/rating thresholds"
        )
    pairs = _read_pairs(args.pairs)
    measures = args.measure or ["weighted", "eq1"]
    report = evaluation.run_comparison(profiles, tree, measures, pairs, PathMode(args.mode))
    _write_atomic(args.out, evaluation.report_to_csv(report))
    sys.stdout.write(evaluation.format_summary(report))
    return 0


def _cmd_counts(args: argparse.Namespace) -> int:
    provider = _build_provider(args)
    counts = provider.counts(args.x, args.y)
    print(f"{counts.fx}\t{counts.fy}\t{counts.fxy}\t{counts.m}")
    return 0


def _add_filter_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--min-contexts", type=int, default=1,
                        help="drop sellers with fewer surviving contexts (default 1)")
    parser.add_argument("--min-ratings", type=int, default=1,
                        help="drop contexts with fewer reviews (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contexttrust",
        description="Weighted ontology trees, context similarity, and trust prediction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_weigh = sub.add_parser("weigh", help="weight a tree's edges from co-occurrence counts")
    p_weigh.add_argument("--tree", required=True, help="tree document to weight")
    p_weigh.add_argument("--provider", required=True, help="provider config (JSON)")
    p_weigh.add_argument("--cache", help="pair-counts cache file (TSV)")
    p_weigh.add_argument("--epsilon", type=float, default=semantic.DEFAULT_EPSILON,
                         help="weight floor for degenerate similarities (default 0.01)")
    p_weigh.add_argument("--out", required=True, help="where to write the weighted tree")
    p_weigh.set_defaults(func=_cmd_weigh)

    p_sim = sub.add_parser("sim", help="similarity between two contexts")
    p_sim.add_argument("--tree", help="tree document (tree measures only)")
    p_sim.add_argument("--measure", choices=ALL_MEASURES, default="weighted")
    p_sim.add_argument("--mode", choices=[m.value for m in PathMode], default="product")
    p_sim.add_argument("a", help="node id, keyword list, or attribute vector")
    p_sim.add_argument("b", help="node id, keyword list, or attribute vector")
    p_sim.set_defaults(func=_cmd_sim)

    p_predict = sub.add_parser("predict", help="predict a rate for an unknown context")
    p_predict.add_argument("--tree", required=True)
    p_predict.add_argument("--reviews", action="append", required=True, metavar="[SELLER=]PATH",
                           help="review CSV; seller defaults to the file stem")
    p_predict.add_argument("--measure", choices=TREE_MEASURES, default="weighted")
    p_predict.add_argument("--mode", choices=[m.value for m in PathMode], default="product")
    _add_filter_flags(p_predict)
    p_predict.add_argument("seller")
    p_predict.add_argument("known")
    p_predict.add_argument("unknown")
    p_predict.set_defaults(func=_cmd_predict)

    p_eval = sub.add_parser("eval", help="compare measures over seller/context pairs")
    p_eval.add_argument("--tree", required=True)
    p_eval.add_argument("--reviews", action="append", required=True, metavar="[SELLER=]PATH")
    p_eval.add_argument("--pairs", required=True, help="CSV of seller,known,unknown")
    p_eval.add_argument("--measure", action="append", choices=TREE_MEASURES,
                        help="repeatable; default: weighted and eq1")
    p_eval.add_argument("--mode", choices=[m.value for m in PathMode], default="product")
    _add_filter_flags(p_eval)
    p_eval.add_argument("--out", required=True, help="where to write the report CSV")
    p_eval.set_defaults(func=_cmd_eval)

    p_counts = sub.add_parser("counts", help="inspect hit counts for a term pair")
    p_counts.add_argument("--provider", required=True)
    p_counts.add_argument("--cache")
    p_counts.add_argument("x")
    p_counts.add_argument("y")
    p_counts.set_defaults(func=_cmd_counts)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ContextTrustError as exc:
        print(f"contexttrust: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"contexttrust: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
