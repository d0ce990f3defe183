"""healthadvisor command line.

Exit status: 0 success, 1 validation/data error, 2 usage error.
"""
import argparse
import logging
import sys
from pathlib import Path

from healthadvisor.concept_graph import build_graph, load_graph, load_rules, read_corpus, save_graph
from healthadvisor.exceptions import HealthAdvisorError
from healthadvisor.pipeline import PipelineConfig, batch_recommend, dumps_recommendations, load_aliases
from healthadvisor.risk_classifier import (
    TreeConfig,
    evaluate,
    load_model,
    read_dataset,
    read_profiles,
    save_model,
    train_oner,
    train_tree,
    write_dataset,
)
from healthadvisor.synthetic import generate_synthetic_dataset
from healthadvisor.wearable_catalog import DemandCounter, extend_graph, gap_report, load_catalog, load_synonyms

log = logging.getLogger("healthadvisor")


def _write(path, text):
    Path(path).write_text(text, encoding="utf-8")


def cmd_train(args):
    dataset = read_dataset(args.data)
    config = TreeConfig(max_depth=args.max_depth, min_gain=args.min_gain, laplace=args.laplace)
    tree = train_tree(dataset, config)
    save_model(args.out, tree, train_oner(dataset))
    log.info("trained on %d rows: depth %d, %d leaves", len(dataset), tree.depth, tree.n_leaves)


def cmd_eval(args):
    tree, oner = load_model(args.model)
    dataset = read_dataset(args.data)
    model = tree
    if args.baseline == "oner":
        if oner is None:
            raise HealthAdvisorError(f"{args.model}: model document has no OneR baseline")
        model = oner
    sys.stdout.write(evaluate(model, dataset).lines())


def _catalog(args):
    synonyms = load_synonyms(args.synonyms)
    return load_catalog(args.catalog, synonyms)


def cmd_build_graph(args):
    rules = load_rules(args.rules)
    catalog = _catalog(args)
    graph = extend_graph(build_graph(read_corpus(args.corpus), rules), catalog, args.threshold)
    save_graph(args.out, graph)
    log.info("graph: %d nodes, %d edges", len(graph.nodes), len(graph.edges))


def cmd_recommend(args):
    tree, _ = load_model(args.model)
    graph = load_graph(args.graph)
    catalog = _catalog(args)
    profiles = read_profiles(args.profile)
    config = PipelineConfig(top_k=args.top_k, min_probability=args.min_probability, match_threshold=args.threshold)
    counter = DemandCounter(args.counters) if args.counters else None
    results = batch_recommend(profiles, tree, graph, catalog, config, load_aliases(args.aliases), counter)
    text = dumps_recommendations(results)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    failed = [r for r in results if hasattr(r, "error")]
    for r in failed:
        log.error("profile %s: %s", r.profile_id, r.error)
    return 1 if failed else 0


def cmd_gap_report(args):
    graph = load_graph(args.graph)
    counts = DemandCounter(args.counters).read()
    text = gap_report(graph, counts).to_csv()
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)


def cmd_gen_data(args):
    dataset = generate_synthetic_dataset(args.seed, args.rows, args.classes)
    write_dataset(dataset, args.out)


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="healthadvisor", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("train", help="train a decision tree (and OneR baseline) from a CSV")
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--max-depth", type=_positive, default=16)
    p.add_argument("--min-gain", type=float, default=0.0)
    p.add_argument("--laplace", action="store_true", help="add-one smoothing of leaf frequencies")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="print accuracy and RMSE of a model on a CSV")
    p.add_argument("--data", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--baseline", choices=["oner"])
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("build-graph", help="extract the concept graph and attach wearables")
    p.add_argument("--corpus", required=True, help="directory of *.txt documents")
    p.add_argument("--rules", required=True)
    p.add_argument("--catalog", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--synonyms", help="token,canonical CSV (default: bundled table)")
    p.add_argument("--threshold", type=float, default=0.5)
    p.set_defaults(func=cmd_build_graph)

    p = sub.add_parser("recommend", help="recommend wearables for each profile in a CSV")
    p.add_argument("--model", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--catalog", required=True)
    p.add_argument("--profile", required=True)
    p.add_argument("--out")
    p.add_argument("--aliases", help="class_name,canonical_id CSV (default: bundled table)")
    p.add_argument("--counters", help="demand counter file to update")
    p.add_argument("--synonyms")
    p.add_argument("--top-k", type=_positive, default=3)
    p.add_argument("--min-probability", type=float, default=0.1)
    p.add_argument("--threshold", type=float, default=0.5)
    p.set_defaults(func=cmd_recommend)

    p = sub.add_parser("gap-report", help="list measurements without a wearable")
    p.add_argument("--graph", required=True)
    p.add_argument("--counters", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gap_report)

    p = sub.add_parser("gen-data", help="write a seeded synthetic training CSV")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--rows", type=_positive, required=True)
    p.add_argument("--classes", type=_positive, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_data)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args) or 0
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename or exc}", file=sys.stderr)
    except IsADirectoryError as exc:
        print(f"error: expected a file: {exc.filename}", file=sys.stderr)
    except (HealthAdvisorError, ValueError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
