"""Command-line entry point.

Usage:
    fmodularity mi --input P.csv --family kl
    fmodularity modularity --edges g.tsv --family js [--out report.json]
    fmodularity newman --adjacency A.csv --partition part.txt [--null newman]
    fmodularity bipartition --adjacency A.csv [--null unbiased]
    fmodularity sbm-gen --m 5 --n 40 --alpha 0.1 --edges 40000 --seed 1 --out g.tsv
    fmodularity contract --dist P.csv --groups groups.json --merge 0 1 --out P2.csv
    fmodularity experiment --config exp.json --out results.csv

Exit codes: 0 on success, 2 on invalid input or config, 3 on numerical
domain errors (for example an infinite divergence).
"""

import argparse
import json
import sys

from .experiments import (
    ExperimentConfig,
    TrialError,
    export_heatmaps,
    export_json,
    iter_experiment,
    theoretical_mi,
    CSV_COLUMNS,
)
from .families import NumericalDomainError, available_families
from .fileio import (
    read_edge_list,
    read_groups,
    read_matrix_csv,
    read_partition,
    write_edge_list,
    write_groups,
    write_matrix_csv,
)
from .modularity import f_modularity, newman_modularity, tvd_bipartition
from .network import frequency_from_graph, induce_bipartite
from .blockmodel import sample_graph, sbm_distribution
from .validation import check_distribution

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERIC = 3


def _add_family_arg(p):
    p.add_argument(
        "--family",
        required=True,
        help=f"divergence family: one of {', '.join(available_families())}",
    )


def _cmd_mi(args):
    P = check_distribution(read_matrix_csv(args.input), name=args.input)
    print(repr(theoretical_mi(P, args.family)))
    return EXIT_OK


def _load_frequency(args):
    """Returns (FrequencyMatrix, u_labels, v_labels) from --edges or --adjacency."""
    if (args.edges is None) == (args.adjacency is None):
        raise ValueError("provide exactly one of --edges or --adjacency")
    if args.edges is not None:
        g, u_labels, v_labels = read_edge_list(args.edges)
        return frequency_from_graph(g), u_labels, v_labels
    A = read_matrix_csv(args.adjacency)
    g = induce_bipartite(A)
    n = A.shape[0]
    return (
        frequency_from_graph(g),
        [f"u_{i}" for i in range(n)],
        [f"v_{i}" for i in range(n)],
    )


def _cmd_modularity(args):
    fm, u_labels, v_labels = _load_frequency(args)
    report = f_modularity(
        fm,
        args.family,
        theta=args.theta,
        epsilon=args.epsilon,
        rank=args.rank,
        method=args.method,
        nmf_max_iter=args.nmf_max_iter,
        nmf_tol=args.nmf_tol,
        seed=args.seed,
    )
    print(repr(report.value))
    if args.out:
        payload = report.to_dict()
        payload["config"] = {
            "input": args.edges if args.edges else args.adjacency,
            "theta": args.theta,
            "epsilon": args.epsilon,
            "rank": args.rank,
            "method": args.method,
            "nmf_max_iter": args.nmf_max_iter,
            "nmf_tol": args.nmf_tol,
            "seed": args.seed,
        }
        payload["u_labels"] = u_labels
        payload["v_labels"] = v_labels
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def _cmd_newman(args):
    A = read_matrix_csv(args.adjacency)
    fm = frequency_from_graph(induce_bipartite(A))
    partition = read_partition(args.partition)
    print(repr(newman_modularity(fm, partition, null=args.null)))
    return EXIT_OK


def _cmd_bipartition(args):
    A = read_matrix_csv(args.adjacency)
    fm = frequency_from_graph(induce_bipartite(A))
    s, objective = tvd_bipartition(fm, null=args.null)
    print(" ".join(str(int(x)) for x in s))
    print(repr(objective))
    return EXIT_OK


def _cmd_sbm_gen(args):
    P = sbm_distribution(args.m, args.n, args.alpha)
    g = sample_graph(P, args.edges, args.seed)
    write_edge_list(args.out, g)
    if args.dist:
        write_matrix_csv(args.dist, P)
    return EXIT_OK


def _cmd_contract(args):
    from .blockmodel import contract

    P = check_distribution(read_matrix_csv(args.dist), name=args.dist)
    groups = read_groups(args.groups)
    P2, groups2 = contract(P, groups, args.merge[0], args.merge[1])
    write_matrix_csv(args.out, P2)
    if args.groups_out:
        write_groups(args.groups_out, groups2)
    print(json.dumps(groups2))
    return EXIT_OK


def _cmd_experiment(args):
    with open(args.config, "r", encoding="utf-8") as fh:
        cfg = ExperimentConfig.from_dict(json.load(fh))
    if args.heatmaps:
        export_heatmaps(cfg, args.heatmaps)
    results = []
    from .experiments import _fmt

    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(CSV_COLUMNS) + "\n")
            for r in iter_experiment(cfg):
                results.append(r)
                fh.write(
                    ",".join(
                        [
                            r.family,
                            _fmt(r.alpha),
                            str(int(r.stage)),
                            _fmt(r.theory),
                            _fmt(r.baseline_mean),
                            _fmt(r.baseline_std),
                            _fmt(r.estimator_mean),
                            _fmt(r.estimator_std),
                        ]
                    )
                    + "\n"
                )
                fh.flush()
    except TrialError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc.cause, NumericalDomainError):
            return EXIT_NUMERIC
        return EXIT_INVALID
    if args.json:
        export_json(results, args.json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fmodularity",
        description="f-modularity of bipartite networks and its experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mi", help="mutual information of a distribution CSV")
    p.add_argument("--input", required=True, help="distribution matrix CSV")
    _add_family_arg(p)
    p.set_defaults(func=_cmd_mi)

    p = sub.add_parser("modularity", help="f-modularity of a graph")
    p.add_argument("--edges", help="TSV edge list: u<TAB>v<TAB>count")
    p.add_argument("--adjacency", help="symmetric adjacency CSV")
    _add_family_arg(p)
    p.add_argument("--theta", type=float, default=0.9)
    p.add_argument("--epsilon", type=float, default=1e-9)
    p.add_argument("--rank", type=int, default=None, help="fixed rank override")
    p.add_argument("--method", choices=["auto", "svd", "nmf"], default="auto")
    p.add_argument("--nmf-max-iter", type=int, default=500)
    p.add_argument("--nmf-tol", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write a JSON report here")
    p.set_defaults(func=_cmd_modularity)

    p = sub.add_parser("newman", help="Newman community score of a partition")
    p.add_argument("--adjacency", required=True)
    p.add_argument("--partition", required=True, help="one community id per line")
    p.add_argument("--null", choices=["unbiased", "newman"], default="newman")
    p.set_defaults(func=_cmd_newman)

    p = sub.add_parser("bipartition", help="two-community total-variation split")
    p.add_argument("--adjacency", required=True)
    p.add_argument("--null", choices=["unbiased", "newman"], default="unbiased")
    p.set_defaults(func=_cmd_bipartition)

    p = sub.add_parser("sbm-gen", help="sample a planted block-model graph")
    p.add_argument("--m", type=int, required=True, help="number of communities")
    p.add_argument("--n", type=int, required=True, help="vertices per community")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="edge-list TSV path")
    p.add_argument("--dist", help="also write the distribution CSV here")
    p.set_defaults(func=_cmd_sbm_gen)

    p = sub.add_parser("contract", help="merge two communities of a distribution")
    p.add_argument("--dist", required=True)
    p.add_argument("--groups", required=True, help="JSON list of vertex groups")
    p.add_argument("--merge", type=int, nargs=2, required=True, metavar=("I", "J"))
    p.add_argument("--out", required=True)
    p.add_argument("--groups-out", help="write the merged groups JSON here")
    p.set_defaults(func=_cmd_contract)

    p = sub.add_parser("experiment", help="run a contraction experiment sweep")
    p.add_argument("--config", required=True, help="experiment config JSON")
    p.add_argument("--out", required=True, help="summary CSV path")
    p.add_argument("--json", help="full results JSON path")
    p.add_argument("--heatmaps", help="directory for stage distribution CSVs")
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NumericalDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
