"""Command-line front end.

Subcommands::

    graph-gen      write a random Erdos-Renyi graph to an edge-list file
    check-chordal  test a graph file for chordality
    triangulate    write a chordal supergraph and its elimination order
    sample         draw matrices for a graph and store them as CSV
    stats          summarise stored samples at chosen entry positions
    experiment     run a canned comparison of the generators

Exit codes: 0 success; 1 ``check-chordal`` saw a non-chordal graph;
2 bad parameters or unreadable input; 3 the uniform method was asked
for a non-chordal graph; 4 resampling exhausted without a usable draw.

Outputs are deterministic for fixed arguments: no timestamps, fixed
file order, fixed float formatting.  ``sample`` and ``experiment``
compute the whole batch before writing anything, so a success exit
never leaves a partial batch behind.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

import numpy as np

from .graph import (
    NotChordalError,
    UndirectedGraph,
    erdos_renyi,
    max_cardinality_search,
    triangulate,
)
from .io import (
    ParseError,
    graph_to_text,
    read_data_matrix,
    read_graph,
    read_matrix,
    summarize_entries,
    write_data_matrix,
    write_graph,
    write_histogram_csv,
    write_matrix,
    write_scatter_csv,
    write_values_csv,
)
from .samplers import METHODS, SamplerConfig, SamplerError, sample_batch

__all__ = ["main", "build_parser"]

# Namespace tag for the graph stream derived from --seed by `sample
# --er` and by experiments; keeps it disjoint from the sample streams.
_GRAPH_STREAM = 3

_EXPERIMENTS = ("elliptope3", "margdens", "margdens-chordal", "chain50")


def _graph_sha256(g: UndirectedGraph) -> str:
    return hashlib.sha256(graph_to_text(g).encode("utf-8")).hexdigest()


def _write_metadata(path, items) -> None:
    # Flat key=value lines in insertion order; no timestamps, so equal
    # runs produce equal bytes.
    lines = [f"{key}={value}" for key, value in items]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _derived_er_graph(p: int, d: float, seed: int) -> UndirectedGraph:
    return erdos_renyi(p, d, np.random.default_rng([seed, _GRAPH_STREAM]))


def _parse_position(label: str):
    parts = label.split("-")
    if len(parts) != 2:
        raise ValueError(f"position {label!r} must look like i-j")
    try:
        i, j = int(parts[0]), int(parts[1])
    except ValueError:
        raise ValueError(f"position {label!r} must hold two integers")
    return (i, j)


def cmd_graph_gen(args) -> int:
    g = erdos_renyi(args.p, args.d, args.seed)
    write_graph(args.out, g)
    print(f"wrote {args.out}: p={g.p} edges={g.edge_count}")
    return 0


def cmd_check_chordal(args) -> int:
    g = read_graph(args.graph)
    _, perfect = max_cardinality_search(g)
    if perfect:
        print("chordal")
        return 0
    print("not-chordal")
    return 1


def cmd_triangulate(args) -> int:
    g = read_graph(args.graph)
    gp, order = triangulate(g)
    write_graph(args.out, gp)
    print(f"fill-edges: {gp.edge_count - g.edge_count}")
    print("order: " + " ".join(str(v) for v in order))
    return 0


def _resolve_sample_graph(args):
    if args.graph is not None:
        return read_graph(args.graph), [("graph_source", args.graph)]
    p_text, d_text = args.er
    try:
        p = int(p_text)
        d = float(d_text)
    except ValueError:
        raise ValueError(f"--er expects an integer P and a float D, got {p_text} {d_text}")
    g = _derived_er_graph(p, d, args.seed)
    return g, [("graph_source", "er"), ("er_d", format(d, ".17g"))]


def cmd_sample(args) -> int:
    g, source_items = _resolve_sample_graph(args)
    cfg = SamplerConfig(seed=args.seed, sigma_eps=args.sigma_eps, burn_in=args.burn_in)
    batch = sample_batch(
        g, cfg, args.n, args.method, as_correlation=args.correlation
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_graph(out / "graph.txt", g)
    if args.stacked:
        write_data_matrix(out / "samples.csv", batch.reshape(args.n * g.p, g.p))
    else:
        for k in range(args.n):
            write_matrix(out / f"sample_{k:05d}.csv", batch[k])
    items = [
        ("command", "sample"),
        ("method", args.method),
        ("n", args.n),
        ("seed", args.seed),
        ("sigma_eps", format(args.sigma_eps, ".17g")),
        ("burn_in", args.burn_in),
        ("p", g.p),
        ("edges", g.edge_count),
        ("graph_sha256", _graph_sha256(g)),
        ("correlation", str(bool(args.correlation)).lower()),
        ("stacked", str(bool(args.stacked)).lower()),
    ]
    items.extend(source_items)
    _write_metadata(out / "metadata.txt", items)
    print(f"wrote {args.n} samples to {out}")
    return 0


def _load_stored_batch(in_dir: Path, graph):
    files = sorted(in_dir.glob("sample_*.csv"))
    if files:
        mats = [read_matrix(f) for f in files]
        p = mats[0].shape[0]
        for f, m in zip(files, mats):
            if m.shape[0] != p:
                raise ValueError(f"{f}: size {m.shape[0]} differs from first sample {p}")
        return np.stack(mats)
    stacked = in_dir / "samples.csv"
    if stacked.exists():
        if graph is None:
            raise ValueError("stacked samples need a graph to recover the matrix size")
        rows = read_data_matrix(stacked)
        p = graph.p
        if rows.shape[1] != p or rows.shape[0] % p != 0:
            raise ValueError(
                f"{stacked}: shape {rows.shape} does not stack {p}x{p} matrices"
            )
        return rows.reshape(rows.shape[0] // p, p, p)
    raise ValueError(f"no sample_*.csv or samples.csv under {in_dir}")


def cmd_stats(args) -> int:
    in_dir = Path(args.input)
    graph = None
    graph_path = args.graph if args.graph is not None else in_dir / "graph.txt"
    if Path(graph_path).exists():
        graph = read_graph(graph_path)
    batch = _load_stored_batch(in_dir, graph)
    if args.positions:
        positions = [_parse_position(lbl) for lbl in args.positions]
    elif graph is not None:
        positions = [(i, j) for i, j in graph.sorted_edges()]
    else:
        raise ValueError("no --positions given and no graph to take edges from")
    scatter_pair = None
    if args.scatter:
        scatter_pair = (_parse_position(args.scatter[0]), _parse_position(args.scatter[1]))
    summary = summarize_entries(batch, positions, scatter_pair=scatter_pair)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_values_csv(out / "values.csv", summary)
    write_histogram_csv(out / "histogram.csv", summary)
    if scatter_pair is not None:
        write_scatter_csv(out / "scatter.csv", summary)
    print(f"summarised {summary.n_samples} samples at {len(positions)} positions")
    return 0


def _run_methods(g, methods, args, out, positions, scatter_pair=None):
    cfg = SamplerConfig(seed=args.seed, sigma_eps=args.sigma_eps, burn_in=args.burn_in)
    written = []
    for method in methods:
        batch = sample_batch(
            g, cfg, args.n, method, as_correlation=(method == "diagdom")
        )
        summary = summarize_entries(batch, positions, scatter_pair=scatter_pair)
        if scatter_pair is not None:
            name = f"scatter_{method}.csv"
            write_scatter_csv(out / name, summary)
            written.append(name)
        else:
            write_values_csv(out / f"values_{method}.csv", summary)
            write_histogram_csv(out / f"histogram_{method}.csv", summary)
            written.extend([f"values_{method}.csv", f"histogram_{method}.csv"])
    return written


def cmd_experiment(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    extra = []
    if args.name == "elliptope3":
        # Scatter of the two free entries of a 3-chain: the uniform law
        # fills the unit disk evenly, the others concentrate.
        g = UndirectedGraph.chain(3)
        methods = ("diagdom", "port", "uniform")
        written = _run_methods(
            g, methods, args, out, [(1, 2), (2, 3)], scatter_pair=((1, 2), (2, 3))
        )
    elif args.name == "margdens":
        # Marginal edge-entry densities on a sparse random graph; the
        # uniform method does not apply unless the draw is chordal, so
        # its stand-in here is the triangulate-then-project method.
        g = _derived_er_graph(50, 0.05, args.seed)
        methods = ("diagdom", "port", "portchol")
        written = _run_methods(g, methods, args, out, list(g.sorted_edges()))
    elif args.name == "margdens-chordal":
        base = _derived_er_graph(50, 0.05, args.seed)
        g, _ = triangulate(base)
        extra.append(("fill_edges", g.edge_count - base.edge_count))
        methods = ("diagdom", "port", "uniform")
        written = _run_methods(g, methods, args, out, list(g.sorted_edges()))
    elif args.name == "chain50":
        g = UndirectedGraph.chain(50)
        methods = ("diagdom", "port", "uniform")
        written = _run_methods(g, methods, args, out, list(g.sorted_edges()))
    else:
        raise ValueError(f"unknown experiment {args.name!r}")
    write_graph(out / "graph.txt", g)
    items = [
        ("command", "experiment"),
        ("experiment", args.name),
        ("methods", ",".join(methods)),
        ("n", args.n),
        ("seed", args.seed),
        ("sigma_eps", format(args.sigma_eps, ".17g")),
        ("burn_in", args.burn_in),
        ("p", g.p),
        ("edges", g.edge_count),
        ("graph_sha256", _graph_sha256(g)),
    ]
    items.extend(extra)
    _write_metadata(out / "metadata.txt", items)
    print(f"experiment {args.name}: wrote {len(written)} files to {out}")
    return 0


def _add_chain_options(sub) -> None:
    sub.add_argument("--sigma-eps", type=float, default=0.5, dest="sigma_eps",
                     help="proposal noise scale of the hemisphere chains")
    sub.add_argument("--burn-in", type=int, default=1000, dest="burn_in",
                     help="chain steps discarded before the retained state")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphcorr",
        description="Random SPD and correlation matrices with graph zero patterns.",
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)

    sub = subs.add_parser("graph-gen", help="write a random Erdos-Renyi graph")
    sub.add_argument("--p", type=int, required=True, help="number of vertices")
    sub.add_argument("--d", type=float, required=True, help="edge probability")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--out", required=True, help="output edge-list file")
    sub.set_defaults(func=cmd_graph_gen)

    sub = subs.add_parser("check-chordal", help="test an edge-list file for chordality")
    sub.add_argument("graph", help="edge-list file")
    sub.set_defaults(func=cmd_check_chordal)

    sub = subs.add_parser("triangulate", help="write a chordal supergraph")
    sub.add_argument("graph", help="edge-list file")
    sub.add_argument("--out", required=True, help="output edge-list file")
    sub.set_defaults(func=cmd_triangulate)

    sub = subs.add_parser("sample", help="draw matrices and store them as CSV")
    src = sub.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="edge-list file with the zero pattern")
    src.add_argument("--er", nargs=2, metavar=("P", "D"),
                     help="Erdos-Renyi graph derived from --seed")
    sub.add_argument("--method", required=True, choices=METHODS)
    sub.add_argument("--n", type=int, default=1)
    sub.add_argument("--seed", type=int, default=0)
    _add_chain_options(sub)
    sub.add_argument("--correlation", action="store_true",
                     help="rescale diagdom output to unit diagonal")
    sub.add_argument("--stacked", action="store_true",
                     help="write one samples.csv instead of per-sample files")
    sub.add_argument("--out", required=True, help="output directory")
    sub.set_defaults(func=cmd_sample)

    sub = subs.add_parser("stats", help="summarise stored samples")
    sub.add_argument("--in", dest="input", required=True,
                     help="directory holding sample CSVs")
    sub.add_argument("--graph", help="edge-list file (default: graph.txt in --in)")
    sub.add_argument("--positions", nargs="*", default=None, metavar="I-J",
                     help="entry positions to track (default: graph edges)")
    sub.add_argument("--scatter", nargs=2, metavar=("I-J", "K-L"),
                     help="two positions whose value pairs go to scatter.csv")
    sub.add_argument("--out", required=True, help="output directory")
    sub.set_defaults(func=cmd_stats)

    sub = subs.add_parser("experiment", help="run a canned generator comparison")
    sub.add_argument("name", choices=_EXPERIMENTS)
    sub.add_argument("--n", type=int, default=5000)
    sub.add_argument("--seed", type=int, default=0)
    _add_chain_options(sub)
    sub.add_argument("--out", required=True, help="output directory")
    sub.set_defaults(func=cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotChordalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SamplerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
