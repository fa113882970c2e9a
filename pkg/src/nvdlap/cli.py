"""Command line entry point: ``nvdlap <command> ...``.

Exit status is 0 on success, 1 on bad input and 2 when ``--strict`` is set
and a solver failed to converge.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from collections import defaultdict
from contextlib import contextmanager

import numpy as np

from . import bench, dataio
from .generators import GenSpec, generate, gen_sbm
from .metrics import ge_distance, group_vectors
from .solvers import METHODS, SolverConfig, solve_lap

EXIT_OK, EXIT_INPUT, EXIT_NONCONVERGED = 0, 1, 2


class NotConverged(Exception):
    pass


@contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _read(path, reader, *args):
    with open(path, encoding="utf-8") as fh:
        return reader(fh, *args)


def _config(args) -> SolverConfig:
    return SolverConfig(rel_tolerance=args.tol, max_iters=args.max_iters, seed=args.seed,
                        aug_extra=args.aug_extra)


def _check(args, report):
    if not report.converged:
        msg = (f"{report.method} did not converge: residual {report.residual:.3e} "
               f"after {report.iterations} iterations")
        if args.strict:
            raise NotConverged(msg)
        logging.warning(msg)


def cmd_generate(args):
    model = args.model
    if model == "er":
        if args.m is None:
            raise ValueError("--m is required for er")
        params = {"m": args.m}
    elif model == "ba":
        if args.k is None:
            raise ValueError("--k is required for ba")
        params = {"k": args.k}
    elif model == "ws":
        if args.k is None:
            raise ValueError("--k is required for ws")
        params = {"k": args.k, "p": args.p}
    else:
        if args.pin is None or args.pout is None:
            raise ValueError("--pin and --pout are required for sbm")
        params = {"groups": args.groups, "p_in": args.pin, "p_out": args.pout}
    if model == "sbm":
        g, labels = gen_sbm(args.n, args.groups, args.pin, args.pout, args.seed)
        if args.labels_out:
            with _open_out(args.labels_out) as fh:
                for v, c in enumerate(labels.tolist()):
                    fh.write(f"{v} {c}\n")
    else:
        g = generate(GenSpec(model, args.n, params, args.seed))
    with _open_out(args.out) as fh:
        dataio.write_graph(g, fh)
    logging.info("generated %s graph: n=%d m=%d", model, g.n, g.m)


def cmd_distance(args):
    el = _read(args.graph, dataio.read_edge_list, args.unweighted)
    lm = el.label_map
    va = _read(args.vec_a, dataio.read_node_vector, lm)
    vb = _read(args.vec_b, dataio.read_node_vector, lm)
    for name, vec in (("vec-a", va), ("vec-b", vb)):
        if vec.missing:
            logging.warning("%s: %d nodes missing, defaulted to 0", name, vec.missing)
    d, report = ge_distance(el.graph, va.values, vb.values, args.method, _config(args))
    print(f"{d:.12g}")
    _check(args, report)


def cmd_resistance(args):
    el = _read(args.graph, dataio.read_edge_list, args.unweighted)
    lm = el.label_map
    for lab in (args.u, args.v):
        if lab not in lm:
            raise ValueError(f"unknown node {lab!r}")
    u, v = lm[args.u], lm[args.v]
    g = el.graph
    if u == v:
        print("0")
        return
    if g.components.label[u] != g.components.label[v]:
        raise ValueError(f"nodes {args.u} and {args.v} are disconnected: resistance is infinite")
    y = np.zeros(g.n)
    y[u], y[v] = 1.0, -1.0
    report = solve_lap(g, y, args.method, _config(args))
    print(f"{max(0.0, float(y @ report.x)):.12g}")
    _check(args, report)


def cmd_polarization(args):
    el = _read(args.graph, dataio.read_edge_list, args.unweighted)
    groups = _read(args.groups, dataio.read_groups, el.label_map)
    if len(groups.classes) != 2:
        raise ValueError(f"polarization needs two classes, found {len(groups.classes)}")
    a, b = group_vectors(groups, el.graph.n, normalize=not args.no_normalize)
    d, report = ge_distance(el.graph, a, b, args.method, _config(args))
    print(f"{d:.12g}")
    _check(args, report)


def _int_list(text):
    return [int(float(x)) for x in text.split(",") if x]


def _float_list(text):
    return [float(x) for x in text.split(",") if x]


def cmd_bench(args):
    methods = [m for m in args.methods.split(",") if m]
    protocol = bench.RunProtocol(repetitions=args.reps, warmup=args.warmup)
    cfg = _config(args)
    if args.kind == "size":
        if not args.sizes:
            raise ValueError("--sizes is required for a size sweep")
        records = bench.bench_size_sweep(args.model, _int_list(args.sizes), args.avg_degree,
                                         methods, protocol, args.seed, cfg)
    else:
        degrees = _float_list(args.degrees) if args.degrees else bench.DENSITY_DEGREES
        records = bench.bench_density_sweep(args.model, args.n, degrees, methods, protocol,
                                            args.seed, cfg)
    with _open_out(args.out) as fh:
        bench.emit_results(records, fh, args.format)
    if args.strict and any(r.converged_fraction < 1.0 for r in records):
        raise NotConverged("some benchmark runs did not converge")


def cmd_fit(args):
    with open(args.input, encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise ValueError(f"{args.input}: no rows")
    for col in (args.x, args.y):
        if col not in rows[0]:
            raise ValueError(f"{args.input}: no column {col!r}")
    groups = defaultdict(list)
    for row in rows:
        key = row.get("method", "") if args.by_method else ""
        if args.method and row.get("method") != args.method:
            continue
        groups[key].append((float(row[args.x]), float(row[args.y])))
    if not groups:
        raise ValueError("no rows left after filtering")
    for key, pts in groups.items():
        xs, ys = zip(*pts)
        exp, icpt, r2 = bench.fit_exponent(xs, ys)
        label = f"{key}\t" if key else ""
        print(f"{label}exponent={exp:.4f}\tintercept={icpt:.4f}\tr2={r2:.4f}\tpoints={len(xs)}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nvdlap", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--method", choices=METHODS, default="approx_chol")
    solver.add_argument("--tol", type=float, default=1e-10, help="relative residual target")
    solver.add_argument("--max-iters", type=int, default=None)
    solver.add_argument("--seed", type=int, default=0)
    solver.add_argument("--aug-extra", type=int, default=None,
                        help="off-tree edges for aug_tree (default ceil(sqrt(n)))")
    solver.add_argument("--strict", action="store_true", help="exit 2 on non-convergence")
    solver.add_argument("--unweighted", action="store_true", help="force unit weights")

    p = sub.add_parser("generate", help="write a random graph as an edge list")
    p.add_argument("--model", choices=("er", "ba", "ws", "sbm"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, help="ER edge count")
    p.add_argument("--k", type=int, help="BA attachments / WS lattice degree")
    p.add_argument("--p", type=float, default=0.1, help="WS rewiring probability")
    p.add_argument("--groups", type=int, default=4, help="SBM group count")
    p.add_argument("--pin", type=float)
    p.add_argument("--pout", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-")
    p.add_argument("--labels-out", help="SBM only: write 'node group' lines here")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("distance", parents=[solver], help="GE distance of two node vectors")
    p.add_argument("--graph", required=True)
    p.add_argument("--vec-a", required=True)
    p.add_argument("--vec-b", required=True)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("resistance", parents=[solver], help="effective resistance")
    p.add_argument("--graph", required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.set_defaults(func=cmd_resistance)

    p = sub.add_parser("polarization", parents=[solver], help="two-group polarization score")
    p.add_argument("--graph", required=True)
    p.add_argument("--groups", required=True)
    p.add_argument("--no-normalize", action="store_true",
                   help="use raw indicators instead of size-normalized ones")
    p.set_defaults(func=cmd_polarization)

    p = sub.add_parser("bench", parents=[solver],
                       help="size or density timing sweep")
    p.add_argument("kind", choices=("size", "density"))
    p.add_argument("--model", choices=("er", "ba", "ws", "sbm"), default="er")
    p.add_argument("--methods", default=",".join(m for m in METHODS if m != "baseline"))
    p.add_argument("--sizes", help="comma separated node counts")
    p.add_argument("--degrees", help="comma separated average degrees")
    p.add_argument("--avg-degree", type=float, default=10.0)
    p.add_argument("--n", type=int, default=10_000, help="node count for density sweeps")
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--warmup", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("fit", help="log-log exponent fit of a results CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--x", default="n")
    p.add_argument("--y", default="mean_time")
    p.add_argument("--method", help="only rows with this method")
    p.add_argument("--no-group", dest="by_method", action="store_false",
                   help="fit all rows together instead of one fit per method")
    p.set_defaults(func=cmd_fit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; 2 is reserved for non-convergence
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        args.func(args)
    except NotConverged as exc:
        print(f"nvdlap: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except (ValueError, IndexError, OSError, KeyError) as exc:
        print(f"nvdlap: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
