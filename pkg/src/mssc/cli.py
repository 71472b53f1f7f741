"""Command-line front end.

Exit codes: 0 success, 1 invalid configuration, 2 I/O failure, 3 candidate
is not a nontrivial local solution, 4 oracle enumeration cap exceeded.
Diagnostics go to stderr; results go to stdout or ``--output``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from .core import ControlParams, DataSet, dedup, mssc_objective, natural_clustering
from .incremental import algorithm1, algorithm2, recommend_gammas
from .io import DataFormatError, dumps, read_csv, write_csv
from .kmeans import km_run
from .verify import NONTRIVIAL, OracleCapExceeded, brute_force_global, verify_local

EXIT_OK, EXIT_CONFIG, EXIT_IO, EXIT_NOT_LOCAL, EXIT_CAP = 0, 1, 2, 3, 4


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _parse_gammas(text):
    if text == "auto":
        return "auto"
    try:
        parts = tuple(float(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid gammas {text!r}") from None
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("gammas needs three comma-separated numbers or 'auto'")
    return parts


def build_parser():
    parser = _Parser(prog="mssc", description="Incremental minimum sum-of-squares clustering")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("cluster", help="cluster a CSV data set")
    p.add_argument("input")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--algo", choices=("km", "obav1", "obav2"), default="obav2")
    p.add_argument("--gammas", type=_parse_gammas, default="auto",
                   help="gamma1,gamma2,gamma3 or 'auto' (default)")
    p.add_argument("--reduce", action="store_true", help="enable candidate reduction")
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--reduction-threshold", choices=("gamma", "eta"), default="gamma")
    p.add_argument("--tol-conv", type=float, default=0.0)
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--init-file", help="JSON file with a 'centroids' list (km only)")
    p.add_argument("--output", "-o")
    p.add_argument("--verbose", "-v", action="store_true", help="full per-level candidate sets")
    p.add_argument("--timing", action="store_true", help="include wall time in the trace")

    p = sub.add_parser("verify", help="classify a candidate centroid system")
    p.add_argument("input")
    p.add_argument("--candidate", required=True, help="JSON file with a 'centroids' list")
    p.add_argument("--tol", type=float, default=1e-9)

    p = sub.add_parser("oracle", help="exhaustive global optimum for small data sets")
    p.add_argument("input")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap", type=int, default=10**6)

    p = sub.add_parser("generate", help="write a synthetic Gaussian-blob data set")
    p.add_argument("output")
    p.add_argument("--m", type=int, default=100)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--blobs", type=int, default=3)
    p.add_argument("--spread", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _load_centroids(path, n_features):
    with open(path) as fh:
        payload = json.load(fh)
    centroids = payload.get("centroids") if isinstance(payload, dict) else payload
    try:
        x = np.asarray(centroids, dtype=np.float64)
    except (TypeError, ValueError):
        raise ConfigError(f"{path}: 'centroids' is not a numeric matrix") from None
    if x.ndim != 2 or x.shape[0] < 1 or x.shape[1] != n_features or not np.all(np.isfinite(x)):
        raise ConfigError(f"{path}: expected a non-empty list of {n_features}-dimensional centroids")
    return x


def _threads():
    try:
        return max(1, int(os.environ.get("MSSC_THREADS", "1")))
    except ValueError:
        raise ConfigError("MSSC_THREADS must be an integer") from None


def _params(args, m):
    gammas = recommend_gammas(m) if args.gammas == "auto" else args.gammas
    try:
        return ControlParams(
            *gammas,
            delta=args.delta,
            reduce=args.reduce,
            reduction_threshold=args.reduction_threshold,
            tol_conv=args.tol_conv,
            max_iter=args.max_iter,
            n_jobs=_threads(),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def cmd_cluster(args):
    X = read_csv(args.input)
    data = DataSet(X)
    n_distinct = dedup(data).m
    if args.k < 1 or args.k > n_distinct:
        raise ConfigError(f"k={args.k} must lie in [1, {n_distinct}] (number of distinct points)")
    if args.init_file and args.algo != "km":
        raise ConfigError("--init-file only applies to --algo km")

    t0 = time.perf_counter()
    if args.algo == "km":
        if args.init_file:
            x0 = _load_centroids(args.init_file, data.n)
            if x0.shape[0] != args.k:
                raise ConfigError(f"init file has {x0.shape[0]} centroids, --k is {args.k}")
        else:
            x0 = dedup(data).points[: args.k]
        if args.tol_conv < 0 or args.max_iter < 1:
            raise ConfigError("--tol-conv must be >= 0 and --max-iter >= 1")
        res = km_run(data, x0, args.tol_conv, args.max_iter)
        centers = res.centers
        trace = {
            "algorithm": "km",
            "iterations": res.iterations,
            "converged": res.converged,
            "objectives": res.history,
        }
        if args.timing:
            trace["wall_time"] = time.perf_counter() - t0
    else:
        params = _params(args, n_distinct)
        run = algorithm1 if args.algo == "obav1" else algorithm2
        out = run(data, args.k, params)
        centers, run_trace = out[0], out[-1]
        trace = run_trace.as_dict(verbose=args.verbose, timing=args.timing)
        trace["gammas"] = list(params.gammas)

    assignment = natural_clustering(data, centers)
    result = {
        "centroids": centers.tolist(),
        "clusters": [c.tolist() for c in assignment.clusters],
        "objective": mssc_objective(data, centers),
        "trace": trace,
    }
    _emit(dumps(result), args.output)
    print(f"objective {result['objective']:.17g} ({args.algo}, k={args.k})", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args):
    X = read_csv(args.input)
    x = _load_centroids(args.candidate, X.shape[1])
    report = verify_local(X, x, tol=args.tol)
    _emit(dumps(report.as_dict()), None)
    return EXIT_OK if report.classification == NONTRIVIAL else EXIT_NOT_LOCAL


def cmd_oracle(args):
    X = read_csv(args.input)
    if args.k < 1:
        raise ConfigError("--k must be >= 1")
    res = brute_force_global(X, args.k, cap=args.cap)
    payload = {
        "objective": res.objective,
        "centroids": res.centers.tolist(),
        "optima": [o.tolist() for o in res.optima],
        "partitions": res.n_partitions,
    }
    _emit(dumps(payload), None)
    return EXIT_OK


def cmd_generate(args):
    if args.m < 1 or args.n < 1 or args.blobs < 1:
        raise ConfigError("--m, --n and --blobs must be >= 1")
    rng = np.random.default_rng(args.seed)
    means = rng.uniform(-10, 10, size=(args.blobs, args.n))
    labels = rng.integers(args.blobs, size=args.m)
    X = means[labels] + args.spread * rng.standard_normal((args.m, args.n))
    write_csv(args.output, X)
    return EXIT_OK


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


_COMMANDS = {
    "cluster": cmd_cluster,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "generate": cmd_generate,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (OSError, DataFormatError) as exc:
        print(f"mssc: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OracleCapExceeded as exc:
        print(f"mssc: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ConfigError, ValueError, json.JSONDecodeError) as exc:
        print(f"mssc: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
