"""Command line entry point: ``lidbounds {synth,lid,attack,sweep,stats}``.

Exit status is 0 on success, 2 for argument errors and 3 for I/O or file
format errors.
"""
from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import datasets, experiment
from .attack import accuracy, attack_direction, save_directions
from .datasets import SynthSpec
from .errors import FormatError
from .knn import knn_member
from .lid import mle_lid

EXIT_ARGS = 2
EXIT_IO = 3


def _delta_list(text):
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def _add_data_args(p, need_dataset=True):
    p.add_argument("--dataset", help="data file; MNIST images path, CIFAR batches comma-separated, or CSV")
    p.add_argument("--format", choices=experiment.FORMATS, default="synth")
    p.add_argument("--labels", help="MNIST label file, or 'last-column' for labeled CSV")
    p.add_argument("--synth-dim", type=int, default=4, help="intrinsic dimension for --format synth")
    p.add_argument("--ambient-dim", type=int, default=50)
    p.add_argument("--synth-n", type=int, default=5000)
    p.add_argument("--synth-kind", choices=datasets.SYNTH_KINDS, default="uniform-ball-subspace")
    p.add_argument("--seed", type=int, default=0)


def _add_sweep_args(p):
    p.add_argument("--n", type=int, default=1000, help="subsample size")
    p.add_argument("--k", type=int, default=100, help="neighborhood size")
    p.add_argument("--nq", type=int, default=50, help="number of query points")
    p.add_argument("--epochs", type=int, default=20)
    p.add_argument("--lr", type=float, default=0.5)


def build_parser():
    parser = argparse.ArgumentParser(prog="lidbounds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="write a synthetic subspace dataset as CSV")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--d", type=int, default=50)
    p.add_argument("--n", type=int, default=5000)
    p.add_argument("--kind", choices=datasets.SYNTH_KINDS, default="uniform-ball-subspace")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("lid", help="MLE LID estimates for points of a dataset")
    _add_data_args(p)
    p.add_argument("--n", type=int, help="subsample size (default: all points)")
    p.add_argument("--k", type=int, default=100)
    p.add_argument("--nq", type=int, help="estimate at this many random points only")
    p.add_argument("--out", required=True)

    p = sub.add_parser("attack", help="train the surrogate and write attack directions for the sweep queries")
    _add_data_args(p)
    _add_sweep_args(p)
    p.add_argument("--out", required=True)

    p = sub.add_parser("sweep", help="run the delta sweep and write CSV, plot data and metadata")
    _add_data_args(p)
    _add_sweep_args(p)
    p.add_argument("--delta-grid", type=_delta_list, default=experiment.DEFAULT_DELTAS)
    p.add_argument("--eta-grid", type=int, default=experiment.DEFAULT_ETA_GRID)
    p.add_argument("--directions", help="CSV of unit directions, one row per query")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)

    p = sub.add_parser("stats", help="direction fractions of a sweep CSV")
    p.add_argument("csv_path")
    return parser


def _config(args, **extra) -> experiment.ExperimentConfig:
    synth = None
    if args.format == "synth":
        synth = SynthSpec(args.synth_dim, args.ambient_dim, args.synth_n, args.synth_kind, args.seed)
    return experiment.ExperimentConfig(
        dataset=args.dataset, format=args.format, synth=synth, labels_path=args.labels,
        seed=args.seed, **extra,
    )


def _cmd_synth(args):
    data = datasets.generate_synthetic(SynthSpec(args.m, args.d, args.n, args.kind, args.seed))
    datasets.write_csv(data, args.out)
    print(f"wrote {data.n} x {data.d} points to {args.out}")


def _cmd_lid(args):
    config = _config(args, n=args.n or 2, k=2, n_q=1)
    data = experiment.load_dataset(config)
    if args.n:
        data = datasets.subsample(data, args.n, args.seed)
    if not 2 <= args.k < data.n:
        raise ValueError(f"k must satisfy 2 <= k < n={data.n}")
    index = np.arange(data.n)
    if args.nq:
        if args.nq > data.n:
            raise ValueError("nq exceeds the number of points")
        index = np.sort(np.random.default_rng(args.seed).choice(data.n, args.nq, replace=False))
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["index", "lid", "k", "r_max"])
        for i in index:
            est = mle_lid(knn_member(data, int(i), args.k))
            writer.writerow([int(i), repr(est.value), est.k, repr(est.r_max)])
    print(f"wrote {len(index)} estimates to {args.out}")


def _cmd_attack(args):
    config = _config(args, n=args.n, k=args.k, n_q=args.nq, epochs=args.epochs, lr=args.lr)
    data = experiment.load_dataset(config)
    sub, queries = experiment.select_queries(config, data)
    if sub.labels is None:
        raise ValueError("the attack surrogate needs labeled data")
    model = experiment.surrogate_for(config, sub)
    dirs = np.array([attack_direction(model, sub.points[q], int(sub.labels[q])) for q in queries])
    save_directions(dirs, args.out)
    print(f"surrogate training accuracy {accuracy(model, sub):.4f}; wrote {len(dirs)} directions to {args.out}")


def _cmd_sweep(args):
    config = _config(args, n=args.n, k=args.k, n_q=args.nq, delta_grid=args.delta_grid,
                     eta_grid_size=args.eta_grid, out=args.out, directions=args.directions,
                     epochs=args.epochs, lr=args.lr)
    result = experiment.run_sweep(config, workers=args.workers)
    out = Path(args.out)
    experiment.emit_csv(result.rows, out)
    experiment.emit_plotdata(result.rows, out.with_suffix(".plot.csv"))
    experiment.emit_metadata(result.metadata, out.with_suffix(".meta.json"))
    stats = experiment.direction_stats(result.rows)
    print(f"wrote {len(result.rows)} rows to {out}; toward fraction {stats.toward:.4f}")


def _cmd_stats(args):
    stats = experiment.direction_stats(experiment.read_csv(args.csv_path))
    print(f"rows={stats.total} toward={stats.toward:.6f} away={stats.away:.6f} boundary={stats.boundary:.6f}")


COMMANDS = {"synth": _cmd_synth, "lid": _cmd_lid, "attack": _cmd_attack,
            "sweep": _cmd_sweep, "stats": _cmd_stats}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except (OSError, FormatError) as exc:
        print(f"lidbounds: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"lidbounds: error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    return 0


if __name__ == "__main__":
    sys.exit(main())
