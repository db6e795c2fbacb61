"""delta-sweep experiment: perturb query points and track LID and its bounds.

For each query a, the reference c is its floor(k/2)-th nearest neighbor.
Each delta gives b = a + delta * |a - c| * direction, and one row records the
MLE LID of b together with the eta-averaged bounds computed from the KDE CDF
of the distances from b to every point in the subsample.
"""
from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from . import datasets
from .attack import attack_direction, load_directions, random_direction, train_surrogate
from .bounds import DEFAULT_ETA_GRID, averaged_bounds
from .datasets import Dataset, SynthSpec
from .distance_cdf import fit_cdf
from .errors import ZeroGradientError
from .geometry import Direction, direction_class, make_triple
from .knn import all_distances, knn_member
from .lid import mle_lid

DEFAULT_DELTAS = tuple(0.25 * i for i in range(1, 11))
FORMATS = ("mnist", "cifar10", "csv", "synth")


@dataclass(frozen=True)
class ExperimentConfig:
    dataset: str | None = None
    format: str = "synth"
    synth: SynthSpec | None = None
    labels_path: str | None = None
    n: int = 1000
    k: int = 100
    n_q: int = 50
    delta_grid: tuple = DEFAULT_DELTAS
    seed: int = 0
    eta_grid_size: int = DEFAULT_ETA_GRID
    out: str | None = None
    directions: str | None = None
    epochs: int = 20
    lr: float = 0.5

    def validate(self, n_available: int | None = None):
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")
        if self.format == "synth" and self.synth is None:
            raise ValueError("format 'synth' needs a SynthSpec")
        if self.format != "synth" and not self.dataset:
            raise ValueError(f"format {self.format!r} needs a dataset path")
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if not 2 <= self.k < self.n:
            raise ValueError(f"k must satisfy 2 <= k < n, got k={self.k}, n={self.n}")
        if not 1 <= self.n_q <= self.n:
            raise ValueError(f"n_q must be in [1, n], got {self.n_q}")
        grid = tuple(self.delta_grid)
        if not grid or any(not d > 0 for d in grid):
            raise ValueError("delta_grid must be nonempty and positive")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("delta_grid must be strictly ascending")
        if self.eta_grid_size < 1:
            raise ValueError("eta_grid_size must be >= 1")
        if n_available is not None and self.n > n_available:
            raise ValueError(f"n={self.n} exceeds the {n_available} available points")


@dataclass(frozen=True)
class SweepRow:
    dataset: str
    n: int
    k: int
    seed: int
    query_index: int
    delta: float
    y: float
    x: float
    theta: float
    direction_class: str
    F_b_y: float
    F_b_delta_x: float
    lid_estimate_b: float
    lower_mean: float
    upper_mean: float
    n_feasible_eta: int
    instability_count: int


CSV_COLUMNS = tuple(f.name for f in fields(SweepRow))
_INT_COLUMNS = {"n", "k", "seed", "query_index", "n_feasible_eta", "instability_count"}
_STR_COLUMNS = {"dataset", "direction_class"}


@dataclass
class SweepResult:
    rows: list
    metadata: dict = field(default_factory=dict)


def load_dataset(config: ExperimentConfig) -> Dataset:
    if config.format == "synth":
        return datasets.generate_synthetic(config.synth)
    if config.format == "mnist":
        labels = config.labels_path or _guess_mnist_labels(config.dataset)
        return datasets.load_mnist(config.dataset, labels)
    if config.format == "cifar10":
        return datasets.load_cifar10([p for p in config.dataset.split(",") if p])
    return datasets.load_csv(config.dataset, labels=config.labels_path == "last-column")


def _guess_mnist_labels(images_path: str) -> str:
    path = Path(images_path)
    guess = path.with_name(path.name.replace("images-idx3", "labels-idx1"))
    if guess == path:
        raise ValueError("cannot infer the MNIST label file; pass labels_path")
    return str(guess)


def _seeds(seed: int):
    subsample_seq, query_seq, train_seq, direction_seq = np.random.SeedSequence(seed).spawn(4)
    as_int = lambda s: int(s.generate_state(1, np.uint64)[0])
    return as_int(subsample_seq), as_int(query_seq), as_int(train_seq), direction_seq


def select_queries(config: ExperimentConfig, data: Dataset):
    """The seeded subsample and the positions of the n_q query points inside it."""
    config.validate(data.n)
    sub_seed, query_seed, _, _ = _seeds(config.seed)
    sub = datasets.subsample(data, config.n, sub_seed)
    queries = np.random.default_rng(query_seed).choice(sub.n, size=config.n_q, replace=False)
    return sub, queries


def surrogate_for(config: ExperimentConfig, sub: Dataset):
    _, _, train_seed, _ = _seeds(config.seed)
    return train_surrogate(sub, epochs=config.epochs, lr=config.lr, seed=train_seed)


def _query_rows(config, sub, name, qi, a_idx, direction, k_ref):
    a = sub.points[a_idx]
    ref = knn_member(sub, a_idx, k_ref)
    c = sub.points[ref.indices[-1]]
    rows = []
    for delta in config.delta_grid:
        triple = make_triple(a, direction, float(delta), c)
        dist_b = all_distances(sub, triple.b)
        cdf = fit_cdf(dist_b)
        lid_b = mle_lid(np.sort(dist_b, kind="stable")[:config.k]).value
        avg = averaged_bounds(triple, cdf, lid_b, config.eta_grid_size)
        f_y, f_dx = cdf.cdf(np.array([triple.y, triple.delta_x]))
        rows.append(SweepRow(
            dataset=name, n=sub.n, k=config.k, seed=config.seed, query_index=int(qi),
            delta=float(delta), y=triple.y, x=triple.x, theta=triple.theta,
            direction_class=direction_class(triple).value,
            F_b_y=float(f_y), F_b_delta_x=float(f_dx), lid_estimate_b=lid_b,
            lower_mean=avg.lower_mean, upper_mean=avg.upper_mean,
            n_feasible_eta=avg.n_feasible, instability_count=avg.n_unstable,
        ))
    return rows


def run_sweep(config: ExperimentConfig, data: Dataset | None = None, workers: int = 1) -> SweepResult:
    """Run the delta sweep; rows are ordered by (query, delta) whatever ``workers`` is.

    Query index in the rows refers to the position inside the subsample.
    """
    config.validate()
    data = data if data is not None else load_dataset(config)
    sub, queries = select_queries(config, data)
    direction_seq = _seeds(config.seed)[3]
    k_ref = max(1, config.k // 2)

    directions = np.empty((config.n_q, sub.d))
    source = "surrogate"
    fallbacks = 0
    if config.directions:
        loaded = load_directions(config.directions, d=sub.d)
        if len(loaded) < config.n_q:
            raise ValueError(f"direction file has {len(loaded)} rows, n_q is {config.n_q}")
        directions[:] = loaded[:config.n_q]
        source = "file"
    elif sub.labels is not None and len(np.unique(sub.labels)) >= 2:
        model = surrogate_for(config, sub)
        streams = direction_seq.spawn(config.n_q)
        for j, qi in enumerate(queries):
            try:
                directions[j] = attack_direction(model, sub.points[qi], int(sub.labels[qi]))
            except ZeroGradientError:
                directions[j] = random_direction(sub.d, np.random.default_rng(streams[j]))
                fallbacks += 1
    else:
        source = "random"
        streams = direction_seq.spawn(config.n_q)
        for j in range(config.n_q):
            directions[j] = random_direction(sub.d, np.random.default_rng(streams[j]))

    def work(j):
        return _query_rows(config, sub, data.name, queries[j], queries[j], directions[j], k_ref)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_query = list(pool.map(work, range(config.n_q)))
    else:
        per_query = [work(j) for j in range(config.n_q)]
    rows = [row for chunk in per_query for row in chunk]

    metadata = {
        "config": _config_dict(config),
        "n_points_loaded": data.n,
        "reference_rank": k_ref,
        "kde_sample": "all distances from b to the n subsampled points",
        "direction_source": source,
        "zero_gradient_fallbacks": fallbacks,
        "rows": len(rows),
        "rows_without_feasible_eta": sum(r.n_feasible_eta == 0 for r in rows),
        "unstable_evaluations": sum(r.instability_count for r in rows),
    }
    return SweepResult(rows, metadata)


def _config_dict(config):
    out = asdict(config)
    out["delta_grid"] = list(config.delta_grid)
    return out


@dataclass(frozen=True)
class DirectionStats:
    toward: float
    away: float
    boundary: float
    total: int


def direction_stats(rows) -> DirectionStats:
    rows = list(rows)
    if not rows:
        raise ValueError("direction_stats needs at least one row")
    counts = {d.value: 0 for d in Direction}
    for row in rows:
        counts[str(row.direction_class)] += 1
    total = len(rows)
    return DirectionStats(counts["toward"] / total, counts["away"] / total,
                          counts["boundary"] / total, total)


def _fmt(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_csv(rows, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([_fmt(getattr(row, col)) for col in CSV_COLUMNS])


def read_csv(path) -> list:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise ValueError(f"{path} does not have the sweep column layout")
        rows = []
        for rec in reader:
            values = {}
            for col in CSV_COLUMNS:
                raw = rec[col]
                if col in _STR_COLUMNS:
                    values[col] = raw
                elif col in _INT_COLUMNS:
                    values[col] = int(raw)
                else:
                    values[col] = float(raw)
            rows.append(SweepRow(**values))
    return rows


def _mean_se(values):
    values = [v for v in values if math.isfinite(v)]
    if not values:
        return math.nan, math.nan, 0
    m = math.fsum(values) / len(values)
    if len(values) < 2:
        return m, math.nan, len(values)
    var = math.fsum((v - m) ** 2 for v in values) / (len(values) - 1)
    return m, math.sqrt(var / len(values)), len(values)


PLOT_COLUMNS = ("delta", "n_rows", "n_bounded", "lower_mean", "lower_se",
                "lid_mean", "lid_se", "upper_mean", "upper_se")


def plot_table(rows) -> list:
    """Per-delta means and standard errors of the lower bound, LID estimate and upper bound."""
    by_delta = {}
    for row in rows:
        by_delta.setdefault(row.delta, []).append(row)
    table = []
    for delta in sorted(by_delta):
        group = by_delta[delta]
        bounded = [r for r in group if r.n_feasible_eta > 0]
        lo, lo_se, nb = _mean_se([r.lower_mean for r in bounded])
        up, up_se, _ = _mean_se([r.upper_mean for r in bounded])
        lid, lid_se, _ = _mean_se([r.lid_estimate_b for r in group])
        table.append(dict(zip(PLOT_COLUMNS, (delta, len(group), nb, lo, lo_se, lid, lid_se, up, up_se))))
    return table


def emit_plotdata(rows, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(PLOT_COLUMNS)
        for rec in plot_table(rows):
            writer.writerow([_fmt(rec[c]) for c in PLOT_COLUMNS])


def emit_metadata(metadata: dict, path):
    Path(path).write_text(json.dumps(metadata, indent=2, sort_keys=True, default=str) + "\n")
