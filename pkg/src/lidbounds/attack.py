"""Softmax-regression surrogate that supplies gradient-sign attack directions."""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import FormatError, ZeroGradientError


@dataclass(frozen=True, eq=False)
class AttackModel:
    weights: np.ndarray  # (C, d)
    bias: np.ndarray  # (C,)
    epochs: int = 0
    lr: float = 0.0
    seed: int = 0

    @property
    def n_classes(self) -> int:
        return self.weights.shape[0]

    def logits(self, x):
        return np.asarray(x, dtype=np.float64) @ self.weights.T + self.bias

    def predict(self, x):
        return np.argmax(self.logits(x), axis=-1)


def softmax(z):
    z = z - z.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def cross_entropy(model: AttackModel, x, labels):
    """Per-sample cross-entropy loss; scalar for a single point."""
    z = model.logits(x)
    z = z - z.max(axis=-1, keepdims=True)
    log_p = z - np.log(np.exp(z).sum(axis=-1, keepdims=True))
    labels = np.asarray(labels)
    if log_p.ndim == 1:
        return float(-log_p[int(labels)])
    return -log_p[np.arange(len(labels)), labels]


def accuracy(model: AttackModel, data) -> float:
    return float(np.mean(model.predict(data.points) == data.labels))


def train_surrogate(data, epochs: int = 20, lr: float = 0.5, seed: int = 0,
                    batch_size: int = 32) -> AttackModel:
    """Fit multinomial logistic regression by mini-batch gradient descent.

    Weights start at zero and only the shuffling uses ``seed``, so equal
    inputs give bit-identical models.
    """
    if data.labels is None:
        raise ValueError("surrogate training needs labels")
    n_classes = data.n_classes
    if len(np.unique(data.labels)) < 2:
        raise ValueError("surrogate training needs at least 2 classes")
    if epochs < 0 or not lr > 0 or batch_size < 1:
        raise ValueError("epochs >= 0, lr > 0 and batch_size >= 1 required")
    X, y = data.points, data.labels
    W = np.zeros((n_classes, data.d))
    b = np.zeros(n_classes)
    onehot = np.eye(n_classes)[y]
    rng = np.random.default_rng(seed)
    for _ in range(epochs):
        order = rng.permutation(data.n)
        for start in range(0, data.n, batch_size):
            batch = order[start:start + batch_size]
            err = softmax(X[batch] @ W.T + b) - onehot[batch]
            W -= lr * (err.T @ X[batch]) / len(batch)
            b -= lr * err.mean(axis=0)
    return AttackModel(W, b, epochs=epochs, lr=lr, seed=seed)


def input_gradient(model: AttackModel, a, label: int) -> np.ndarray:
    """Gradient of the cross-entropy loss with respect to the input point."""
    p = softmax(model.logits(a))
    p[int(label)] -= 1.0
    return p @ model.weights


def attack_direction(model: AttackModel, a, label: int) -> np.ndarray:
    """Unit vector along ``sign(grad loss)`` at ``(a, label)``."""
    a = np.asarray(a, dtype=np.float64)
    if a.shape != (model.weights.shape[1],):
        raise ValueError(f"point has shape {a.shape}, model expects ({model.weights.shape[1]},)")
    if not 0 <= label < model.n_classes:
        raise ValueError(f"label {label} outside [0, {model.n_classes})")
    step = np.sign(input_gradient(model, a, label))
    nnz = np.count_nonzero(step)
    if nnz == 0:
        raise ZeroGradientError("loss gradient is zero at this point")
    return step / np.sqrt(nnz)


def random_direction(d: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(d)
    return v / np.linalg.norm(v)


def load_directions(path, d: int | None = None, tol: float = 1e-6) -> np.ndarray:
    """Read one unit direction per CSV row; rows are renormalized after the check."""
    with open(path, newline="") as fh:
        rows = [[float(v) for v in row] for row in csv.reader(fh) if row]
    if not rows:
        raise FormatError("directions", f"{path} holds no rows")
    if len({len(r) for r in rows}) != 1:
        raise FormatError("directions", "rows have differing lengths")
    dirs = np.array(rows, dtype=np.float64)
    if d is not None and dirs.shape[1] != d:
        raise FormatError("directions", f"rows have {dirs.shape[1]} entries, data has d={d}")
    norms = np.linalg.norm(dirs, axis=1)
    bad = np.flatnonzero(np.abs(norms - 1.0) > tol)
    if bad.size:
        raise FormatError("directions", f"row {bad[0]} has norm {norms[bad[0]]}, expected 1")
    return dirs / norms[:, None]


def save_directions(directions, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in np.atleast_2d(directions):
            writer.writerow([repr(float(v)) for v in row])
