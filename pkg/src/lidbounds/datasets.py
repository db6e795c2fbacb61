"""Dataset container, binary loaders and synthetic generators.

MNIST is read from IDX files (optionally gzip-compressed), CIFAR-10 from the
binary batch format of 3073-byte records.  All pixel data is scaled to [0, 1].
"""
from __future__ import annotations

import csv
import gzip
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import FormatError

IDX_IMAGES_MAGIC = 0x00000803
IDX_LABELS_MAGIC = 0x00000801
CIFAR_RECORD = 3073
CIFAR_PIXELS = 3072

SYNTH_KINDS = ("uniform-ball-subspace", "gaussian-subspace")


@dataclass(frozen=True, eq=False)
class Dataset:
    """An immutable ``n x d`` feature matrix with optional integer labels."""

    points: np.ndarray
    labels: np.ndarray | None = None
    name: str = "dataset"

    def __post_init__(self):
        points = np.array(self.points, dtype=np.float64, copy=True)
        if points.ndim == 1:
            points = points[:, None]
        if points.ndim != 2 or points.shape[0] < 1 or points.shape[1] < 1:
            raise ValueError(f"points must be an n x d matrix with n, d >= 1, got shape {points.shape}")
        if not np.all(np.isfinite(points)):
            raise ValueError("points contain NaN or infinite values")
        points.flags.writeable = False
        object.__setattr__(self, "points", points)

        if self.labels is not None:
            labels = np.array(self.labels, copy=True)
            if labels.ndim != 1 or labels.shape[0] != points.shape[0]:
                raise ValueError(f"labels must have exactly {points.shape[0]} entries, got shape {labels.shape}")
            if labels.size and not np.all(labels == np.round(labels)):
                raise ValueError("labels must be integer class ids")
            labels = labels.astype(np.int64)
            if labels.size and labels.min() < 0:
                raise ValueError("labels must be non-negative class ids")
            labels.flags.writeable = False
            object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    @property
    def n_classes(self) -> int:
        if self.labels is None:
            return 0
        return int(self.labels.max()) + 1

    def __len__(self):
        return self.n


@dataclass(frozen=True)
class SynthSpec:
    """Parameters for a point cloud lying in a random m-dimensional subspace."""

    intrinsic_dim: int
    ambient_dim: int
    n: int
    kind: str = "uniform-ball-subspace"
    seed: int = 0
    name: str | None = field(default=None, compare=False)

    def validate(self):
        if self.intrinsic_dim < 1:
            raise ValueError("intrinsic_dim must be >= 1")
        if self.ambient_dim < self.intrinsic_dim:
            raise ValueError(
                f"intrinsic_dim ({self.intrinsic_dim}) exceeds ambient_dim ({self.ambient_dim})"
            )
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.kind not in SYNTH_KINDS:
            raise ValueError(f"unknown synthetic kind {self.kind!r}; expected one of {SYNTH_KINDS}")


def _read_bytes(path) -> bytes:
    raw = Path(path).read_bytes()
    if raw[:2] == b"\x1f\x8b":
        try:
            raw = gzip.decompress(raw)
        except (OSError, EOFError) as exc:
            raise FormatError("gzip stream", f"corrupt compressed file {path}: {exc}") from exc
    return raw


def _parse_idx(raw: bytes, expected_magic: int, kind: str):
    if len(raw) < 8:
        raise FormatError(f"{kind} header", f"file too short ({len(raw)} bytes)")
    magic, count = struct.unpack(">II", raw[:8])
    if magic != expected_magic:
        raise FormatError(f"{kind} magic", f"expected 0x{expected_magic:08x}, got 0x{magic:08x}")
    ndim = expected_magic & 0xFF
    header = 4 + 4 * ndim
    if len(raw) < header:
        raise FormatError(f"{kind} header", f"truncated header ({len(raw)} of {header} bytes)")
    dims = struct.unpack(">" + "I" * ndim, raw[4:header])
    size = int(np.prod(dims, dtype=np.int64))
    body = raw[header:]
    if len(body) != size:
        raise FormatError(f"{kind} data", f"expected {size} bytes for dims {dims}, got {len(body)}")
    return dims, np.frombuffer(body, dtype=np.uint8)


def load_mnist(images_path, labels_path, name: str = "mnist") -> Dataset:
    """Load an MNIST IDX image/label file pair.

    Either file may be gzip-compressed.  Pixels become ``rows*cols`` features
    divided by 255.
    """
    (count, rows, cols), pixels = _parse_idx(_read_bytes(images_path), IDX_IMAGES_MAGIC, "images")
    (label_count,), labels = _parse_idx(_read_bytes(labels_path), IDX_LABELS_MAGIC, "labels")
    if count != label_count:
        raise FormatError("count", f"{count} images but {label_count} labels")
    if count == 0:
        raise FormatError("count", "file pair holds zero images")
    points = pixels.reshape(count, rows * cols).astype(np.float64) / 255.0
    return Dataset(points, labels, name=name)


def load_cifar10(batch_paths, name: str = "cifar10") -> Dataset:
    """Load and concatenate CIFAR-10 binary batches."""
    if isinstance(batch_paths, (str, Path)):
        batch_paths = [batch_paths]
    records = []
    for path in batch_paths:
        raw = _read_bytes(path)
        if len(raw) == 0 or len(raw) % CIFAR_RECORD:
            raise FormatError("record length", f"{path}: {len(raw)} bytes is not a positive multiple of {CIFAR_RECORD}")
        records.append(np.frombuffer(raw, dtype=np.uint8).reshape(-1, CIFAR_RECORD))
    if not records:
        raise ValueError("no CIFAR-10 batch files given")
    table = np.concatenate(records)
    return Dataset(table[:, 1:].astype(np.float64) / 255.0, table[:, 0], name=name)


def load_csv(path, labels: bool = False, name: str | None = None) -> Dataset:
    """Load a headerless comma-separated matrix; the last column holds labels if ``labels``."""
    try:
        table = np.loadtxt(path, delimiter=",", ndmin=2, dtype=np.float64)
    except ValueError as exc:
        raise FormatError("csv", str(exc)) from exc
    if table.size == 0:
        raise FormatError("csv", f"{path} holds no rows")
    name = name or Path(path).stem
    if labels:
        if table.shape[1] < 2:
            raise FormatError("csv", "label column requested but only one column present")
        return Dataset(table[:, :-1], table[:, -1], name=name)
    return Dataset(table, name=name)


def write_mnist(data: Dataset, images_path, labels_path, shape=None, compress: bool = False):
    """Write ``data`` as an IDX pair; features must be k/255 for integer k."""
    if data.labels is None:
        raise ValueError("IDX label file needs labels")
    rows, cols = shape or (data.d, 1)
    if rows * cols != data.d:
        raise ValueError(f"shape {rows}x{cols} does not match d={data.d}")
    pixels = np.round(data.points * 255.0).astype(np.uint8)
    images = struct.pack(">IIII", IDX_IMAGES_MAGIC, data.n, rows, cols) + pixels.tobytes()
    labels = struct.pack(">II", IDX_LABELS_MAGIC, data.n) + data.labels.astype(np.uint8).tobytes()
    for path, payload in ((images_path, images), (labels_path, labels)):
        if compress:
            payload = gzip.compress(payload, mtime=0)
        Path(path).write_bytes(payload)


def write_cifar10(data: Dataset, path):
    """Write ``data`` (d = 3072, labeled) as one CIFAR-10 binary batch."""
    if data.d != CIFAR_PIXELS or data.labels is None:
        raise ValueError("CIFAR-10 records need d=3072 and labels")
    table = np.empty((data.n, CIFAR_RECORD), dtype=np.uint8)
    table[:, 0] = data.labels
    table[:, 1:] = np.round(data.points * 255.0)
    Path(path).write_bytes(table.tobytes())


def write_csv(data: Dataset, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for i in range(data.n):
            row = [repr(float(v)) for v in data.points[i]]
            if data.labels is not None:
                row.append(str(int(data.labels[i])))
            writer.writerow(row)


def random_frame(ambient_dim: int, intrinsic_dim: int, rng: np.random.Generator) -> np.ndarray:
    """Orthonormal ``ambient_dim x intrinsic_dim`` frame from the QR of a Gaussian matrix."""
    q, r = np.linalg.qr(rng.standard_normal((ambient_dim, intrinsic_dim)))
    # sign fix makes the frame Haar-distributed
    return q * np.sign(np.diag(r))


def generate_synthetic(spec: SynthSpec) -> Dataset:
    """Sample ``spec.n`` points in a random ``intrinsic_dim``-subspace of R^ambient_dim.

    ``uniform-ball-subspace`` draws uniformly from the unit m-ball, so the LID
    of interior points equals m; ``gaussian-subspace`` draws isotropic
    Gaussian coordinates.
    """
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    m, d = spec.intrinsic_dim, spec.ambient_dim
    frame = random_frame(d, m, rng)
    coords = rng.standard_normal((spec.n, m))
    if spec.kind == "uniform-ball-subspace":
        coords /= np.linalg.norm(coords, axis=1, keepdims=True)
        coords *= rng.uniform(size=(spec.n, 1)) ** (1.0 / m)
    name = spec.name or f"synth-{spec.kind}-m{m}-d{d}"
    return Dataset(coords @ frame.T, name=name)


def subsample_indices(n: int, n_keep: int, seed: int) -> np.ndarray:
    if not 1 <= n_keep <= n:
        raise ValueError(f"n_keep must be in [1, {n}], got {n_keep}")
    return np.random.default_rng(seed).choice(n, size=n_keep, replace=False)


def subsample(data: Dataset, n_keep: int, seed: int) -> Dataset:
    """Uniform sample without replacement, in draw order."""
    idx = subsample_indices(data.n, n_keep, seed)
    labels = None if data.labels is None else data.labels[idx]
    return Dataset(data.points[idx], labels, name=data.name)
