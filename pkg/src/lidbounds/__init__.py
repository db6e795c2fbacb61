"""Local intrinsic dimensionality of adversarially perturbed points.

Estimators, KDE distance CDFs, perturbation geometry and the lower/upper
bounds on the LID of a perturbed point, plus a delta-sweep harness.
"""
from .bounds import (
    AveragedBounds,
    BoundResult,
    EtaFeasibility,
    Variant,
    averaged_bounds,
    chain_links,
    eta_grid,
    phi,
    theorem2_bounds,
    theorem3_bounds,
)
from .datasets import (
    Dataset,
    SynthSpec,
    generate_synthetic,
    load_cifar10,
    load_csv,
    load_mnist,
    subsample,
)
from .distance_cdf import DistanceCdf, eval_cdf, expected_rank, fit_cdf
from .geometry import Direction, PerturbationTriple, classify, direction_class, make_triple
from .knn import NeighborList, all_distances, distance, knn, knn_member
from .lid import (
    LidEstimate,
    PowerLawCdf,
    expansion_dimension,
    id_at_radius,
    mle_lid,
    representation_factor,
)

__version__ = "0.1.0"
