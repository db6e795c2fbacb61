"""
Estimating local intrinsic dimensionality
=========================================

Points drawn uniformly from a 4-dimensional ball embedded in 50 ambient
dimensions.  The maximum-likelihood estimate over the 100 nearest neighbours
should sit near 4 regardless of the ambient dimension.
"""

import numpy as np

from lidbounds import SynthSpec, generate_synthetic, knn_member, mle_lid
from lidbounds.lid import PowerLawCdf, expansion_dimension, id_at_radius, representation_factor

data = generate_synthetic(SynthSpec(intrinsic_dim=4, ambient_dim=50, n=5000, seed=0))
print(data.name, data.points.shape)

# estimate at 50 random points
rng = np.random.default_rng(1)
queries = rng.choice(data.n, 50, replace=False)
estimates = np.array([mle_lid(knn_member(data, int(i), k=100)).value for i in queries])
print(f"median LID {np.median(estimates):.3f}, IQR "
      f"[{np.percentile(estimates, 25):.3f}, {np.percentile(estimates, 75):.3f}]")

# small k is noisier and biased upward
for k in (10, 20, 50, 100, 200):
    est = [mle_lid(knn_member(data, int(i), k)).value for i in queries]
    print(f"k={k:4d}  median {np.median(est):.3f}  std {np.std(est):.3f}")

###############################################################################
# For a smooth distance distribution the indicator ID_F(r) = r F'(r) / F(r)
# equals the exponent of a power law, and the representation factor
# F(w)/F(r) (r/w)^m collapses to one.

cdf = PowerLawCdf(3.0)
print("ID_F at r=0.4:", id_at_radius(cdf, 0.4))
print("expansion dimension between 0.2 and 0.4:", expansion_dimension(cdf(0.2), cdf(0.4), 0.2, 0.4))
print("representation factor:", representation_factor(cdf, 0.4, 0.2, 3.0))
