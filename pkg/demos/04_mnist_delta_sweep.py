"""
Perturbation size against the LID bounds on MNIST
=================================================

1000 digits drawn from the bundled 5000-image fixture, 50 query points,
each pushed along the sign of a softmax-regression loss gradient.  As delta
grows, the lower bound, the LID estimate and the upper bound all rise, and
almost every perturbation moves away from the rank-50 reference point.
"""

from pathlib import Path

from lidbounds.experiment import ExperimentConfig, direction_stats, plot_table, run_sweep

fixture = Path(__file__).resolve().parent.parent / "tests" / "data" / "mnist5k-images-idx3-ubyte.gz"
config = ExperimentConfig(dataset=str(fixture), format="mnist", n=1000, k=100, n_q=50, seed=0)
result = run_sweep(config, workers=4)

print(f"{'delta':>6} {'rows':>5} {'lower':>8} {'LID':>8} {'upper':>8}")
for rec in plot_table(result.rows):
    print(f"{rec['delta']:6.2f} {rec['n_bounded']:5d} {rec['lower_mean']:8.2f} "
          f"{rec['lid_mean']:8.2f} {rec['upper_mean']:8.2f}")

stats = direction_stats(result.rows)
print(f"toward reference: {stats.toward:.2%} of {stats.total} perturbations")
print("direction source:", result.metadata["direction_source"])
