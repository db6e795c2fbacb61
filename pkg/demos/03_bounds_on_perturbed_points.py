"""
Bounding the LID of a perturbed point
=====================================

A point a is moved by delta * x along a unit direction, where x is its
distance to a reference point c.  Whether the perturbed point b ends up
farther from c depends only on delta and the angle theta at a.  The
distance ratio y / (delta x) and two values of F_b then bracket LID(b).
"""

import math

from lidbounds import Direction, classify, make_triple
from lidbounds.bounds import Variant, chain_links, eta_grid, theorem2_bounds, theorem3_bounds
from lidbounds.lid import PowerLawCdf

# the direction rule: farther from c iff delta > 2 cos(theta)
for theta in (0.3, 1.0, math.pi / 2):
    row = [classify(delta, theta).value for delta in (0.25, 1.0, 2.0)]
    print(f"theta={theta:.2f}: delta 0.25/1.0/2.0 -> {row}")

###############################################################################
# With an exact power law F(r) = r^2 the sandwich always contains 2 and
# tightens as eta shrinks.

cdf = PowerLawCdf(2.0, support=10.0)
t = make_triple([0.0, 0.0], [0.0, 1.0], 0.5, [1.0, 0.0])
print(f"x={t.x:.3f} y={t.y:.4f} delta*x={t.delta_x:.3f}, class {classify(t.delta, t.theta).value}")
for cand in eta_grid(t, lid_proxy=2.0, grid_size=6):
    if cand.feasible:
        res = theorem2_bounds(t, cdf, cand.eta)
        print(f"eta={cand.eta:9.2e}  [{res.lower:.5f}, {res.upper:.5f}]")

###############################################################################
# The directional bounds replace y/(delta x) with 1/delta.  Their outer
# links against the general bounds always hold.  The middle link does not:
# on this away step the directional lower bound overshoots the true value.

g = theorem2_bounds(t, cdf, 0.05)
d = theorem3_bounds(t, cdf, 0.05)
assert d.variant is Variant.THEOREM3_AWAY
print(f"general     [{g.lower:.4f}, {g.upper:.4f}]")
print(f"directional [{d.lower:.4f}, {d.upper:.4f}]")
print("links:", chain_links(g, d))
