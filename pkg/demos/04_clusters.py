"""Four tight clusters force about 5/8 of all triples to be small.

Put k points near each vertex and k near the centroid.  A triangle is big
only when its corners come from three different clusters, which leaves a
small fraction of 1 - 4k^3 / C(4k, 3), tending to 5/8.

    python demos/04_clusters.py
"""

from fractions import Fraction

from smalltri.objectives import clustered_construction, clustered_fraction_exact, evaluate

for k in (1, 2, 3, 5):
    conf = clustered_construction(k, 0.005, seed=k)
    rep = evaluate(conf, thresholds=(0.25,))
    measured = Fraction(rep.count_at_most[0.25], len(rep.areas))
    print(f"k={k}: n={4 * k:2d}  measured {measured} = {float(measured):.4f}"
          f"  formula {clustered_fraction_exact(k)}")

for k in (10, 100, 1000):
    print(f"k={k}: {float(clustered_fraction_exact(k)):.6f}  (5/8 = 0.625)")
