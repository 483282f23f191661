"""Two close points leave only a small corner uncovered.

Put two points 4L/10 apart on two sides of T.  Every point within the band
of width 3*sqrt(3)/5 L around their segment forms a triangle of area at
most 24/100 with them, so a third point avoiding that band must sit in the
corner triangle I.  This script tabulates |I| as the angle A varies and
walks through the iterated bounds that pin A and c down.

    python demos/01_lemma_scan.py
"""

import numpy as np

from smalltri.lemma_lab import (PI3, abc_of_angle, contraction_chain, region_area, region_area_geometric,
                                scan_lemma)

for A in np.linspace(0, PI3, 7):
    a, b, c = abc_of_angle(A)
    print(f"A={A:.4f}  a={a:.4f} b={b:.4f} c={c:.4f}  |I|={region_area(A):.5f}"
          f"  (from coordinates {region_area_geometric(A):.5f})")

rep = scan_lemma(1e-5)
s = rep.summary()
print(f"\n{s['grid_points']} grid points: max |I| = {s['max_region_area']:.6f} at A = {s['argmax_angle']:.5f},"
      f" margin {s['margin']:.4f} below 0.24")
for note in s["notes"]:
    print("note:", note)

print("\nIterated bounds:")
for cp in contraction_chain():
    print(f"  {cp.name:16s} {cp.value:.5f}  vs {cp.bound}  {'ok' if cp.holds else 'FAILS'}")
