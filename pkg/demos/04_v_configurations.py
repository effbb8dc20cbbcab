"""Semiarcs that properly contain a V_t-configuration, by exhaustive census on two fixed lines."""

from collections import Counter

from semiarcs import pg, vconfig_census
from semiarcs.theorems import thm_shapes

for q in (7, 8, 9):
    plane = pg(q)
    for t in range(1, q - 1):
        for vin in (False, True):
            sets = vconfig_census(plane, t, vin)
            if not sets:
                continue
            shapes = Counter(tuple(thm_shapes(plane, v.points, t, vin)) for v in sets)
            kind = "V-bullet" if vin else "V-circle"
            print(f"q={q} t={t} {kind}: {len(sets)} sets, shapes {dict(shapes)}")
