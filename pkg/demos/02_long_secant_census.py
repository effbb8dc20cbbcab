"""Which t admit a t-semiarc with q+1-t collinear points?

The search fixes the collinear points on one line and runs over removed sets up
to the line's stabilizer, so the counts are per orbit representative.
"""

import math

from semiarcs import pg, search_long_secant

for q in (4, 5, 7, 8, 9):
    plane = pg(q)
    row = []
    for t in range(1, q - 1):
        cert = search_long_secant(plane, t, "count")
        row.append(f"t={t}:{cert.labelled_total}")
    print(f"q={q} (sqrt(q-1)={math.sqrt(q - 1):.2f}, (q-1)/2={(q - 1) / 2})  " + "  ".join(row))

# Every solution at the lower end is one projective triangle up to collineations.
cert = search_long_secant(pg(9), 4, "classes")
print("PG(2,9), t=4:", cert.count_up_to_stabilizer, "sets,", cert.class_count, "class of size",
      len(cert.classes[0]["representative"]))
