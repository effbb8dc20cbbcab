"""Perspective point sets on two lines and where their centres live."""

from semiarcs import PerspectiveFrame, build_group, centres, classify_centres, pg
from semiarcs.field import canonical_basis
from semiarcs.perspective import perspective_sets_from_orbits

plane = pg(16)
F = plane.field
frame = PerspectiveFrame.standard(plane)

for n, d, basis, label in ((3, 2, canonical_basis(F, 2, 1), "B = GF(4), A of order 3"),
                           (3, 2, [2], "B = x GF(4), A of order 3"),
                           (5, 4, [], "B trivial, A of order 5"),
                           (1, 1, canonical_basis(F, 1, 3), "A trivial, |B| = 8")):
    G = build_group(F, n, d, basis)
    # take the first single orbit whose full stabilizer is G itself
    for j in range(1, G.m + 1):
        X1, X2 = perspective_sets_from_orbits(frame, G, [j], False)
        cs = centres(frame, X1, X2)
        if len(cs.U) == G.order:
            break
    cl = classify_centres(cs, G)
    print(f"{label}: |G|={G.order} m={G.m}  |U|={len(cs.U)}  case {cl.case}  profile {cs.profile}")
