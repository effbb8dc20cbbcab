"""The projective triangle: the smallest semiarcs with a long secant in PG(2,q), q odd."""

from semiarcs import pg, projective_triangle, redei_analysis
from semiarcs.field import field_of_order
from semiarcs.semiarc import classify_semiarc, detect_vt, secant_spectrum

for q in (5, 7, 9, 11):
    c = projective_triangle(field_of_order(q))
    plane, S = c.plane, c.points
    rep = classify_semiarc(plane, S)
    spec = secant_spectrum(plane, S)
    red = redei_analysis(plane, S)
    print(f"q={q}: |S|={len(S)}  t={rep.t}  secant spectrum {spec}")
    print(f"      Redei lines {list(red.redei_lines)}, minimal blocking set: {red.is_minimal}")

# Two of its long secants meet in a vertex of the triangle, so it is of V-bullet type.
plane = pg(7)
S = projective_triangle(plane.field).points
w = detect_vt(plane, S, 3)[0]
print("V-configuration witness in PG(2,7):", w.to_json())
