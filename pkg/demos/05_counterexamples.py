"""Three constructions whose stated properties fail at small order."""

from semiarcs.constructions import conic_example, suetake, verify
from semiarcs.errors import CaseConstraintViolated
from semiarcs.field import field_of_order
from semiarcs.semiarc import classify_semiarc

c = suetake(field_of_order(4), [1, 2])
print("Suetake set at q=4, tangents per point:", sorted(classify_semiarc(c.plane, c.points).tangent_counts.values()))

F4, F16 = field_of_order(4), field_of_order(16)
try:
    conic_example(1, F4, F16)
except CaseConstraintViolated as e:
    # in even order the two tangents meet at the nucleus
    print("conic, first variant, s=4:", e)
print("conic, second variant, s=4:", verify(conic_example(2, F4, F16)))
print("conic, second variant, s=8:", verify(conic_example(2, field_of_order(8), field_of_order(64))))
