import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semiarcs.errors import EmptyLeg, EmptySelection, InconsistentInput, IncompatibleParameters
from semiarcs.field import canonical_basis, field_of_order, prime_power
from semiarcs.perspective import (
    PerspectiveFrame,
    admissible_groups,
    build_group,
    centres,
    classify_centres,
    group_centres,
    orbit_selections,
    perspective_sets_from_orbits,
    recognise,
)
from semiarcs.plane import pg, subplane_order
from semiarcs.search import vconfig_census

ORDERS = [q for q in range(2, 28) if prime_power(q)]


def groups(q):
    F = field_of_order(q)
    out = []
    for n, d, h1, basis in admissible_groups(F):
        try:
            out.append(build_group(F, n, d, basis))
        except IncompatibleParameters:
            pass
    return out


def brute_orbit(F, G, y):
    return {F.add(F.mul(a, y), b) for a, b in G.elements()}


def check_selection(frame, G, I, inc):
    """Everything the classification promises, against the raw centre oracle."""
    X1, X2 = perspective_sets_from_orbits(frame, G, I, inc)
    cs = centres(frame, X1, X2)
    assert set(group_centres(frame, G)) <= set(cs.U)
    if len(cs.U) == G.order:
        assert list(cs.U) == group_centres(frame, G)
        cl = classify_centres(cs, G)
        assert cl.ok, cl.checks
        return
    # a bigger stabilizer: the recognised full group must explain U exactly
    rec = recognise(frame, X1, X2)
    assert len(rec.centres.U) == rec.group.order == len(cs.U)
    assert classify_centres(rec.centres, rec.group).ok


@pytest.mark.parametrize("q", ORDERS)
def test_orbit_structure(q):
    F = field_of_order(q)
    p, r = F.p, F.r
    for G in groups(q):
        h = G.h
        assert G.order == G.n * p**h
        assert G.m * G.n == p ** (r - h) - 1
        sizes = sorted(len(o) for o in G.orbits)
        assert sizes == sorted([p**h] + [G.n * p**h] * G.m)
        assert sorted(y for o in G.orbits for y in o) == list(range(q))
        assert set(G.orbit(0)) == set(G.B.elements)
        for o in G.orbits:
            assert brute_orbit(F, G, o[0]) == set(o)
        assert [min(o) for o in G.orbits[1:]] == sorted(min(o) for o in G.orbits[1:])


@pytest.mark.parametrize("q", ORDERS)
def test_centres_match_classification(q):
    frame = PerspectiveFrame.standard(pg(q))
    rng = random.Random(q)
    for G in groups(q):
        for I, inc in orbit_selections(G.m, rng=rng):
            check_selection(frame, G, I, inc)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([q for q in ORDERS if q >= 7]), st.data())
def test_random_orbit_unions(q, data):
    frame = PerspectiveFrame.standard(pg(q))
    G = data.draw(st.sampled_from(groups(q)))
    I = data.draw(st.lists(st.integers(1, G.m), unique=True, max_size=G.m)) if G.m else []
    inc = data.draw(st.booleans()) or not I
    check_selection(frame, G, sorted(I), inc)


def test_spec_examples():
    F9 = field_of_order(9)
    G = build_group(F9, 2, 1, [1])
    assert G.order == 6 and G.m == 1 and sorted(map(len, G.orbits)) == [3, 6]
    G = build_group(field_of_order(8), 7, 1, [])
    assert G.order == 7 and G.m == 1
    with pytest.raises(IncompatibleParameters):
        build_group(F9, 4, 1, [1])
    frame = PerspectiveFrame.standard(pg(9))
    X1, X2 = perspective_sets_from_orbits(frame, build_group(F9, 2, 1, [1]), [1], False)
    assert len(X1) == len(X2) == 6


def test_fano_case():
    plane = pg(4)
    F = plane.field
    frame = PerspectiveFrame.standard(plane)
    G = build_group(F, 1, 1, [1])
    X1, X2 = perspective_sets_from_orbits(frame, G, [], True)
    cs = centres(frame, X1, X2)
    assert len(cs.U) == 2
    cl = classify_centres(cs, G)
    assert cl.case == 4 and cl.ok
    assert subplane_order(plane, set(cs.U) | set(cl.B1) | set(cl.B2) | {frame.vertex}) == 2


def exact_selection(frame, G):
    """First orbit selection whose full stabilizer is G itself."""
    for I, inc in orbit_selections(G.m, limit=4096, rng=random.Random(0)):
        X1, X2 = perspective_sets_from_orbits(frame, G, I, inc)
        cs = centres(frame, X1, X2)
        if len(cs.U) == G.order:
            return cs
    raise AssertionError("no selection with exact stabilizer")


def test_case_labels_q16():
    F = field_of_order(16)
    frame = PerspectiveFrame.standard(pg(16))
    sub = build_group(F, 3, 2, canonical_basis(F, 2, 1))
    other = build_group(F, 3, 2, [2])  # GF(4) x, a GF(4)-line that is not the subfield
    for G, case in ((sub, 4), (other, 5)):
        cl = classify_centres(exact_selection(frame, G), G)
        assert cl.case == case and cl.ok


def test_trivial_group_and_singletons():
    # AGL(1,7) has order 42 > C(7,3), so every leg set in PG(2,7) has a nontrivial stabilizer
    plane = pg(11)
    frame = PerspectiveFrame.standard(plane)
    G = build_group(plane.field, 1, 1, [])
    cs = exact_selection(frame, G)
    assert classify_centres(cs, G).case == 1 and len(cs.U) == 1
    # singleton legs: every point of the joining line off the legs is a centre
    x, y = frame.leg_point(1, 3), frame.leg_point(2, 5)
    raw = centres(frame, [x], [y])
    L = plane.join(x, y)
    assert set(raw.U) == {z for z in plane.lines[L] if z not in (x, y)}


def test_no_centre_and_errors():
    plane = pg(5)
    frame = PerspectiveFrame.standard(plane)
    X1 = [frame.leg_point(1, y) for y in (0, 1)]
    X2 = [frame.leg_point(2, y) for y in (0, 1, 2)]
    assert centres(frame, X1, X2).U == ()
    with pytest.raises(EmptyLeg):
        centres(frame, [], X2)
    G = build_group(plane.field, 1, 1, [])
    with pytest.raises(EmptySelection):
        perspective_sets_from_orbits(frame, G, [], False)
    cs = centres(frame, [frame.leg_point(1, 0)], [frame.leg_point(2, 0)])
    with pytest.raises(InconsistentInput):
        classify_centres(cs, G)


@pytest.mark.parametrize("q", [5, 7, 8, 9])
def test_extra_points_are_centres(q):
    """Points of a semiarc off a V_t-configuration are perspectivity centres."""
    plane = pg(q)
    frame = PerspectiveFrame.standard(plane)
    for t in range(1, q - 1):
        for vin in (False, True):
            for v in vconfig_census(plane, t, vin):
                S = set(v.points)
                X1 = [x for x in frame.leg(1) if x in S]
                X2 = [x for x in frame.leg(2) if x in S]
                U = set(centres(frame, X1, X2).U)
                assert set(v.X) <= U
