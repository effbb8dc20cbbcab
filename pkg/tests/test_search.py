import itertools
import json
import random

import pytest

from semiarcs import certificates as certs
from semiarcs.errors import InputError, InvalidT
from semiarcs.plane import Collineation, mat_inv, pg
from semiarcs.search import (
    ANCHOR,
    SearchCertificate,
    anchor_line_group,
    brute_force,
    census,
    equivalence_classes,
    removal_orbits,
    replay,
    search_long_secant,
    _affine_reps,
    vconfig_census,
)
from semiarcs.semiarc import classify_semiarc

# count per removed-set representative, labelled total, number of classes
GOLDEN = {
    (5, 1): (0, 0, 0), (5, 2): (100, 1500, 1), (5, 3): (100, 2000, 1),
    (7, 1): (0, 0, 0), (7, 2): (0, 0, 0), (7, 3): (98, 5488, 1), (7, 4): (294, 12348, 1), (7, 5): (294, 16464, 1),
    (8, 1): (0, 0, 0), (8, 2): (0, 0, 0), (8, 3): (0, 0, 0), (8, 4): (0, 0, 0), (8, 5): (0, 0, 0),
    (8, 6): (560, 47040, 2),
    (9, 1): (0, 0, 0), (9, 2): (0, 0, 0), (9, 3): (0, 0, 0), (9, 4): (486, 14580, 1), (9, 5): (0, 0, 0),
    (9, 7): (648, 77760, 1),
}
SMALL_LABELLED = {(2, 1): 12, (3, 1): 72, (3, 2): 54, (4, 1): 0, (4, 2): 600, (4, 3): 160}

# (number of V-circle sets, number of V-bullet sets) per (q, t) on the pinned line pair
VCONFIG = {
    (3, 1): (2, 2), (4, 1): (5, 0), (4, 2): (2, 3), (5, 1): (12, 0), (5, 2): (1, 1), (5, 3): (2, 2),
    (7, 1): (58, 0), (7, 2): (1, 0), (7, 3): (5, 1), (7, 4): (8, 1), (7, 5): (2, 2),
    (8, 1): (121, 0), (8, 2): (2, 0), (8, 3): (1, 0), (8, 4): (15, 0), (8, 5): (1, 0), (8, 6): (2, 3),
    (9, 1): (248, 0), (9, 2): (1, 0), (9, 3): (21, 0), (9, 4): (9, 1), (9, 5): (21, 0), (9, 6): (28, 49),
    (9, 7): (2, 2),
}


@pytest.mark.parametrize("q,t", sorted(SMALL_LABELLED))
def test_pruned_search_equals_brute_force(q, t):
    plane = pg(q)
    cert = search_long_secant(plane, t)
    raw = search_long_secant(plane, t, prune=False)
    assert cert.witnesses == raw.witnesses
    assert cert.complete and raw.complete


@pytest.mark.parametrize("q,t", sorted(SMALL_LABELLED))
def test_labelled_total_against_every_removed_set(q, t):
    plane = pg(q)
    total = sum(len(brute_force(plane, t, D)) for D in itertools.combinations(plane.lines[ANCHOR], t))
    assert total == SMALL_LABELLED[(q, t)]
    assert search_long_secant(plane, t, "count").labelled_total == total


@pytest.mark.parametrize("q,t", sorted(GOLDEN))
def test_census_goldens(q, t):
    cert = search_long_secant(pg(q), t, "classes")
    cnt, lab, ncls = GOLDEN[(q, t)]
    assert cert.complete
    assert (cert.count_up_to_stabilizer, cert.labelled_total, cert.class_count) == (cnt, lab, ncls)
    plane = pg(q)
    for w in cert.witnesses[:50]:
        assert classify_semiarc(plane, w).t == t
        assert plane.line_sizes(w)[ANCHOR] == q + 1 - t


def test_q9_t6_count():
    cert = search_long_secant(pg(9), 6, "count")
    assert (cert.count_up_to_stabilizer, cert.labelled_total) == (6192, 185760)


def test_q8_t6_classes_are_fano_and_quadrilateral():
    cert = search_long_secant(pg(8), 6, "classes")
    sizes = sorted((len(c["representative"]), c["size"]) for c in cert.classes)
    assert sizes == [(6, 448), (7, 112)]


def line0_collineation(F, rng):
    """Random collineation preserving x2 = 0."""
    while True:
        M = tuple(tuple(rng.randrange(F.q) for _ in range(3)) for _ in range(2)) + ((0, 0, rng.randrange(1, F.q)),)
        if mat_inv(F, M) is not None:
            return Collineation(F, M, rng.randrange(F.r))


@pytest.mark.parametrize("q,t", [(4, 2), (4, 3), (5, 3)])
def test_counts_constant_on_removal_orbits(q, t):
    plane = pg(q)
    rng = random.Random(q * 10 + t)
    reps = dict(removal_orbits(plane, t))
    cert = search_long_secant(plane, t)
    per_rep = {tuple(o["removed"]): o["count"] for o in cert.d_orbits}
    for _ in range(3):
        g = line0_collineation(plane.field, rng)
        for D in list(reps)[:2]:
            D2 = tuple(g.apply_set(plane, D))
            assert all(plane.on(x, ANCHOR) for x in D2)
            assert len(brute_force(plane, t, D2)) == per_rep[D]


def test_anchor_group_orders():
    # |PGammaL(2,q)| acting on a line
    for q, order in [(4, 120), (5, 120), (7, 336), (8, 1512), (9, 1440)]:
        assert len(anchor_line_group(pg(q))) == order
    assert sum(s for _, s in removal_orbits(pg(7), 3)) == 56


def test_jobs_do_not_change_results():
    plane = pg(7)
    a = search_long_secant(plane, 4)
    b = search_long_secant(plane, 4, jobs=2)
    assert a.witnesses == b.witnesses and a.d_orbits == b.d_orbits


def test_resume_from_frontier(tmp_path):
    plane = pg(7)
    fpath = tmp_path / "f.json"
    part = search_long_secant(plane, 5, time_limit=0.0, frontier=fpath)
    assert not part.complete
    full = search_long_secant(plane, 5, frontier=fpath)
    fresh = search_long_secant(plane, 5)
    assert full.complete and full.witnesses == fresh.witnesses
    with pytest.raises(InputError):
        search_long_secant(plane, 4, frontier=fpath)


def test_invalid_arguments():
    with pytest.raises(InvalidT):
        search_long_secant(pg(5), 5)
    with pytest.raises(InvalidT):
        search_long_secant(pg(5), 0)
    with pytest.raises(InputError):
        search_long_secant(pg(5), 2, mode="everything")


def test_certificate_round_trip_and_replay():
    plane = pg(5)
    cert = search_long_secant(plane, 3)
    data = json.loads(certs.dumps(cert.to_json()))
    assert certs.check_digest(data)
    back = SearchCertificate.from_json(data)
    assert back.witnesses == cert.witnesses and back.labelled_total == 2000
    assert replay(data, plane)
    data["d_orbits"][0]["count"] += 1
    assert not certs.check_digest(data)
    assert not replay(data, plane)


def test_digest_ignores_wall_time():
    plane = pg(5)
    a = search_long_secant(plane, 2).to_json()
    b = dict(a, wall_time=a["wall_time"] + 1000)
    assert certs.digest(a) == certs.digest(b)


def test_census_writes_store(tmp_path):
    plane = pg(5)
    out = census(plane, root=tmp_path)
    assert [c.t for c in out] == [1, 2, 3]
    files = sorted(p.name for p in (tmp_path / "pg_5").iterdir())
    assert len(files) == 3 and all(f.startswith("t") and f.endswith(".json") for f in files)


def test_equivalence_classes_of_images():
    plane = pg(7)
    cert = search_long_secant(plane, 3)
    classes = equivalence_classes(plane, cert.witnesses)
    assert len(classes) == 1 and classes[0]["size"] == len(cert.witnesses)


@pytest.mark.parametrize("q,t", sorted(VCONFIG))
def test_vconfig_goldens(q, t):
    plane = pg(q)
    got = (len(vconfig_census(plane, t, False)), len(vconfig_census(plane, t, True)))
    assert got == VCONFIG[(q, t)]


@pytest.mark.parametrize("q,t", [(3, 1), (4, 1), (4, 2)])
def test_vconfig_against_unrestricted_extra_points(q, t):
    """Same census when the extra points range over every point off the two lines."""
    plane = pg(q)
    l1, l2 = plane.line((0, 1, 0)), plane.line((1, 0, 0))
    P = plane.meet(l1, l2)
    off = [x for x in range(plane.n_points) if not plane.on(x, l1) and not plane.on(x, l2)]
    for vin in (False, True):
        mine = vconfig_census(plane, t, vin)
        for R in itertools.product(_affine_reps(plane.field, t), repeat=2):
            base = [x for x in plane.lines[l1] + plane.lines[l2] if x != P]
            removed = {plane.point((1, 0, y)) for y in R[0]} | {plane.point((0, 1, y)) for y in R[1]}
            base = [x for x in base if x not in removed] + ([P] if vin else [])
            brute = set()
            for k in range(len(off) + 1):
                for X in itertools.combinations(off, k):
                    S = tuple(sorted(base + list(X)))
                    if classify_semiarc(plane, S).t == t:
                        brute.add(S)
            assert brute == {v.points for v in mine if v.removed == R}
