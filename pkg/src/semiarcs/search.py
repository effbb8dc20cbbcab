"""Exhaustive search for t-semiarcs having a (q+1-t)-secant.

The anchor line is line 0.  A solution is determined by the set D of the t
anchor points left out and by U = S minus the anchor.  Every line through a
point of D carries at most one point of U (otherwise a point of U loses a
tangent), so U picks at most one point from each line through d0 = min(D).
For an anchor point s outside D, the q lines through s other than the anchor
must be hit by U exactly q-t times; with |U| = N this means the "excess"
N - hits(s) equals k = N - (q - t) for every such s.
"""

from __future__ import annotations

import itertools
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from dataclasses import field as dc_field
from pathlib import Path

from . import certificates as certs
from .errors import InputError, InvalidT
from .plane import Plane, are_equivalent, point_profiles
from .semiarc import classify_semiarc

log = logging.getLogger(__name__)

ANCHOR = 0
PRUNING_RULES = (
    "anchor-line-stabilizer-orbits-on-removed-points",
    "one-point-per-line-through-removed-points",
    "excess-bound-per-anchor-point",
    "row-feasibility",
)
MODES = ("count", "witnesses", "classes")


# -- symmetry of the anchor line

def anchor_line_group(plane: Plane) -> list[tuple[int, ...]]:
    """Permutations of the anchor's points induced by its stabilizer in PGammaL(3,q).

    Positions index ``plane.lines[ANCHOR]``.  For loaded planes only the
    identity is used.
    """
    pts = plane.lines[ANCHOR]
    pos = {x: i for i, x in enumerate(pts)}
    ident = tuple(range(len(pts)))
    if not plane.is_generated:
        return [ident]
    F = plane.field
    g = F.generator

    def perm(fn):
        return tuple(pos[plane.point(fn(plane.coords(x)))] for x in pts)

    gens = [
        perm(lambda v: (F.add(v[0], v[1]), v[1], 0)),
        perm(lambda v: (F.mul(g, v[0]), v[1], 0)),
        perm(lambda v: (v[1], v[0], 0)),
        perm(lambda v: tuple(F.frob(c, 1) for c in v)),
    ]
    group = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for b in gens:
                c = tuple(b[i] for i in a)
                if c not in group:
                    group.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted(group)


def removal_orbits(plane: Plane, t: int) -> list[tuple[tuple[int, ...], int]]:
    """Representatives of t-subsets of the anchor up to its stabilizer, with orbit sizes."""
    pts = plane.lines[ANCHOR]
    group = anchor_line_group(plane)
    seen = set()
    out = []
    for combo in itertools.combinations(range(len(pts)), t):
        if combo in seen:
            continue
        orbit = {tuple(sorted(g[i] for i in combo)) for g in group}
        seen |= orbit
        out.append((tuple(pts[i] for i in combo), len(orbit)))
    return out


# -- the backtracking core

class _Core:
    def __init__(self, plane: Plane, t: int, D):
        self.plane = plane
        q = plane.order
        self.q, self.t = q, t
        ell = plane.lines[ANCHOR]
        self.D = tuple(sorted(D))
        self.LS = tuple(x for x in ell if x not in self.D)
        d0 = self.D[0]
        ellmask = plane.line_masks[ANCHOR]
        self.rows = [plane.line_masks[L] & ~ellmask for L in sorted(plane.point_lines[d0]) if L != ANCHOR]
        self.affine = [x for x in range(plane.n_points) if not ellmask >> x & 1]
        self.block = {}
        self.hit = {}
        for u in self.affine:
            m = 0
            for d in self.D[1:]:
                m |= plane.line_masks[plane.join(u, d)]
            self.block[u] = m
            self.hit[u] = [(plane.join(u, s), i) for i, s in enumerate(self.LS)]

    def run(self, first=None, witnesses: bool = True):
        """Count (and list) solutions whose choice on row 0 is ``first`` (None = skip)."""
        q, t = self.q, self.t
        count = 0
        found = []
        for N in range(max(q - t, 1), q + 1):
            c, w = self._run_N(N, first, witnesses)
            count += c
            found.extend(w)
        return count, found

    def _run_N(self, N, first, witnesses):
        q, t = self.q, self.t
        k = N - (q - t)
        rows = self.rows
        nrows = len(rows)
        nS = len(self.LS)
        excess = [0] * nS
        hits = [0] * nS
        chosen: list[int] = []
        out = []
        count = 0
        block, hitmap = self.block, self.hit
        cap = q - t

        def add(u, hitset):
            ok = True
            changed = []
            for L, i in hitmap[u]:
                if hitset >> L & 1:
                    excess[i] += 1
                    if excess[i] > k:
                        ok = False
                    changed.append((i, 1))
                else:
                    hits[i] += 1
                    hitset |= 1 << L
                    if hits[i] > cap:
                        ok = False
                    changed.append((i, 0))
            return ok, hitset, changed

        def undo(changed):
            for i, kind in changed:
                if kind:
                    excess[i] -= 1
                else:
                    hits[i] -= 1

        def rec(r, blocked, hitset, skips):
            nonlocal count
            if len(chosen) == N:
                if all(e == k for e in excess):
                    count += 1
                    if witnesses:
                        out.append(tuple(chosen))
                return
            if r == nrows:
                return
            need = N - len(chosen)
            if nrows - r < need:
                return
            cand = rows[r] & ~blocked
            while cand:
                low = cand & -cand
                u = low.bit_length() - 1
                cand ^= low
                ok, hs, changed = add(u, hitset)
                if ok:
                    chosen.append(u)
                    rec(r + 1, blocked | block[u], hs, skips)
                    chosen.pop()
                undo(changed)
            if skips < q - N:
                rec(r + 1, blocked, hitset, skips + 1)

        if first is None:
            if q - N >= 1:
                rec(1, 0, 0, 1)
        elif rows[0] >> first & 1:
            ok, hs, changed = add(first, 0)
            if ok:
                chosen.append(first)
                rec(1, block[first], hs, 0)
                chosen.pop()
            undo(changed)
        LS = self.LS
        return count, [tuple(sorted(U + LS)) for U in out]

    def first_choices(self):
        m = self.rows[0]
        return [x for x in range(self.plane.n_points) if m >> x & 1] + [None]


def brute_force(plane: Plane, t: int, D) -> list[tuple[int, ...]]:
    """All solutions for removed set D by testing every candidate U (small q only)."""
    q = plane.order
    ell = plane.lines[ANCHOR]
    LS = tuple(x for x in ell if x not in set(D))
    affine = [x for x in range(plane.n_points) if x not in set(ell)]
    out = []
    for N in range(max(q - t, 1), q + 1):
        for U in itertools.combinations(affine, N):
            S = tuple(sorted(U + LS))
            if classify_semiarc(plane, S).t == t:
                out.append(S)
    return sorted(out)


def _unit_worker(args):
    plane, t, D, first, witnesses, prune = args
    if not prune:
        sols = brute_force(plane, t, D)
        return len(sols), sols
    return _Core(plane, t, D).run(first, witnesses)


# -- certificates

@dataclass
class SearchCertificate:
    plane: dict
    t: int
    mode: str
    anchor: int
    anchor_points: list[int]
    pruning: list[str]
    d_orbits: list[dict]
    witnesses: list[list[int]] | None
    complete: bool
    classes: list[dict] | None = None
    units_done: int = 0
    units_total: int = 0
    wall_time_ms: int = 0
    extra: dict = dc_field(default_factory=dict)

    @property
    def count_up_to_stabilizer(self) -> int:
        return sum(o["count"] for o in self.d_orbits)

    @property
    def labelled_total(self) -> int:
        return sum(o["count"] * o["orbit_size"] for o in self.d_orbits)

    @property
    def empty(self) -> bool:
        return self.count_up_to_stabilizer == 0

    @property
    def class_count(self) -> int | None:
        return None if self.classes is None else len(self.classes)

    def to_json(self) -> dict:
        out = {
            "kind": "search",
            "plane": self.plane,
            "t": self.t,
            "mode": self.mode,
            "anchor": self.anchor,
            "anchor_points": self.anchor_points,
            "pruning": self.pruning,
            "d_orbits": self.d_orbits,
            "count_up_to_stabilizer": self.count_up_to_stabilizer,
            "labelled_total": self.labelled_total,
            "complete": self.complete,
            "units_done": self.units_done,
            "units_total": self.units_total,
            "wall_time": self.wall_time_ms,
        }
        if self.witnesses is not None:
            out["witnesses"] = self.witnesses
        if self.classes is not None:
            out["classes"] = self.classes
            out["class_count"] = len(self.classes)
        out.update(self.extra)
        return certs.sign(out)

    @classmethod
    def from_json(cls, d: dict) -> "SearchCertificate":
        known = {"kind", "plane", "t", "mode", "anchor", "anchor_points", "pruning", "d_orbits",
                 "count_up_to_stabilizer", "labelled_total", "complete", "units_done", "units_total",
                 "wall_time", "witnesses", "classes", "class_count", "digest"}
        return cls(
            plane=d["plane"], t=d["t"], mode=d["mode"], anchor=d["anchor"],
            anchor_points=d["anchor_points"], pruning=d["pruning"], d_orbits=d["d_orbits"],
            witnesses=d.get("witnesses"), complete=d["complete"], classes=d.get("classes"),
            units_done=d.get("units_done", 0), units_total=d.get("units_total", 0),
            wall_time_ms=d.get("wall_time", 0),
            extra={k: v for k, v in d.items() if k not in known},
        )

    def all_witnesses(self):
        return [tuple(w) for w in (self.witnesses or [])]


def check_t(plane: Plane, t: int) -> None:
    q = plane.order
    if not 1 <= t <= q - 1:
        raise InvalidT(f"t must satisfy 1 <= t <= q-1 = {q - 1}, got {t}")


def _frontier_load(path: Path, key: dict) -> dict:
    if path is None or not path.exists():
        return {}
    data = json.loads(path.read_text())
    if data.get("key") != certs.plain(key):
        raise InputError(f"frontier file {path} belongs to a different search")
    return data.get("done", {})


def _frontier_save(path: Path, key: dict, done: dict) -> None:
    if path is not None:
        certs.write_atomic(path, json.dumps({"key": certs.plain(key), "done": done}, sort_keys=True))


def search_long_secant(
    plane: Plane,
    t: int,
    mode: str = "witnesses",
    *,
    prune: bool = True,
    jobs: int = 1,
    time_limit: float | None = None,
    frontier: str | Path | None = None,
) -> SearchCertificate:
    """All t-semiarcs containing q+1-t points of line 0, one removed set per stabilizer orbit.

    ``frontier`` names a JSON file recording finished work units; rerunning with
    the same file resumes.  ``time_limit`` (seconds) stops handing out units
    and marks the certificate incomplete.
    """
    if mode not in MODES:
        raise InputError(f"mode must be one of {', '.join(MODES)}")
    check_t(plane, t)
    start = time.monotonic()
    orbits = removal_orbits(plane, t)
    want_w = mode != "count" or not prune
    units = []
    for idx, (D, _size) in enumerate(orbits):
        if prune:
            for first in _Core(plane, t, D).first_choices():
                units.append((idx, first))
        else:
            units.append((idx, "all"))
    key = {"plane": plane.ref, "t": t, "prune": prune, "mode": mode}
    fpath = Path(frontier) if frontier is not None else None
    done = _frontier_load(fpath, key)
    _frontier_save(fpath, key, done)

    def ukey(u):
        return f"{u[0]}:{u[1]}"

    todo = [u for u in units if ukey(u) not in done]

    def args(u):
        return (plane, t, orbits[u[0]][0], None if u[1] == "all" else u[1], want_w, prune)

    def record(u, res):
        cnt, ws = res
        done[ukey(u)] = {"count": cnt, "witnesses": [list(w) for w in ws] if want_w else []}
        _frontier_save(fpath, key, done)

    out_of_time = False
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            futs = {ex.submit(_unit_worker, args(u)): u for u in todo}
            for fut, u in futs.items():
                if time_limit is not None and time.monotonic() - start > time_limit:
                    out_of_time = True
                    for f in futs:
                        f.cancel()
                    break
                record(u, fut.result())
    else:
        for u in todo:
            if time_limit is not None and time.monotonic() - start > time_limit:
                out_of_time = True
                break
            record(u, _unit_worker(args(u)))

    d_orbits = []
    witnesses = []
    for idx, (D, size) in enumerate(orbits):
        ws = []
        cnt = 0
        for u in units:
            if u[0] == idx and ukey(u) in done:
                cnt += done[ukey(u)]["count"]
                ws.extend(tuple(w) for w in done[ukey(u)]["witnesses"])
        d_orbits.append({"removed": list(D), "orbit_size": size, "count": cnt})
        witnesses.extend(sorted(ws))
    complete = not out_of_time and all(ukey(u) in done for u in units)
    cert = SearchCertificate(
        plane=plane.spec(),
        t=t,
        mode=mode,
        anchor=ANCHOR,
        anchor_points=list(plane.lines[ANCHOR]),
        pruning=list(PRUNING_RULES) if prune else ["none (brute force)"],
        d_orbits=d_orbits,
        witnesses=[list(w) for w in witnesses] if mode != "count" else None,
        complete=complete,
        units_done=sum(1 for u in units if ukey(u) in done),
        units_total=len(units),
    )
    if mode == "classes":
        cert.classes = equivalence_classes(plane, witnesses)
    cert.wall_time_ms = int((time.monotonic() - start) * 1000)
    log.info("search q=%d t=%d: %d solutions (%d labelled), complete=%s",
             plane.order, t, cert.count_up_to_stabilizer, cert.labelled_total, complete)
    return cert


def equivalence_classes(plane: Plane, sets) -> list[dict]:
    """Bucket sets into PGammaL(3,q) classes; each class is listed by its least member."""
    from collections import Counter

    buckets: dict = {}
    for S in sorted(tuple(s) for s in sets):
        inv = tuple(sorted(Counter(point_profiles(plane, S)).items()))
        reps = buckets.setdefault(inv, [])
        for rep in reps:
            if are_equivalent(plane, rep["representative"], S) is not None:
                rep["size"] += 1
                break
        else:
            reps.append({"representative": list(S), "size": 1})
    out = [r for reps in buckets.values() for r in reps]
    return sorted(out, key=lambda r: r["representative"])


def replay(cert: SearchCertificate | dict, plane: Plane) -> bool:
    """Rerun the search recorded in ``cert`` and compare the counts."""
    if isinstance(cert, dict):
        cert = SearchCertificate.from_json(cert)
    again = search_long_secant(plane, cert.t, "count" if cert.witnesses is None else "witnesses")
    same = [o["count"] for o in again.d_orbits] == [o["count"] for o in cert.d_orbits]
    if cert.witnesses is not None:
        same = same and again.witnesses == cert.witnesses
    return same and again.complete


def census(plane: Plane, *, mode: str = "witnesses", store: bool = True, jobs: int = 1,
           time_limit: float | None = None, root=None) -> list[SearchCertificate]:
    """One certificate per t in 1..q-2, persisted to the certificate store."""
    out = []
    start = time.monotonic()
    for t in range(1, plane.order - 1):
        left = None if time_limit is None else max(0.0, time_limit - (time.monotonic() - start))
        fpath = None
        if store:
            spath = certs.store_path(plane.ref, t, {"plane": plane.ref, "t": t, "mode": mode}, root)
            fpath = spath.with_suffix(".frontier.json")
        cert = search_long_secant(plane, t, mode, jobs=jobs, time_limit=left, frontier=fpath)
        if store:
            certs.write_atomic(spath, certs.dumps(cert.to_json()))
            if cert.complete and fpath.exists():
                fpath.unlink()
        out.append(cert)
    return out


# -- semiarcs containing a V_t-configuration on the pinned line pair

def _affine_reps(F, t: int) -> list[tuple[int, ...]]:
    """t-subsets of GF(q) up to y -> a y + b."""
    q = F.q
    maps = [(a, b) for a in range(1, q) for b in range(q)]
    seen = set()
    reps = []
    for combo in itertools.combinations(range(q), t):
        if combo in seen:
            continue
        seen |= {tuple(sorted(F.add(F.mul(a, y), b) for y in combo)) for a, b in maps}
        reps.append(combo)
    return reps


@dataclass
class VConfigSet:
    points: tuple[int, ...]
    removed: tuple[tuple[int, ...], tuple[int, ...]]
    X: tuple[int, ...]
    vertex_in: bool


def vconfig_census(plane: Plane, t: int, vertex_in: bool) -> list[VConfigSet]:
    """Every t-semiarc S with (l1 xor l2) n S a V_t-configuration on the pinned lines.

    Removals are taken up to independent affine maps of the two legs (the
    stabilizer of the two lines induces them), and the remaining points X of S
    range over subsets of the perspectivity centres, which is forced because a
    point of X not being a centre would lose a tangent.
    """
    from .perspective import PerspectiveFrame, centres

    check_t(plane, t)
    if not plane.is_generated:
        raise InputError("V-configuration census needs a generated plane")
    F, q = plane.field, plane.order
    frame = PerspectiveFrame.standard(plane)
    P = frame.vertex
    reps = _affine_reps(F, t)
    out = []
    for R1 in reps:
        for R2 in reps:
            X1 = [frame.leg_point(1, y) for y in range(q) if y not in R1]
            X2 = [frame.leg_point(2, y) for y in range(q) if y not in R2]
            base = X1 + X2 + ([P] if vertex_in else [])
            U = list(centres(frame, X1, X2).U) if X1 and X2 else []
            for k in range(len(U) + 1):
                for X in itertools.combinations(U, k):
                    S = tuple(sorted(base + list(X)))
                    if classify_semiarc(plane, S).t == t:
                        out.append(VConfigSet(S, (R1, R2), X, vertex_in))
    return out
