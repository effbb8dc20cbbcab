"""Point-set analytics: tangents, secant spectra, V_t-configurations, blocking sets."""

from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass

from .errors import InputError, NotASemiarc, PointInsideSet
from .plane import Plane

VCIRC = "Vcirc"  # vertex of the two lines not in the set
VBULLET = "Vbullet"  # vertex in the set


class PointSet:
    """A non-empty set of points of ``plane`` with cached line intersections."""

    def __init__(self, plane: Plane, points):
        pts = tuple(sorted(set(int(x) for x in points)))
        if not pts:
            raise InputError("point set must be non-empty")
        if pts[0] < 0 or pts[-1] >= plane.n_points:
            raise InputError("point index out of range")
        self.plane = plane
        self.points = pts
        self.mask = sum(1 << x for x in pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, x):
        return bool(self.mask >> x & 1)

    def __eq__(self, other):
        return isinstance(other, PointSet) and other.plane is self.plane and other.points == self.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"PointSet({self.plane.ref or self.plane.order}, {list(self.points)})"

    @functools.cached_property
    def line_sizes(self) -> list[int]:
        return self.plane.line_sizes(self.mask)

    @functools.cached_property
    def tangent_counts(self) -> dict[int, int]:
        sizes = self.line_sizes
        return {x: sum(1 for L in self.plane.point_lines[x] if sizes[L] == 1) for x in self.points}

    @functools.cached_property
    def spectrum(self) -> dict[int, int]:
        return dict(sorted(Counter(k for k in self.line_sizes if k >= 1).items()))

    def on_line(self, L: int) -> list[int]:
        return [x for x in self.plane.lines[L] if self.mask >> x & 1]

    def to_json(self) -> dict:
        return {"plane": self.plane.ref, "points": list(self.points)}


def as_pointset(plane: Plane, S) -> PointSet:
    if isinstance(S, PointSet):
        if S.plane is not plane:
            return PointSet(plane, S.points)
        return S
    return PointSet(plane, S)


@dataclass(frozen=True)
class SemiarcReport:
    t: int | None
    tangent_counts: dict[int, int]
    offending: tuple[int, ...] = ()

    @property
    def is_semiarc(self) -> bool:
        return self.t is not None

    @property
    def verdict(self) -> str:
        return f"t-semiarc({self.t})" if self.t is not None else "not-semiarc"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "t": self.t,
            "tangent_counts": {str(k): v for k, v in self.tangent_counts.items()},
            "offending": list(self.offending),
        }


def tangent_counts(plane: Plane, S) -> list[int]:
    """Number of tangents at each point of S, in point order."""
    S = as_pointset(plane, S)
    return [S.tangent_counts[x] for x in S.points]


def classify_semiarc(plane: Plane, S) -> SemiarcReport:
    S = as_pointset(plane, S)
    counts = S.tangent_counts
    values = Counter(counts.values())
    if len(values) == 1:
        return SemiarcReport(next(iter(values)), dict(counts))
    common = max(values, key=lambda v: (values[v], -v))
    return SemiarcReport(None, dict(counts), tuple(x for x, c in counts.items() if c != common))


def semiarc_t(plane: Plane, S) -> int | None:
    return classify_semiarc(plane, S).t


def secant_spectrum(plane: Plane, S) -> dict[int, int]:
    """k -> number of lines meeting S in exactly k points (k >= 1)."""
    return dict(as_pointset(plane, S).spectrum)


def _require_t(plane, S, t):
    rep = classify_semiarc(plane, S)
    if rep.t != t:
        raise NotASemiarc(f"set is {rep.verdict}, not a {t}-semiarc")


def long_secants(plane: Plane, S, t: int) -> list[int]:
    """All (q+1-t)-secants of a t-semiarc."""
    S = as_pointset(plane, S)
    _require_t(plane, S, t)
    k = plane.order + 1 - t
    out = [L for L, s in enumerate(S.line_sizes) if s == k]
    for L in out:
        assert len(S) - k <= plane.order, "long secant leaves more than q points off the line"
    return out


@dataclass(frozen=True)
class VtWitness:
    l1: int
    l2: int
    vertex: int
    vertex_in_set: bool
    removed1: tuple[int, ...]
    removed2: tuple[int, ...]

    @property
    def type(self) -> str:
        return VBULLET if self.vertex_in_set else VCIRC

    def to_json(self) -> dict:
        return {
            "lines": [self.l1, self.l2],
            "vertex": self.vertex,
            "type": self.type,
            "removed": [list(self.removed1), list(self.removed2)],
        }


def vt_pairs(plane: Plane, S, t: int) -> list[VtWitness]:
    """Line pairs whose symmetric difference meets S in a V_t-configuration."""
    S = as_pointset(plane, S)
    q = plane.order
    want = q - t
    if want < 1:
        return []
    sizes = S.line_sizes
    cand = [L for L, s in enumerate(sizes) if s in (want, want + 1)]
    out = []
    for i, L1 in enumerate(cand):
        for L2 in cand[i + 1:]:
            P = plane.meet(L1, L2)
            inP = P in S
            if sizes[L1] - inP != want or sizes[L2] - inP != want:
                continue
            r1 = tuple(x for x in plane.lines[L1] if x != P and x not in S)
            r2 = tuple(x for x in plane.lines[L2] if x != P and x not in S)
            out.append(VtWitness(L1, L2, P, inP, r1, r2))
    return out


def detect_vt(plane: Plane, S, t: int) -> list[VtWitness]:
    S = as_pointset(plane, S)
    _require_t(plane, S, t)
    return vt_pairs(plane, S, t)


@dataclass(frozen=True)
class RedeiReport:
    is_blocking: bool
    is_minimal: bool
    is_nontrivial: bool
    redei_lines: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "is_blocking": self.is_blocking,
            "is_minimal": self.is_minimal,
            "is_nontrivial": self.is_nontrivial,
            "redei_lines": list(self.redei_lines),
        }


def redei_analysis(plane: Plane, S) -> RedeiReport:
    S = as_pointset(plane, S)
    sizes = S.line_sizes
    blocking = min(sizes) >= 1
    nontrivial = max(sizes) < plane.order + 1
    minimal = blocking and all(c >= 1 for c in S.tangent_counts.values())
    redei = ()
    if blocking and nontrivial:
        k = len(S) - plane.order
        redei = tuple(L for L, s in enumerate(sizes) if s == k)
    return RedeiReport(blocking, minimal, nontrivial, redei)


@dataclass(frozen=True)
class LineBound:
    lines_meeting_U: int
    r: int
    bound: int

    @property
    def holds(self) -> bool:
        return self.lines_meeting_U <= self.bound

    @property
    def equality(self) -> bool:
        return self.lines_meeting_U == self.bound


def line_meeting_bound(plane: Plane, U, P: int) -> LineBound:
    """Lines meeting U against 1 + r q + (|U| - r)(q + 1 - r)."""
    U = as_pointset(plane, U)
    if P in U:
        raise PointInsideSet(f"point {P} lies in U")
    q = plane.order
    sizes = U.line_sizes
    meeting = sum(1 for s in sizes if s)
    r = sum(1 for L in plane.point_lines[P] if sizes[L])
    return LineBound(meeting, r, 1 + r * q + (len(U) - r) * (q + 1 - r))


def counting_identities(plane: Plane, S) -> bool:
    """Sum |l n S| = |S|(q+1) and sum |l n S|(|l n S|-1) = |S|(|S|-1)."""
    S = as_pointset(plane, S)
    sizes = S.line_sizes
    n = len(S)
    return sum(sizes) == n * (plane.order + 1) and sum(k * (k - 1) for k in sizes) == n * (n - 1)
