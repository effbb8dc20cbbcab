"""Projective planes of order q as incidence structures.

Points and lines are integer indices.  Generated Desarguesian planes also
carry homogeneous coordinates, normalized so the last non-zero coordinate is 1,
and are indexed as

* ``(x0, x1, 1)``  ->  ``x1*q + x0``
* ``(x0, 1, 0)``   ->  ``q*q + x0``
* ``(1, 0, 0)``    ->  ``q*q + q``

Lines use the same scheme on their dual coordinates, so line 0 is ``x2 = 0``.
"""

from __future__ import annotations

import functools
import io
import itertools
import os
from collections import Counter
from dataclasses import dataclass
from dataclasses import field as dc_field
from typing import Iterable

import numpy as np

from .errors import AxiomViolation, InputError, MalformedFile, NotASubfield, UnsupportedPlaneKind
from .field import FiniteField, field_of_order

GENERATED = "generated-desarguesian"
LOADED = "loaded"


def normalize(F: FiniteField, v) -> tuple[int, int, int]:
    x0, x1, x2 = v
    if x2:
        c = F.inv(x2)
    elif x1:
        c = F.inv(x1)
    elif x0:
        c = F.inv(x0)
    else:
        raise InputError("the zero vector is not a projective point")
    return (F.mul(c, x0), F.mul(c, x1), F.mul(c, x2))


def triple_index(q: int, v) -> int:
    x0, x1, x2 = v
    if x2 == 1:
        return x1 * q + x0
    if x1 == 1:
        return q * q + x0
    return q * q + q


def index_triple(q: int, i: int) -> tuple[int, int, int]:
    if i < q * q:
        return (i % q, i // q, 1)
    if i < q * q + q:
        return (i - q * q, 1, 0)
    return (1, 0, 0)


@dataclass(eq=False)
class Plane:
    order: int
    lines: tuple[tuple[int, ...], ...]
    kind: str = LOADED
    field: FiniteField | None = None
    ref: str = ""
    point_lines: tuple[tuple[int, ...], ...] = dc_field(default=(), repr=False)

    def __post_init__(self):
        if not self.point_lines:
            through = [[] for _ in range(self.n_points)]
            for L, pts in enumerate(self.lines):
                for x in pts:
                    through[x].append(L)
            self.point_lines = tuple(tuple(t) for t in through)
        self.line_masks = [sum(1 << x for x in pts) for pts in self.lines]
        self.point_masks = [sum(1 << L for L in ls) for ls in self.point_lines]

    @property
    def q(self) -> int:
        return self.order

    @property
    def n_points(self) -> int:
        return self.order**2 + self.order + 1

    n_lines = n_points

    @property
    def is_generated(self) -> bool:
        return self.kind == GENERATED

    @functools.cached_property
    def incidence(self) -> np.ndarray:
        """Boolean lines x points incidence matrix."""
        inc = np.zeros((self.n_lines, self.n_points), dtype=bool)
        for L, pts in enumerate(self.lines):
            inc[L, list(pts)] = True
        return inc

    @functools.cached_property
    def join_table(self) -> np.ndarray:
        n = self.n_points
        tab = np.full((n, n), -1, dtype=np.int32)
        for L, pts in enumerate(self.lines):
            idx = np.array(pts)
            tab[np.ix_(idx, idx)] = L
        np.fill_diagonal(tab, -1)
        return tab

    @functools.cached_property
    def meet_table(self) -> np.ndarray:
        n = self.n_lines
        tab = np.full((n, n), -1, dtype=np.int32)
        for x, ls in enumerate(self.point_lines):
            idx = np.array(ls)
            tab[np.ix_(idx, idx)] = x
        np.fill_diagonal(tab, -1)
        return tab

    def join(self, a: int, b: int) -> int:
        if a == b:
            raise InputError("join of a point with itself")
        return int(self.join_table[a, b])

    def meet(self, L: int, M: int) -> int:
        if L == M:
            raise InputError("meet of a line with itself")
        return int(self.meet_table[L, M])

    def on(self, x: int, L: int) -> bool:
        return bool(self.line_masks[L] >> x & 1)

    def collinear(self, pts: Iterable[int]) -> bool:
        pts = list(pts)
        if len(pts) <= 2:
            return True
        L = self.join(pts[0], pts[1])
        return all(self.on(x, L) for x in pts[2:])

    def general_position(self, pts) -> bool:
        """No three of ``pts`` collinear."""
        return all(not self.collinear(c) for c in itertools.combinations(pts, 3))

    def line_sizes(self, points) -> list[int]:
        mask = points_mask(points)
        return [(m & mask).bit_count() for m in self.line_masks]

    # -- coordinates (generated planes only)
    def _need_coords(self):
        if not self.is_generated:
            raise UnsupportedPlaneKind("coordinates exist only for generated planes")

    def coords(self, x: int) -> tuple[int, int, int]:
        self._need_coords()
        return index_triple(self.order, x)

    def line_coords(self, L: int) -> tuple[int, int, int]:
        self._need_coords()
        return index_triple(self.order, L)

    def point(self, v) -> int:
        """Index of the point with homogeneous coordinates ``v``."""
        self._need_coords()
        return triple_index(self.order, normalize(self.field, v))

    def line(self, v) -> int:
        """Index of the line ``v0*x0 + v1*x1 + v2*x2 = 0``."""
        self._need_coords()
        return triple_index(self.order, normalize(self.field, v))

    def spec(self) -> dict:
        out = {"ref": self.ref, "order": self.order, "kind": self.kind}
        if self.field is not None:
            out["field"] = self.field.spec()
        return out

    def __reduce__(self):
        if self.is_generated:
            return (build_pg2, (self.field,))
        return (Plane, (self.order, self.lines, self.kind, None, self.ref, self.point_lines))

    def __repr__(self):
        return f"Plane(order={self.order}, kind={self.kind!r}, ref={self.ref!r})"


def points_mask(points) -> int:
    if isinstance(points, int):
        return points
    return sum(1 << x for x in set(points))


def _check_axioms(order: int, lines) -> None:
    n = order * order + order + 1
    if len(lines) != n:
        raise AxiomViolation(f"expected {n} lines, found {len(lines)}", witness=("line-count", len(lines)))
    for L, pts in enumerate(lines):
        if len(set(pts)) != len(pts):
            raise AxiomViolation(f"line {L} repeats a point", witness=("line", L))
        if len(pts) != order + 1:
            raise AxiomViolation(
                f"line {L} has {len(pts)} points, expected {order + 1}", witness=("line", L)
            )
        for x in pts:
            if not 0 <= x < n:
                raise AxiomViolation(f"point index {x} out of range on line {L}", witness=("line", L))
    inc = np.zeros((n, n), dtype=np.int64)
    for L, pts in enumerate(lines):
        inc[L, list(pts)] = 1
    pair = inc.T @ inc
    bad = np.argwhere((pair != 1) & ~np.eye(n, dtype=bool))
    if len(bad):
        a, b = (int(v) for v in bad[0])
        raise AxiomViolation(
            f"points {a} and {b} lie on {int(pair[a, b])} common lines", witness=("points", a, b)
        )
    dual = inc @ inc.T
    bad = np.argwhere((dual != 1) & ~np.eye(n, dtype=bool))
    if len(bad):
        a, b = (int(v) for v in bad[0])
        raise AxiomViolation(f"lines {a} and {b} meet in {int(dual[a, b])} points", witness=("lines", a, b))


@functools.lru_cache(maxsize=None)
def build_pg2(F: FiniteField) -> Plane:
    """The Desarguesian plane PG(2, q) over ``F``."""
    q = F.q
    n = q * q + q + 1
    tri = np.array([index_triple(q, i) for i in range(n)], dtype=np.int64)
    mul, add = F.mul_table, F.add_table
    dot = add[add[mul[tri[:, None, 0], tri[None, :, 0]], mul[tri[:, None, 1], tri[None, :, 1]]],
              mul[tri[:, None, 2], tri[None, :, 2]]]
    inc = dot == 0  # rows: lines, columns: points
    lines = tuple(tuple(int(x) for x in np.flatnonzero(row)) for row in inc)
    plane = Plane(q, lines, GENERATED, F, f"pg:{q}")
    plane.__dict__["incidence"] = inc
    return plane


def pg(q: int) -> Plane:
    return build_pg2(field_of_order(q))


def parse_plane(text: str, ref: str = "") -> Plane:
    order = None
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if order is None:
            parts = body.split()
            if len(parts) != 2 or parts[0] != "order":
                raise MalformedFile(f"line {lineno}: expected 'order q' header")
            try:
                order = int(parts[1])
            except ValueError:
                raise MalformedFile(f"line {lineno}: order is not an integer") from None
            if order < 2:
                raise MalformedFile(f"line {lineno}: order must be at least 2")
            continue
        try:
            lines.append(tuple(sorted(int(tok) for tok in body.split())))
        except ValueError:
            raise MalformedFile(f"line {lineno}: non-integer point index") from None
    if order is None:
        raise MalformedFile("missing 'order q' header")
    _check_axioms(order, lines)
    return Plane(order, tuple(lines), LOADED, None, ref)


def load_plane(stream) -> Plane:
    """Read and validate an incidence file (path, text stream, or file-like)."""
    if isinstance(stream, (str, os.PathLike)):
        with open(stream) as fh:
            return parse_plane(fh.read(), f"file:{stream}")
    return parse_plane(stream.read(), f"file:{getattr(stream, 'name', '<stream>')}")


def dump_plane(plane: Plane) -> str:
    out = io.StringIO()
    out.write(f"order {plane.order}\n")
    for pts in plane.lines:
        out.write(" ".join(map(str, pts)) + "\n")
    return out.getvalue()


def plane_from_ref(ref: str) -> Plane:
    if ref.startswith("pg:"):
        try:
            q = int(ref[3:])
        except ValueError:
            raise InputError(f"bad plane reference {ref!r}") from None
        return pg(q)
    if ref.startswith("file:"):
        return load_plane(ref[5:])
    raise InputError(f"bad plane reference {ref!r}; use pg:<q> or file:<path>")


# -- subplanes

@dataclass(frozen=True)
class Subplane:
    plane: Plane = dc_field(repr=False)
    order: int
    points: tuple[int, ...]
    lines: tuple[int, ...]

    def induced_lines(self) -> list[tuple[int, ...]]:
        pts = set(self.points)
        return [tuple(x for x in self.plane.lines[L] if x in pts) for L in self.lines]

    def as_plane(self) -> Plane:
        """The subplane relabelled as a stand-alone (validated) plane."""
        relabel = {x: i for i, x in enumerate(self.points)}
        lines = [tuple(sorted(relabel[x] for x in ln)) for ln in self.induced_lines()]
        _check_axioms(self.order, lines)
        return Plane(self.order, tuple(lines), LOADED, None, f"subplane:{self.order}")


def subplane_embed(F_sub: FiniteField, F: FiniteField) -> Subplane:
    """Canonical subfield subplane PG(2, |F_sub|) inside PG(2, |F|)."""
    if F_sub.p != F.p or F.r % F_sub.r:
        raise NotASubfield(f"GF({F_sub.q}) is not a subfield of GF({F.q})")
    plane = build_pg2(F)
    K = set(F.subfield(F_sub.r))
    pts = tuple(x for x in range(plane.n_points) if all(c in K for c in plane.coords(x)))
    lns = tuple(L for L in range(plane.n_lines) if all(c in K for c in plane.line_coords(L)))
    return Subplane(plane, F_sub.q, pts, lns)


def closure(plane: Plane, points) -> list[int]:
    """Smallest set containing ``points`` closed under joins and meets."""
    pts = set(points)
    while True:
        lines = {plane.join(a, b) for a, b in itertools.combinations(sorted(pts), 2)}
        new = {plane.meet(L, M) for L, M in itertools.combinations(sorted(lines), 2)} | pts
        if new == pts:
            return sorted(pts)
        pts = new


def subplane_order(plane: Plane, points) -> int | None:
    """Order s if ``points`` is the point set of a subplane of order s >= 2."""
    pts = sorted(set(points))
    sizes = [k for k in plane.line_sizes(pts) if k >= 2]
    if not sizes or len(set(sizes)) != 1:
        return None
    s = sizes[0] - 1
    if s < 2 or len(pts) != s * s + s + 1 or len(sizes) != len(pts):
        return None
    return s


# -- collineations

def mat_mul(F, A, B):
    return tuple(
        tuple(
            F.add(F.add(F.mul(A[i][0], B[0][j]), F.mul(A[i][1], B[1][j])), F.mul(A[i][2], B[2][j]))
            for j in range(3)
        )
        for i in range(3)
    )


def mat_vec(F, A, v):
    return tuple(F.add(F.add(F.mul(A[i][0], v[0]), F.mul(A[i][1], v[1])), F.mul(A[i][2], v[2])) for i in range(3))


def mat_inv(F, A):
    """Inverse by Gauss-Jordan elimination; None when singular."""
    M = [list(A[i]) + [1 if i == j else 0 for j in range(3)] for i in range(3)]
    for col in range(3):
        piv = next((r for r in range(col, 3) if M[r][col]), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        c = F.inv(M[col][col])
        M[col] = [F.mul(c, x) for x in M[col]]
        for r in range(3):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[r], M[col])]
    return tuple(tuple(row[3:]) for row in M)


def frame_matrix(F, pts):
    """Matrix sending e0, e1, e2, e0+e1+e2 to the four given vectors (or None)."""
    p0, p1, p2, p3 = pts
    base = tuple(tuple(pt[i] for pt in (p0, p1, p2)) for i in range(3))
    inv = mat_inv(F, base)
    if inv is None:
        return None
    lam = mat_vec(F, inv, p3)
    if 0 in lam:
        return None
    return tuple(tuple(F.mul(base[i][j], lam[j]) for j in range(3)) for i in range(3))


@dataclass(frozen=True)
class Collineation:
    """x -> M . x^(p^e), coordinatewise Frobenius then matrix."""

    field: FiniteField = dc_field(repr=False)
    matrix: tuple[tuple[int, ...], ...]
    e: int = 0

    def apply_vector(self, v):
        F = self.field
        return mat_vec(F, self.matrix, tuple(F.frob(c, self.e) for c in v))

    def apply(self, plane: Plane, x: int) -> int:
        return plane.point(self.apply_vector(plane.coords(x)))

    def apply_set(self, plane: Plane, pts) -> list[int]:
        return sorted(self.apply(plane, x) for x in pts)

    def apply_line(self, plane: Plane, L: int) -> int:
        a, b = plane.lines[L][:2]
        return plane.join(self.apply(plane, a), self.apply(plane, b))

    def compose(self, other: "Collineation") -> "Collineation":
        """self after other."""
        F = self.field
        frob_m = tuple(tuple(F.frob(c, self.e) for c in row) for row in other.matrix)
        return Collineation(F, mat_mul(F, self.matrix, frob_m), (self.e + other.e) % F.r)

    def inverse(self) -> "Collineation":
        F = self.field
        inv = mat_inv(F, self.matrix)
        back = (-self.e) % F.r
        return Collineation(F, tuple(tuple(F.frob(c, back) for c in row) for row in inv), back)

    def to_json(self) -> dict:
        return {"matrix": [list(r) for r in self.matrix], "frobenius_exponent": self.e}


def identity(F: FiniteField) -> Collineation:
    return Collineation(F, ((1, 0, 0), (0, 1, 0), (0, 0, 1)), 0)


def random_collineation(F: FiniteField, rng) -> Collineation:
    while True:
        M = tuple(tuple(rng.randrange(F.q) for _ in range(3)) for _ in range(3))
        if mat_inv(F, M) is not None:
            return Collineation(F, M, rng.randrange(F.r))


def point_profiles(plane: Plane, S) -> list[tuple]:
    """Per-point invariant: membership plus sorted sizes of lines through it."""
    inS = points_mask(S)
    sizes = plane.line_sizes(inS)
    return [
        (bool(inS >> x & 1), tuple(sorted(sizes[L] for L in plane.point_lines[x])))
        for x in range(plane.n_points)
    ]


def _choose_frame(plane, S1, prof1, count2):
    """Greedy ordered frame: S1 points first (rarest profile class first)."""
    def key(x):
        return (count2.get(prof1[x], 0), x)

    pools = [sorted(S1, key=key), sorted((x for x in range(plane.n_points) if x not in set(S1)), key=key)]
    frame = []
    for pool in pools:
        for x in pool:
            if len(frame) == 4:
                break
            if x in frame:
                continue
            trial = frame + [x]
            if len(trial) <= 2 or plane.general_position(trial):
                frame.append(x)
    return frame


def are_equivalent(plane: Plane, S1, S2) -> Collineation | None:
    """A collineation of PG(2,q) mapping S1 onto S2, or None if none exists.

    Fixes an ordered frame in S1 and enumerates its images among points of
    matching profile; every candidate map is checked point by point.
    """
    if not plane.is_generated:
        raise UnsupportedPlaneKind("equivalence search needs a coordinatized plane")
    F = plane.field
    S1, S2 = sorted(set(S1)), sorted(set(S2))
    if len(S1) != len(S2):
        return None
    if Counter(plane.line_sizes(S1)) != Counter(plane.line_sizes(S2)):
        return None
    prof1, prof2 = point_profiles(plane, S1), point_profiles(plane, S2)
    if Counter(prof1) != Counter(prof2):
        return None
    count2 = Counter(prof2)
    by_prof = {}
    for x, pr in enumerate(prof2):
        by_prof.setdefault(pr, []).append(x)
    frame = _choose_frame(plane, S1, prof1, count2)
    target = set(S2)
    sizes1, sizes2 = plane.line_sizes(S1), plane.line_sizes(S2)
    src_vecs = [plane.coords(x) for x in frame]

    def extend(images):
        k = len(images)
        if k == 4:
            yield list(images)
            return
        for y in by_prof[prof1[frame[k]]]:
            if y in images:
                continue
            trial = images + [y]
            if k >= 2 and not plane.general_position(trial):
                continue
            if any(sizes1[plane.join(frame[i], frame[k])] != sizes2[plane.join(images[i], y)] for i in range(k)):
                continue
            yield from extend(trial)

    for images in extend([]):
        dst = frame_matrix(F, [plane.coords(y) for y in images])
        for e in range(F.r):
            src = frame_matrix(F, [tuple(F.frob(c, e) for c in v) for v in src_vecs])
            M = mat_mul(F, dst, mat_inv(F, src))
            g = Collineation(F, M, e)
            if all(g.apply(plane, x) in target for x in S1):
                return g
    return None
