"""Perspective point sets on two lines and the affine groups G(A, B).

Pinned frame: l1 is ``x1 = 0``, l2 is ``x0 = 0``, their common point is
P = (0, 0, 1); the leg points are (1, 0, y) and (0, 1, y), identified with y in
AG(1, q).  In this frame the centre (-a, 1, b) induces y -> a y + b from l1 to l2.
"""

from __future__ import annotations

import functools
import itertools
from collections import Counter
from dataclasses import dataclass
from dataclasses import field as dc_field

from .errors import (
    EmptyLeg,
    EmptySelection,
    IncompatibleParameters,
    InconsistentInput,
    InputError,
)
from .field import AddSubgroup, FiniteField, MultSubgroup, add_subgroup, divisors, mult_subgroup
from .plane import Plane, normalize, subplane_order


@dataclass(frozen=True)
class PerspectiveGroup:
    """G(A, B) = {y -> a y + b : a in A, b in B} with its orbits on GF(q)."""

    field: FiniteField = dc_field(repr=False)
    A: MultSubgroup
    B: AddSubgroup
    orbits: tuple[tuple[int, ...], ...] = dc_field(repr=False)

    @property
    def n(self) -> int:
        return self.A.n

    @property
    def h(self) -> int:
        return self.B.h

    @property
    def d(self) -> int:
        return self.B.d

    @property
    def m(self) -> int:
        return len(self.orbits) - 1

    @property
    def order(self) -> int:
        return self.A.n * self.B.order

    def orbit(self, j: int) -> tuple[int, ...]:
        """Orbit 0 is B, orbits 1..m the regular ones."""
        return self.orbits[j]

    def elements(self):
        return [(a, b) for a in self.A.elements for b in self.B.elements]

    def is_subfield_case(self) -> bool:
        return self.h >= 1 and self.B.is_subfield() and self.n == self.B.order - 1

    def to_json(self) -> dict:
        return {"n": self.n, "h": self.h, "d": self.d, "m": self.m, "order": self.order}


def _orbits(F: FiniteField, A, B) -> tuple[tuple[int, ...], ...]:
    seen = set(B)
    rest = []
    for y in range(F.q):
        if y in seen:
            continue
        orb = sorted({F.add(F.mul(a, y), b) for a in A for b in B})
        seen.update(orb)
        rest.append(tuple(orb))
    rest.sort(key=lambda o: o[0])
    return (tuple(sorted(B)),) + tuple(rest)


def build_group(F: FiniteField, n: int, d: int, basis) -> PerspectiveGroup:
    if d < 1 or F.r % d:
        raise IncompatibleParameters(f"d={d} does not divide r={F.r}")
    if n < 1 or (F.q - 1) % n:
        raise IncompatibleParameters(f"n={n} does not divide q-1={F.q - 1}")
    A = mult_subgroup(F, n)
    B = add_subgroup(F, d, basis, A)
    if not B.invariant:
        raise IncompatibleParameters(
            f"B is not invariant under the order-{n} subgroup (n must divide p^d - 1 for a "
            f"GF(p^d)-subspace B)"
        )
    G = PerspectiveGroup(F, A, B, _orbits(F, A.elements, B.elements))
    p, r, h = F.p, F.r, B.h
    assert G.m * n == p ** (r - h) - 1, "orbit count disagrees with (p^(r-h)-1)/n"
    assert len(G.orbits[0]) == p**h and all(len(o) == n * p**h for o in G.orbits[1:])
    return G


def admissible_groups(F: FiniteField):
    """Yield (n, d, h1, basis) for every n | p^d - 1, d | r and canonical basis of dim h1."""
    from .field import canonical_basis

    for d in divisors(F.r):
        for n in divisors(F.p**d - 1):
            for h1 in range(F.r // d + 1):
                yield n, d, h1, canonical_basis(F, d, h1)


class PerspectiveFrame:
    """Two lines, their common point, and affine coordinates on each leg."""

    def __init__(self, plane: Plane, l1: int, l2: int, base1=None, base2=None):
        if l1 == l2:
            raise InputError("perspective frame needs two distinct lines")
        self.plane = plane
        self.l1, self.l2 = l1, l2
        self.vertex = plane.meet(l1, l2)
        self._bases = (base1, base2)

    @classmethod
    def standard(cls, plane: Plane) -> "PerspectiveFrame":
        return cls(plane, plane.line((0, 1, 0)), plane.line((1, 0, 0)), (1, 0, 0), (0, 1, 0))

    def leg(self, i: int) -> list[int]:
        L = self.l1 if i == 1 else self.l2
        return [x for x in self.plane.lines[L] if x != self.vertex]

    @functools.cached_property
    def _params(self):
        plane = self.plane
        F = plane.field
        pv = plane.coords(self.vertex)
        out = []
        for i, L in ((1, self.l1), (2, self.l2)):
            base = self._bases[i - 1]
            if base is None:
                base = plane.coords(next(x for x in plane.lines[L] if x != self.vertex))
            pts = [plane.point(tuple(F.add(b, F.mul(y, c)) for b, c in zip(base, pv))) for y in range(F.q)]
            if sorted(pts) != sorted(self.leg(i)):
                raise InputError("leg base point does not lie on its line")
            out.append((pts, {x: y for y, x in enumerate(pts)}))
        return out

    def leg_point(self, i: int, y: int) -> int:
        return self._params[i - 1][0][y]

    def leg_coord(self, i: int, x: int) -> int:
        return self._params[i - 1][1][x]

    def recentred(self, c: int) -> "PerspectiveFrame":
        """Same lines, leg-1 origin moved to coordinate c (leg 2 unchanged)."""
        plane, F = self.plane, self.plane.field
        pv = plane.coords(self.vertex)
        b1 = plane.coords(self.leg_point(1, 0))
        base1 = tuple(F.add(b, F.mul(c, v)) for b, v in zip(b1, pv))
        base2 = plane.coords(self.leg_point(2, 0))
        return PerspectiveFrame(plane, self.l1, self.l2, base1, base2)

    def perspectivity(self, Q: int, x: int) -> int:
        """Image on l2 of the l1 point x under the perspectivity with centre Q."""
        return self.plane.meet(self.plane.join(Q, x), self.l2)


@dataclass
class CentreSet:
    frame: PerspectiveFrame = dc_field(repr=False)
    X1: tuple[int, ...]
    X2: tuple[int, ...]
    U: tuple[int, ...]
    case: int | None = None

    @functools.cached_property
    def profile(self) -> dict[int, int]:
        sizes = self.frame.plane.line_sizes(self.U)
        return dict(sorted(Counter(sizes).items()))


def centres(frame: PerspectiveFrame, X1, X2) -> CentreSet:
    """All centres of perspectivities mapping X1 onto X2, by direct test."""
    plane = frame.plane
    X1, X2 = tuple(sorted(set(X1))), tuple(sorted(set(X2)))
    if not X1 or not X2:
        raise EmptyLeg("both legs must be non-empty")
    leg1, leg2 = set(frame.leg(1)), set(frame.leg(2))
    if not set(X1) <= leg1 or not set(X2) <= leg2:
        raise InputError("leg sets must lie on their lines, off the common point")
    U = []
    if len(X1) == len(X2):
        off = plane.line_masks[frame.l1] | plane.line_masks[frame.l2]
        target = set(X2)
        for Q in range(plane.n_points):
            if off >> Q & 1:
                continue
            if all(frame.perspectivity(Q, x) in target for x in X1):
                U.append(Q)
    return CentreSet(frame, X1, X2, tuple(U))


def perspective_sets_from_orbits(frame: PerspectiveFrame, G: PerspectiveGroup, I, include_B: bool):
    I = sorted(set(I))
    if not I and not include_B:
        raise EmptySelection("select at least one orbit")
    if any(not 1 <= j <= G.m for j in I):
        raise InputError(f"orbit indices must lie in 1..{G.m}")
    ys = [y for j in ([0] if include_B else []) + I for y in G.orbit(j)]
    X1 = tuple(sorted(frame.leg_point(1, y) for y in ys))
    X2 = tuple(sorted(frame.leg_point(2, y) for y in ys))
    return X1, X2


def group_centres(frame: PerspectiveFrame, G: PerspectiveGroup) -> list[int]:
    """Centres of the maps y -> a y + b of G in the pinned frame: (-a, 1, b)."""
    plane, F = frame.plane, G.field
    return sorted(plane.point((F.neg(a), 1, b)) for a, b in G.elements())


@dataclass(frozen=True)
class CentreClassification:
    case: int
    checks: dict
    B1: tuple[int, ...]
    B2: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _case_label(G: PerspectiveGroup) -> int:
    # the subfield case is tested before the "A trivial" case: for B = GF(2), A = {1}
    # both descriptions apply and the subfield one is the sharper statement
    if G.n == 1 and G.h == 0:
        return 1
    if G.is_subfield_case():
        return 4
    if G.n == 1:
        return 2
    if G.h == 0:
        return 3
    return 5


def classify_centres(cs: CentreSet, G: PerspectiveGroup) -> CentreClassification:
    """Case 1..5 of the perspective-set classification plus the case's checks.

    The frame's leg-1 coordinates must put the B-orbit at G.B.
    """
    frame, plane = cs.frame, cs.frame.plane
    U = cs.U
    if not U or len(U) != G.order:
        raise InconsistentInput(f"|U| = {len(U)} but |G| = {G.order}")
    case = _case_label(G)
    cs.case = case
    P = frame.vertex
    n, ph = G.n, G.B.order
    Q0 = U[0]
    B1 = tuple(sorted(frame.leg_point(1, b) for b in G.B.elements))
    B2 = tuple(sorted(frame.perspectivity(Q0, x) for x in B1))
    sizes = plane.line_sizes(U)
    Umask = sum(1 << u for u in U)
    B1m, B2m = sum(1 << x for x in B1), sum(1 << x for x in B2)
    checks = {}

    # (g): every G-orbit on l1 lies in X1 iff its image lies in X2
    X1, X2 = set(cs.X1), set(cs.X2)
    g_ok = True
    for orb in G.orbits:
        pts1 = [frame.leg_point(1, y) for y in orb]
        for Q in U:
            img = [frame.perspectivity(Q, x) for x in pts1]
            if all(x in X1 for x in pts1) != all(y in X2 for y in img):
                g_ok = False
    checks["g"] = g_ok
    # (h): a line not through P meeting U twice meets both B1 and B2
    checks["h"] = all(
        (plane.line_masks[L] & B1m) and (plane.line_masks[L] & B2m)
        for L, s in enumerate(sizes)
        if s >= 2 and not plane.on(P, L)
    )
    if case == 1:
        checks["singleton"] = len(U) == 1
    elif case == 2:
        checks["collinear_with_P"] = len({plane.join(P, u) for u in U}) == 1 and len(U) == ph
    elif case == 3:
        L = plane.join(U[0], U[1]) if len(U) > 1 else None
        checks["on_line_not_through_P"] = (
            L is not None and all(plane.on(u, L) for u in U) and not plane.on(P, L) and len(U) == n
        )
    elif case == 4:
        pts = set(U) | set(B1) | set(B2) | {P}
        checks["subplane"] = subplane_order(plane, pts) == ph
    else:
        prof = cs.profile
        checks["type_0_1_n_ph"] = set(prof) <= {0, 1, n, ph}
        big = [L for L, s in enumerate(sizes) if s == ph]
        checks["n_lines_of_size_ph_through_P"] = len(big) == n and all(plane.on(P, L) for L in big)
        checks["n_lines_meet_B1_B2"] = all(
            (plane.line_masks[L] & B1m) and (plane.line_masks[L] & B2m)
            for L, s in enumerate(sizes)
            if s == n
        )
    return CentreClassification(case, checks, B1, B2)


# -- recognising the group of an arbitrary pair of perspective sets

def affinity_stabilizer(F: FiniteField, Y) -> list[tuple[int, int]]:
    """All (a, b), a != 0, with a*Y + b = Y."""
    Y = set(Y)
    y0 = min(Y)
    out = []
    for a in range(1, F.q):
        for b in range(F.q):
            if F.add(F.mul(a, y0), b) not in Y:
                continue
            if all(F.add(F.mul(a, y), b) in Y for y in Y):
                out.append((a, b))
    return out


def subspace_degree(F: FiniteField, B) -> int:
    """Largest d | r such that B is closed under multiplication by GF(p^d)."""
    Bs = set(B)
    for d in sorted(divisors(F.r), reverse=True):
        K = F.subfield(d)
        if all(F.mul(k, b) in Bs for k in K for b in Bs):
            return d
    raise InputError("not an additive subgroup")


def group_structure(F: FiniteField, pairs):
    """Decompose a subgroup of AGL(1,q) as a translate-conjugate of G(A, B).

    Returns (A, B, c): A the multipliers, B the translations, c a point such
    that the group is {y -> a (y - c) + c + b}.
    """
    pairs = set(pairs)
    Bt = sorted(b for a, b in pairs if a == 1)
    As = sorted({a for a, _ in pairs})
    c = 0
    non_trivial = [(a, b) for a, b in pairs if a != 1]
    if non_trivial:
        a, b = non_trivial[0]
        c = F.div(b, F.sub(1, a))  # fixed point of y -> a y + b
    expect = {(a, F.add(F.sub(c, F.mul(a, c)), t)) for a in As for t in Bt}
    if expect != pairs:
        raise InputError("stabilizer is not of type G(A, B)")
    return As, Bt, c


@dataclass
class Recognition:
    group: PerspectiveGroup
    frame: PerspectiveFrame
    centres: CentreSet
    shift: int


def recognise(frame: PerspectiveFrame, X1, X2) -> Recognition:
    """Find the full group of X1 (as G(A, B) up to a shift of origin) and centres."""
    F = frame.plane.field
    Y = [frame.leg_coord(1, x) for x in X1]
    A_el, B_el, c = group_structure(F, affinity_stabilizer(F, Y))
    n = len(A_el)
    d = subspace_degree(F, B_el)
    from .field import canonical_basis as _cb  # noqa: F401

    basis = _basis_of(F, d, B_el)
    G = build_group(F, n, d, basis)
    assert tuple(B_el) == G.B.elements
    new_frame = frame.recentred(c)
    cs = centres(new_frame, X1, X2)
    return Recognition(G, new_frame, cs, c)


def _basis_of(F, d, B):
    K = F.subfield(d)
    basis, spanned = [], {0}
    for x in sorted(B):
        if x in spanned:
            continue
        basis.append(x)
        spanned = {F.add(y, F.mul(k, x)) for y in spanned for k in K}
    return basis


def orbit_selections(m: int, limit: int = 12, rng=None):
    """(I, include_B) pairs: all of them for small m, else a fixed spread."""
    if 2 ** (m + 1) - 1 <= limit:
        return [(list(I), inc) for k in range(m + 1) for I in itertools.combinations(range(1, m + 1), k)
                for inc in (False, True) if I or inc]
    picks = [([], True), ([1], False), ([1], True), (list(range(1, m + 1)), False),
             (list(range(1, m)), True), ([1, m], False)]
    if rng is not None:
        while len(picks) < limit:
            I = sorted(rng.sample(range(1, m + 1), rng.randint(1, m)))
            picks.append((I, rng.random() < 0.5))
    return picks
