"""Generators for the named semiarc families.

Every generator returns a :class:`Construction` carrying the point set with the
t and V-type it is supposed to have; :func:`verify` recomputes both.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from dataclasses import field as dc_field
from fractions import Fraction

from .errors import (
    BadASet,
    BadRemovalCount,
    CaseConstraintViolated,
    ChainNotNested,
    EvenOrder,
    InputError,
    NoFanoSubplane,
    NotASubfield,
    SubfieldTooSmall,
)
from .field import FiniteField, canonical_basis, field_of_order, make_field, mult_subgroup
from .perspective import (
    PerspectiveFrame,
    build_group,
    centres,
    perspective_sets_from_orbits,
)
from .plane import GENERATED, Plane, build_pg2, subplane_embed
from .semiarc import VBULLET, VCIRC, PointSet, classify_semiarc, vt_pairs

NO_V = "none"
NOT_VCIRC = "not-Vcirc"

THM_CASES = ("thm-I-i", "thm-I-ii", "thm-I-iii", "thm-II-ii", "thm-II-iii")


@dataclass
class Construction:
    family: str
    params: dict
    points: PointSet
    claimed_t: int
    claimed_type: str | None = None
    lines: tuple[int, int] | None = None
    extra: dict = dc_field(default_factory=dict)

    @property
    def plane(self) -> Plane:
        return self.points.plane

    def to_json(self) -> dict:
        out = {
            "family": self.family,
            "params": _jsonable(self.params),
            "plane": self.plane.ref,
            "points": list(self.points.points),
            "size": len(self.points),
            "claimed_t": self.claimed_t,
            "claimed_type": self.claimed_type,
        }
        if self.lines is not None:
            out["lines"] = list(self.lines)
        return out


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, set, frozenset)):
        items = [_jsonable(x) for x in v]
        return sorted(items) if isinstance(v, (set, frozenset)) else items
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return v


def type_matches(claimed: str | None, types: set[str]) -> bool:
    if claimed is None:
        return True
    if claimed == NO_V:
        return not types
    if claimed == NOT_VCIRC:
        return VCIRC not in types
    return claimed in types


def verify(c: Construction) -> dict:
    """Recompute t and the V-types present; compare with the claims."""
    rep = classify_semiarc(c.plane, c.points)
    types = set()
    if rep.t is not None:
        types = {w.type for w in vt_pairs(c.plane, c.points, rep.t)}
    ok = rep.t == c.claimed_t and type_matches(c.claimed_type, types)
    return {
        "verified_t": rep.t,
        "verdict": rep.verdict,
        "types": sorted(types),
        "ok": ok,
    }


def _check(c: Construction, rule: str = "output is not a semiarc with the claimed t") -> Construction:
    if classify_semiarc(c.plane, c.points).t != c.claimed_t:
        raise CaseConstraintViolated(rule)
    return c


def _pinned(plane: Plane):
    l1, l2 = plane.line((0, 1, 0)), plane.line((1, 0, 0))
    return l1, l2, plane.meet(l1, l2)


# -- projective triangle and V_t-configurations

def projective_triangle(F: FiniteField) -> Construction:
    if F.p == 2:
        raise EvenOrder(f"projective triangle needs odd q, got {F.q}")
    plane = build_pg2(F)
    pts = _triangle_points(plane, F.squares())
    return Construction("projective-triangle", {"q": F.q}, PointSet(plane, pts), (F.q - 1) // 2, VBULLET)


def _triangle_points(plane: Plane, A) -> list[int]:
    F = plane.field
    pts = {plane.point(v) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1))}
    for a in A:
        pts |= {plane.point((a, 0, 1)), plane.point((0, F.neg(a), 1)), plane.point((a, 1, 0))}
    return sorted(pts)


def vt_configuration(plane: Plane, l1: int, l2: int, t: int, removed1=None, removed2=None) -> Construction:
    q = plane.order
    if l1 == l2:
        raise InputError("need two distinct lines")
    if not 1 <= t < q - 1:
        raise BadRemovalCount(f"t must satisfy 1 <= t < q-1 = {q - 1}, got {t}")
    P = plane.meet(l1, l2)
    legs = [[x for x in plane.lines[L] if x != P] for L in (l1, l2)]
    removed = []
    for leg, R in zip(legs, (removed1, removed2)):
        R = leg[:t] if R is None else sorted(set(R))
        if len(R) != t or not set(R) <= set(leg):
            raise BadRemovalCount(f"need exactly {t} removed points off the vertex on each line")
        removed.append(R)
    pts = [x for leg, R in zip(legs, removed) for x in leg if x not in R]
    return Construction(
        "vt-config",
        {"t": t, "lines": [l1, l2], "removed": removed},
        PointSet(plane, pts),
        t,
        VCIRC,
        (l1, l2),
    )


# -- the shapes of the V_t classification

def _group(F, params):
    n = int(params.get("n", 1))
    d = int(params.get("d", 1))
    basis = params.get("basis")
    if basis is None:
        basis = canonical_basis(F, d, int(params.get("h1", 0)))
    return build_group(F, n, d, basis)


def build_thm_case(case: str, F: FiniteField, **params) -> Construction:
    """One of the five constructive shapes; ``params`` are per-case (see README)."""
    if case not in THM_CASES:
        raise InputError(f"unknown case {case!r}; expected one of {', '.join(THM_CASES)}")
    plane = build_pg2(F)
    q = F.q
    frame = PerspectiveFrame.standard(plane)
    l1, l2, P = frame.l1, frame.l2, frame.vertex
    X = params.get("X")

    if case == "thm-II-iii":
        n = int(params.get("n", 1))
        if (q - 1) % n or n > q - 2:
            raise CaseConstraintViolated("n must divide q-1 and satisfy n <= q-2")
        A = mult_subgroup(F, n).elements
        c = Construction(case, {"q": q, "n": n}, PointSet(plane, _triangle_points(plane, A)), q - 1 - n, VBULLET, (l1, l2))
        return _check(c)

    if case == "thm-II-ii":
        h = int(params.get("h", 1))
        if h < 1 or F.r % h or h == F.r:
            raise CaseConstraintViolated("h must be a proper divisor of r")
        sub = subplane_embed(make_field(F.p, h), F)
        subpts = set(sub.points)
        legs = [x for x in subpts if plane.on(x, l1) or plane.on(x, l2)]
        plines = [L for L in sub.lines if plane.on(P, L) and L not in (l1, l2)]
        if X is None:
            X = [min(x for x in plane.lines[L] if x in subpts and x != P) for L in plines]
        X = sorted(set(X))
        if not set(X) <= subpts or any(plane.on(x, l1) or plane.on(x, l2) for x in X):
            raise CaseConstraintViolated("X must lie in the subplane, off both lines")
        if any(not any(plane.on(x, L) for x in X) for L in plines):
            raise CaseConstraintViolated("every subplane line through P other than l1, l2 must meet X")
        c = Construction(case, {"q": q, "h": h, "X": X}, PointSet(plane, legs + X), q - F.p**h, VBULLET, (l1, l2))
        return _check(c)

    G = _group(F, params)
    n, ph = G.n, G.B.order
    I = sorted(set(int(j) for j in params.get("I", [1])))
    include_B = case == "thm-I-iii"
    if case in ("thm-I-i", "thm-I-ii") and not I:
        raise CaseConstraintViolated("orbit subset I must be non-empty")
    if case == "thm-I-iii" and len(I) >= G.m:
        raise CaseConstraintViolated("orbit subset I must be a proper subset of 1..m")
    if case in ("thm-I-i", "thm-I-iii") and G.h < 1:
        raise CaseConstraintViolated("this case needs h >= 1")
    if case == "thm-I-ii" and n < 2:
        raise CaseConstraintViolated("this case needs n >= 2")
    X1, X2 = perspective_sets_from_orbits(frame, G, I, include_B)
    U = set(centres(frame, X1, X2).U)
    if X is None:
        if case == "thm-I-i":
            X = sorted(plane.point((F.neg(1), 1, b)) for b in G.B.elements)[:2]
        elif case == "thm-I-ii":
            X = sorted(plane.point((F.neg(a), 1, 0)) for a in G.A.elements)[:2]
        else:
            X = sorted(plane.point((F.neg(a), 1, b)) for a, b in G.elements())
    X = sorted(set(X))
    if len(X) < 2:
        raise CaseConstraintViolated("|X| >= 2")
    if not set(X) <= U:
        raise CaseConstraintViolated("X must consist of perspectivity centres")
    if case == "thm-I-i":
        if len({plane.join(P, x) for x in X}) != 1:
            raise CaseConstraintViolated("X must lie on one line through P")
    elif case == "thm-I-ii":
        L = plane.join(X[0], X[1])
        if plane.on(P, L) or not all(plane.on(x, L) for x in X):
            raise CaseConstraintViolated("X must lie on one line not through P")
    else:
        sizes = plane.line_sizes(X)
        if any(sizes[L] == 1 for L in plane.point_lines[P]):
            raise CaseConstraintViolated("no line through P may meet X in exactly one point")
    k = len(I)
    t = q - k * n * ph - (ph if include_B else 0)
    info = {"q": q, "n": n, "d": G.d, "h": G.h, "basis": list(G.B.basis), "I": I, "X": X}
    c = Construction(case, info, PointSet(plane, list(X1) + list(X2) + X), t, VCIRC, (l1, l2))
    c.extra["group"] = G
    return _check(c)


# -- Suetake's semioval

def suetake(F: FiniteField, A) -> Construction:
    q = F.q
    A = sorted(set(int(a) for a in A))
    if 0 in A or any(not 0 < a < q for a in A):
        raise BadASet("A must consist of non-zero field elements")
    if any(F.neg(a) not in A for a in A):
        raise BadASet("A must satisfy A = -A")
    if not 2 <= len(A) <= q - 2:
        raise BadASet("need 2 <= |A| <= q-2")
    plane = build_pg2(F)
    Bs = [b for b in range(1, q) if b not in A]
    pts = (
        [plane.point((0, a, 1)) for a in A]
        + [plane.point((b, 0, 1)) for b in Bs]
        + [plane.point((c, c, 1)) for c in range(1, q)]
        + [plane.point((m, 1, 0)) for m in range(2, q)]
    )
    # element 1 is the field's one, so range(2, q) is GF(q) minus {0, 1}
    return Construction("suetake", {"q": q, "A": A}, PointSet(plane, pts), 1, NOT_VCIRC)


# -- subfield chains

def _chain(F: FiniteField, chain):
    chain = [int(e) for e in chain]
    if len(chain) < 2 or chain[-1] != F.r:
        raise ChainNotNested("chain must end at the extension degree of the field")
    for a, b in zip(chain, chain[1:]):
        if a < 1 or b % a or a == b:
            raise ChainNotNested(f"degrees {chain} are not a strictly nested divisor chain")
    return chain


def km_example(which: int, F: FiniteField, chain, I=None, Z=None, line=None) -> Construction:
    """Subplane-chain families 1..4 with the pinned lines x1=0, x0=0."""
    if which not in (1, 2, 3, 4):
        raise InputError("which must be 1, 2, 3 or 4")
    chain = _chain(F, chain)
    plane = build_pg2(F)
    q, s = F.q, len(chain) - 1
    l1, l2, P = _pinned(plane)
    layers = [set(subplane_embed(make_field(F.p, e), F).points) for e in chain]
    sub0 = subplane_embed(make_field(F.p, chain[0]), F)
    r0 = F.p ** chain[0]
    on_legs = {x for L in (l1, l2) for x in plane.lines[L]}
    S_j = [sorted((on_legs & layers[0]) - {P})]
    for j in range(1, s + 1):
        S_j.append(sorted((on_legs & layers[j]) - layers[j - 1]))
    inner = layers[0] - on_legs
    plines = [L for L in sub0.lines if plane.on(P, L) and L not in (l1, l2)]

    if I is None:
        I = [] if which == 3 else [1]
    I = sorted(set(int(j) for j in I))
    if any(not 1 <= j <= s for j in I):
        raise CaseConstraintViolated(f"I must be a subset of 1..{s}")
    if which in (1, 2) and not I:
        raise CaseConstraintViolated("I must be non-empty")
    if which == 3 and len(I) == s:
        raise CaseConstraintViolated("I must be a proper subset")
    half = sum(len(S_j[j]) for j in I) // 2
    params = {"q": q, "chain": chain, "I": I}

    if which in (1, 2):
        if line is None:
            cands = [L for L in sub0.lines if plane.on(P, L) == (which == 1) and L not in (l1, l2)]
            cands = [L for L in cands if len([x for x in plane.lines[L] if x in inner]) >= 2]
            if not cands:
                raise CaseConstraintViolated("no subplane line carries two admissible points")
            line = cands[0]
        if line not in sub0.lines or line in (l1, l2):
            raise CaseConstraintViolated("line must be a subplane line other than l1, l2")
        if plane.on(P, line) != (which == 1):
            raise CaseConstraintViolated("line must pass through P" if which == 1 else "line must miss P")
        allowed = [x for x in plane.lines[line] if x in inner]
        Z = allowed[:2] if Z is None else sorted(set(Z))
        if len(Z) < 2 or not set(Z) <= set(allowed):
            raise CaseConstraintViolated("Z must be >= 2 subplane points of the line, off l1 and l2")
        pts = [x for j in I for x in S_j[j]] + Z
        t = q - half
        params.update(line=line, Z=Z)
        kind = VCIRC
    elif which == 3:
        if Z is None:
            Z = [x for x in plane.lines[plines[0]] if x in inner][:2]
        Z = sorted(set(Z))
        if not Z or not set(Z) <= inner:
            raise CaseConstraintViolated("Z must be non-empty, inside the subplane, off l1 and l2")
        sizes = plane.line_sizes(Z)
        if any(sizes[L] == 1 for L in plines):
            raise CaseConstraintViolated("no subplane line through P may meet Z exactly once")
        pts = [x for j in I for x in S_j[j]] + Z + S_j[0]
        t = q - r0 - half
        params.update(Z=Z)
        kind = VCIRC
    else:
        if Z is None:
            Z = [min(x for x in plane.lines[L] if x in inner) for L in plines]
        Z = sorted(set(Z))
        if not set(Z) <= inner:
            raise CaseConstraintViolated("Z must lie inside the subplane, off l1 and l2")
        if any(not any(plane.on(z, L) for z in Z) for L in plines):
            raise CaseConstraintViolated("every subplane line through P other than l1, l2 must meet Z")
        pts = [P] + S_j[0] + Z
        t = q - r0
        params = {"q": q, "chain": chain, "Z": Z}
        kind = VBULLET
    c = Construction(f"km-{which}", params, PointSet(plane, pts), t, kind, (l1, l2))
    return _check(c)


# -- conics in a subplane

def alpha(n: int, m: int, t: int) -> Fraction:
    """Threshold min(n, m) + 2nm/(t-1) of the V-circle stability statement."""
    return min(n, m) + Fraction(2 * n * m, t - 1)


def beta(n: int, m: int, t: int) -> Fraction:
    """Threshold min(n, m) + nm/t of the V-bullet stability statement."""
    return min(n, m) + Fraction(n * m, t)


def _tangent(plane, sub_lines, C, Q):
    Cs = set(C)
    for L in sub_lines:
        if plane.on(Q, L) and sum(1 for x in plane.lines[L] if x in Cs) == 1:
            return L
    raise AssertionError("no tangent found")


def conic_example(part: int, F_sub: FiniteField, F: FiniteField, Z: int | None = None) -> Construction:
    s, q = F_sub.q, F.q
    if part not in (1, 2):
        raise InputError("part must be 1 or 2")
    if s <= 3:
        raise SubfieldTooSmall(f"need a subplane of order > 3, got {s}")
    if F_sub.p != F.p or F.r % F_sub.r or s == q:
        raise NotASubfield(f"GF({s}) is not a proper subfield of GF({q})")
    sub = subplane_embed(F_sub, F)
    plane = sub.plane
    K = F.subfield(F_sub.r)
    C = sorted({plane.point((x, F.mul(x, x), 1)) for x in K} | {plane.point((0, 1, 0))})
    Cs = set(C)
    subpts = set(sub.points)
    Q1, Q2 = C[0], C[1]
    sub_pts_on = lambda L: [x for x in plane.lines[L] if x in subpts]  # noqa: E731
    l1 = _tangent(plane, sub.lines, C, Q1)
    if part == 1:
        l2 = _tangent(plane, sub.lines, C, Q2)
        P = plane.meet(l1, l2)
        chord = plane.join(Q1, Q2)
        cand = [z for z in sub_pts_on(chord) if z not in (Q1, Q2)]

        def meets(z, k):
            return sum(1 for x in plane.lines[plane.join(P, z)] if x in Cs) >= k

        good = [z for z in cand if meets(z, 2)]
        if not good:
            # for even s the two tangents meet in the nucleus: every line through P is a tangent
            raise CaseConstraintViolated("no point Z of Q1Q2 with PZ a secant of the conic")
        if Z is None:
            Z = good[0]
        elif Z not in good:
            raise CaseConstraintViolated("Z must be a point of Q1Q2 with PZ a secant of the conic")
        pts = (set(sub_pts_on(l1)) | set(sub_pts_on(l2)) | Cs | {Z}) - {P, Q2}
    else:
        l2 = plane.join(Q1, Q2)
        ell = _tangent(plane, sub.lines, C, Q2)
        cand = [z for z in sub_pts_on(ell) if not plane.on(z, l1) and not plane.on(z, l2)]
        if Z is None:
            Z = cand[0]
        elif Z not in cand:
            raise CaseConstraintViolated("Z must be a subplane point of the tangent at Q2, off l1 and l2")
        pts = (set(sub_pts_on(l1)) | set(sub_pts_on(l2)) | Cs | {Z}) - {Q2}
    t = q - s
    c = Construction(f"conic-{part}", {"q": q, "s": s, "Z": Z}, PointSet(plane, pts), t, NO_V, (l1, l2))
    c.extra.update(alpha=alpha(t, t + 1, t) if t > 1 else None, beta=beta(t, t + 1, t))
    return _check(c)


# -- (q-2)-semiarcs

def _greedy_general(plane: Plane, k: int = 4) -> list[int]:
    chosen: list[int] = []
    for x in range(plane.n_points):
        if plane.general_position(chosen + [x]):
            chosen.append(x)
            if len(chosen) == k:
                return chosen
    raise AssertionError("plane has no quadrangle")


def diagonal_points(plane: Plane, quad) -> list[int]:
    a, b, c, d = quad
    j = plane.join
    return [plane.meet(j(a, b), j(c, d)), plane.meet(j(a, c), j(b, d)), plane.meet(j(a, d), j(b, c))]


def find_fano(plane: Plane, exhaustive: bool = False) -> list[int] | None:
    """Points of an order-2 subplane, or None.

    A quadrangle spans a Fano subplane exactly when its diagonal points are
    collinear.  In a generated plane every quadrangle is equivalent to the
    standard frame, so only the frame is tried unless ``exhaustive``.
    """
    if plane.kind == GENERATED and not exhaustive:
        quads = [[plane.point(v) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))]]
    else:
        quads = (list(qd) for qd in itertools.combinations(range(plane.n_points), 4)
                 if plane.general_position(qd))
    for qd in quads:
        dg = diagonal_points(plane, qd)
        if plane.collinear(dg):
            return sorted(set(qd) | set(dg))
    return None


def q_minus_2_family(plane: Plane, kind: str) -> Construction:
    q = plane.order
    if kind == "quadrangle":
        if plane.is_generated:
            pts = [plane.point(v) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))]
        else:
            pts = _greedy_general(plane)
        claimed = VCIRC
    elif kind == "quadrilateral":
        if plane.is_generated:
            lines = [plane.line(v) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))]
        else:
            lines = _greedy_dual(plane)
        pts = [plane.meet(L, M) for L, M in itertools.combinations(lines, 2)]
        claimed = VBULLET
    elif kind == "fano":
        pts = find_fano(plane)
        if pts is None:
            raise NoFanoSubplane(f"no order-2 subplane in {plane.ref or plane.order}")
        claimed = VBULLET
    else:
        raise InputError("kind must be quadrangle, quadrilateral or fano")
    return Construction(f"qm2-{kind}", {"q": q}, PointSet(plane, pts), q - 2, claimed)


def _greedy_dual(plane: Plane) -> list[int]:
    chosen: list[int] = []
    for L in range(plane.n_lines):
        trial = chosen + [L]
        if all(plane.meet(a, b) != plane.meet(a, c) for a, b, c in itertools.permutations(trial, 3)):
            chosen = trial
            if len(chosen) == 4:
                return chosen
    raise AssertionError("plane has no quadrilateral")


# -- registry used by the command line and the grid tests

FAMILIES = (
    ("projective-triangle", "vt-config") + THM_CASES
    + ("suetake", "km-1", "km-2", "km-3", "km-4", "conic-1", "conic-2",
       "qm2-quadrangle", "qm2-quadrilateral", "qm2-fano")
)


def construct(family: str, q: int, **kw) -> Construction:
    """Dispatch by family name with keyword parameters."""
    F = field_of_order(q)
    if family == "projective-triangle":
        return projective_triangle(F)
    if family == "vt-config":
        plane = build_pg2(F)
        l1, l2 = kw.get("lines") or (0, 1)
        return vt_configuration(plane, l1, l2, int(kw.get("t", 1)), kw.get("removed1"), kw.get("removed2"))
    if family in THM_CASES:
        return build_thm_case(family, F, **kw)
    if family == "suetake":
        A = kw.get("A")
        if A is None:
            A = [1, F.neg(1)]
        return suetake(F, A)
    if family.startswith("km-"):
        chain = kw.get("chain") or _default_chain(F)
        return km_example(int(family[3:]), F, chain, kw.get("I"), kw.get("Z"), kw.get("line"))
    if family.startswith("conic-"):
        s = int(kw.get("s") or 0)
        if not s:
            raise InputError("conic families need the subplane order s")
        return conic_example(int(family[6:]), field_of_order(s), F, kw.get("Z"))
    if family.startswith("qm2-"):
        return q_minus_2_family(build_pg2(F), family[4:])
    raise InputError(f"unknown family {family!r}")


def _default_chain(F: FiniteField) -> list[int]:
    from .field import prime_factors

    if F.r == 1:
        raise ChainNotNested("a prime field has no proper subfield chain")
    return [F.r // prime_factors(F.r)[-1], F.r]


def documented_grid(max_q: int = 16):
    """(family, q, params) for every construction exercised by the converse check."""
    from .field import divisors, prime_power

    for q in range(2, max_q + 1):
        pr = prime_power(q)
        if pr is None:
            continue
        p, r = pr
        F = make_field(p, r)
        if p != 2 and q >= 5:
            yield "projective-triangle", q, {}
        for t in range(1, q - 1):
            yield "vt-config", q, {"t": t}
        for n in divisors(q - 1):
            if n <= q - 2:
                yield "thm-II-iii", q, {"n": n}
        for h in divisors(r):
            if h < r:
                yield "thm-II-ii", q, {"h": h}
        for d in divisors(r):
            for n in divisors(p**d - 1):
                for h1 in range(r // d + 1):
                    G = build_group(F, n, d, canonical_basis(F, d, h1))
                    if G.m < 1:
                        continue
                    base = {"n": n, "d": d, "h1": h1}
                    for I in ([1], list(range(1, G.m + 1))):
                        if G.h >= 1:
                            yield "thm-I-i", q, {**base, "I": I}
                        if n >= 2:
                            yield "thm-I-ii", q, {**base, "I": I}
                    if G.h >= 1:
                        for I in ([], list(range(1, G.m))):
                            yield "thm-I-iii", q, {**base, "I": I}
        if q >= 4:
            neg = {a: F.neg(a) for a in range(1, q)}
            sym = sorted({tuple(sorted({a, neg[a]})) for a in range(1, q)})
            seen = set()
            for k in range(1, len(sym) + 1):
                A = sorted({a for cls in sym[:k] for a in cls})
                if 2 <= len(A) <= q - 2 and len(seen) < 3:
                    seen.add(tuple(A))
                    yield "suetake", q, {"A": A}
        for e0 in divisors(r):
            if e0 == r:
                continue
            chain = [e0, r]
            r0 = p**e0
            yield "km-1", q, {"chain": chain, "I": [1]}
            if r0 >= 3:
                yield "km-2", q, {"chain": chain, "I": [1]}
            yield "km-3", q, {"chain": chain, "I": []}
            yield "km-4", q, {"chain": chain}
            s = p**e0
            if s > 3:
                yield "conic-1", q, {"s": s}
                yield "conic-2", q, {"s": s}
        if r >= 4 and p == 2:
            yield "km-3", q, {"chain": [1, 2, r], "I": [1]}
            yield "km-1", q, {"chain": [1, 2, r], "I": [1, 2]}
        if q >= 3:
            yield "qm2-quadrangle", q, {}
            yield "qm2-quadrilateral", q, {}
            if p == 2:
                yield "qm2-fano", q, {}
