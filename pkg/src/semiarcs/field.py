"""Exact arithmetic in GF(p^r).

Elements are dense integers ``0..q-1``: the element with index ``i`` is the
polynomial whose coefficients are the base-``p`` digits of ``i`` (lowest
degree first), reduced modulo a fixed monic irreducible polynomial.  So ``0``
is zero, ``1`` is one, and the prime subfield is ``0..p-1``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from dataclasses import field as dc_field

import numpy as np

from .errors import (
    DegreeDoesNotDivide,
    DependentBasis,
    InputError,
    NonPrimeCharacteristic,
    OrderDoesNotDivide,
    ReducibleModulus,
)

# full q*q addition table is kept below this order
_ADD_TABLE_LIMIT = 1024
MAX_ORDER = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, r)`` with ``q == p**r`` or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                return None
            r, m = 0, q
            while m % p == 0:
                m //= p
                r += 1
            return (p, r) if m == 1 else None
    return None


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- naive polynomial arithmetic over GF(p); coefficient lists, low degree first

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_rem(a, m, p):
    a = _trim(a)
    m = _trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a = _trim(a)
    return a


def poly_mulmod(a, b, m, p):
    prod = [0] * (len(a) + len(b))
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return poly_rem(prod, m, p)


def is_irreducible(modulus, p) -> bool:
    m = _trim(modulus)
    deg = len(m) - 1
    if deg < 1:
        return False
    for k in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            if poly_rem(m, list(low) + [1], p) == []:
                return False
    return True


def smallest_irreducible(p: int, r: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree r, low-to-high."""
    for low in itertools.product(range(p), repeat=r):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FiniteField:
    """The field GF(p^r) with table arithmetic on dense element indices."""

    def __init__(self, p: int, r: int, modulus):
        self.p = p
        self.r = r
        self.q = q = p**r
        self.modulus = tuple(modulus)
        self._pow_p = [p**i for i in range(r)]
        self.generator = self._find_generator()

        exp = [0] * (2 * (q - 1) + 1)
        log = [-1] * q
        x = [1]
        g = self.to_poly(self.generator)
        for i in range(q - 1):
            e = self._from_poly(x)
            exp[i] = e
            log[e] = i
            x = poly_mulmod(x, g, self.modulus, p)
        for i in range(q - 1, len(exp)):
            exp[i] = exp[i - (q - 1)]
        self._exp = exp
        self._log = log

        self._neg = [self._from_digits([(-c) % p for c in self.digits(a)]) for a in range(q)]
        self._add = None
        if q <= _ADD_TABLE_LIMIT:
            if p == 2:
                self._add = [[a ^ b for b in range(q)] for a in range(q)]
            else:
                dig = [self.digits(a) for a in range(q)]
                self._add = [
                    [self._from_digits([(x + y) % p for x, y in zip(dig[a], dig[b])]) for b in range(q)]
                    for a in range(q)
                ]
        self._inv = [0] + [exp[(q - 1 - log[a]) % (q - 1)] for a in range(1, q)]

    # -- representation
    def digits(self, a: int) -> list[int]:
        return [(a // pw) % self.p for pw in self._pow_p]

    def _from_digits(self, d) -> int:
        return sum(c * pw for c, pw in zip(d, self._pow_p))

    def to_poly(self, a: int) -> list[int]:
        return _trim(self.digits(a))

    def _from_poly(self, poly) -> int:
        d = list(poly) + [0] * (self.r - len(poly))
        return self._from_digits(d)

    def _find_generator(self) -> int:
        q, p = self.q, self.p
        if q == 2:
            return 1
        factors = prime_factors(q - 1)

        def npow(a, k):
            result, base = [1], self.to_poly(a)
            while k:
                if k & 1:
                    result = poly_mulmod(result, base, self.modulus, p)
                base = poly_mulmod(base, base, self.modulus, p)
                k >>= 1
            return result

        for g in range(2, q):
            if all(npow(g, (q - 1) // f) != [1] for f in factors):
                return g
        raise AssertionError("no generator")  # pragma: no cover

    # -- arithmetic
    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a][b]
        if self.p == 2:
            return a ^ b
        return self._from_digits([(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def exp(self, k: int) -> int:
        return self._exp[k % (self.q - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def frob(self, a: int, e: int = 1) -> int:
        """x -> x^(p^e)."""
        return self.pow(a, self.p ** (e % self.r))

    # -- structure
    @property
    def elements(self) -> range:
        return range(self.q)

    @functools.cached_property
    def add_table(self) -> np.ndarray:
        return np.array([[self.add(a, b) for b in range(self.q)] for a in range(self.q)], dtype=np.int64)

    @functools.cached_property
    def mul_table(self) -> np.ndarray:
        return np.array([[self.mul(a, b) for b in range(self.q)] for a in range(self.q)], dtype=np.int64)

    def order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        from math import gcd

        return (self.q - 1) // gcd(self._log[a], self.q - 1)

    def subfield(self, d: int) -> list[int]:
        """Sorted elements of the subfield GF(p^d); d must divide r."""
        if d < 1 or self.r % d:
            raise DegreeDoesNotDivide(f"{d} does not divide {self.r}")
        if d == self.r:
            return list(range(self.q))
        step = (self.q - 1) // (self.p**d - 1)
        return sorted([0] + [self._exp[k * step] for k in range(self.p**d - 1)])

    def squares(self) -> list[int]:
        """Sorted non-zero squares."""
        return sorted({self.mul(x, x) for x in range(1, self.q)})

    def spec(self) -> dict:
        return {"p": self.p, "r": self.r, "modulus": list(self.modulus)}

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.r, self.modulus) == (
            other.p,
            other.r,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __reduce__(self):
        return (make_field, (self.p, self.r, self.modulus))

    def __repr__(self):
        return f"GF({self.q})"


@functools.lru_cache(maxsize=None)
def _make_field(p, r, modulus):
    return FiniteField(p, r, modulus)


def make_field(p: int, r: int = 1, modulus=None) -> FiniteField:
    """Build (or fetch from cache) GF(p^r).

    When ``modulus`` is omitted the lexicographically smallest monic
    irreducible of degree r is used, coefficients read low-to-high.
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
    if r < 1:
        raise InputError(f"extension degree must be positive, got {r}")
    if p**r > MAX_ORDER:
        raise InputError(f"field order {p}^{r} exceeds supported maximum")
    if modulus is None:
        modulus = smallest_irreducible(p, r)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise InputError(f"modulus must be monic of degree {r}")
        if not is_irreducible(modulus, p):
            raise ReducibleModulus(f"{list(modulus)} is reducible over GF({p})")
    return _make_field(p, r, tuple(modulus))


def field_of_order(q: int) -> FiniteField:
    pr = prime_power(q)
    if pr is None:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    return make_field(*pr)


@dataclass(frozen=True)
class MultSubgroup:
    field: FiniteField = dc_field(repr=False)
    n: int
    elements: tuple[int, ...]
    generator: int


@dataclass(frozen=True)
class AddSubgroup:
    field: FiniteField = dc_field(repr=False)
    d: int
    basis: tuple[int, ...]
    elements: tuple[int, ...]
    invariant: bool | None = None

    @property
    def h1(self) -> int:
        return len(self.basis)

    @property
    def h(self) -> int:
        return self.d * len(self.basis)

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_invariant_under(self, A: MultSubgroup) -> bool:
        F, elems = self.field, set(self.elements)
        return all(F.mul(a, b) in elems for a in A.elements for b in self.elements)

    def is_subfield(self) -> bool:
        F, elems = self.field, set(self.elements)
        return 1 in elems and all(F.mul(a, b) in elems for a in self.elements for b in self.elements)


def mult_subgroup(F: FiniteField, n: int) -> MultSubgroup:
    """The unique subgroup of order n of the multiplicative group."""
    if n < 1 or (F.q - 1) % n:
        raise OrderDoesNotDivide(f"{n} does not divide {F.q - 1}")
    step = (F.q - 1) // n
    gen = F.exp(step)
    return MultSubgroup(F, n, tuple(sorted(F.exp(k * step) for k in range(n))), gen)


def span(F: FiniteField, d: int, basis) -> list[int]:
    K = F.subfield(d)
    spanned = {0}
    for b in basis:
        nxt = {F.add(x, F.mul(k, b)) for x in spanned for k in K}
        if len(nxt) != len(spanned) * len(K):
            raise DependentBasis(f"basis {list(basis)} is dependent over GF({F.p}^{d})")
        spanned = nxt
    return sorted(spanned)


def add_subgroup(F: FiniteField, d: int, basis, A: MultSubgroup | None = None) -> AddSubgroup:
    """GF(p^d)-span of ``basis``; optionally record invariance under ``A``."""
    if d < 1 or F.r % d:
        raise DegreeDoesNotDivide(f"{d} does not divide {F.r}")
    basis = tuple(int(b) for b in basis)
    if any(not 0 <= b < F.q for b in basis):
        raise InputError("basis element out of range")
    B = AddSubgroup(F, d, basis, tuple(span(F, d, basis)))
    if A is not None:
        B = AddSubgroup(F, d, basis, B.elements, B.is_invariant_under(A))
    return B


def canonical_basis(F: FiniteField, d: int, h1: int) -> list[int]:
    """First ``h1`` elements (by index) that are independent over GF(p^d)."""
    K = F.subfield(d)
    basis, spanned = [], {0}
    for x in range(1, F.q):
        if len(basis) == h1:
            break
        if x in spanned:
            continue
        basis.append(x)
        spanned = {F.add(y, F.mul(k, x)) for y in spanned for k in K}
    if len(basis) < h1:
        raise DependentBasis(f"GF({F.q}) has dimension {F.r // d} over GF({F.p}^{d})")
    return basis
