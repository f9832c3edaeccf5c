"""Arithmetic in GF(p^k) with polynomial-basis elements.

Elements are coefficient tuples ``(c_0, ..., c_{k-1})`` over GF(p), lowest
degree first. The modulus is the smallest monic irreducible polynomial of
degree k and the generator the smallest primitive element, where
polynomials are ordered by their integer code ``sum c_i p^i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .arith import factorize, is_prime
from .errors import CapacityError, DomainError, ShapeError
from .groups import AbelianGroup, GroupElement

MAX_FIELD_SIZE = 2**20

FieldElement = tuple[int, ...]


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m`` over GF(p)."""
    a = _trim([x % p for x in a])
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        lead = a[-1]
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * mc) % p
        _trim(a)
    return a


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _monic(p: int, degree: int):
    """All monic polynomials of the given degree, in increasing integer code."""
    for low in itertools.product(range(p), repeat=degree):
        yield list(reversed(low)) + [1]


def is_irreducible(m: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(m)//2."""
    k = len(m) - 1
    if k < 1:
        return False
    for deg in range(1, k // 2 + 1):
        for div in _monic(p, deg):
            if not poly_mod(m, div, p):
                return False
    return True


@dataclass(frozen=True)
class FiniteField:
    p: int
    k: int
    modulus: tuple[int, ...]
    generator: FieldElement
    _powers: tuple[FieldElement, ...] = field(repr=False, compare=False)

    @property
    def size(self) -> int:
        return self.p**self.k

    @property
    def additive_group(self) -> AbelianGroup:
        return AbelianGroup([self.p] * self.k)

    def one(self) -> FieldElement:
        return (1,) + (0,) * (self.k - 1)

    def zero(self) -> FieldElement:
        return (0,) * self.k

    def _pad(self, c: Sequence[int]) -> FieldElement:
        return tuple(c) + (0,) * (self.k - len(c))

    def element(self, coeffs: Sequence[int]) -> FieldElement:
        """Reduce an arbitrary coefficient sequence into the field."""
        return self._pad(poly_mod(list(coeffs), self.modulus, self.p))

    def check(self, x: Sequence[int]) -> FieldElement:
        if len(x) != self.k or any(not 0 <= c < self.p for c in x):
            raise ShapeError(f"{tuple(x)} is not an element of GF({self.p}^{self.k})")
        return tuple(int(c) for c in x)

    def add(self, x: Sequence[int], y: Sequence[int]) -> FieldElement:
        return tuple((a + b) % self.p for a, b in zip(self.check(x), self.check(y)))

    def neg(self, x: Sequence[int]) -> FieldElement:
        return tuple(-a % self.p for a in self.check(x))

    def mul(self, x: Sequence[int], y: Sequence[int]) -> FieldElement:
        prod = poly_mul(_trim(list(self.check(x))), _trim(list(self.check(y))), self.p)
        return self._pad(poly_mod(prod, self.modulus, self.p))

    def pow(self, x: Sequence[int], e: int) -> FieldElement:
        if e < 0:
            return self.pow(self.inv(x), -e)
        result, base = self.one(), self.check(x)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, x: Sequence[int]) -> FieldElement:
        x = self.check(x)
        if x == self.zero():
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(x, self.size - 2)

    def elements(self):
        return (self._pad(list(reversed(c))) for c in itertools.product(range(self.p), repeat=self.k))

    def exp(self, x: int) -> FieldElement:
        """generator**x, read from the precomputed power table."""
        return self._powers[x % (self.size - 1)]

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus), "generator": list(self.generator)}


def _order_is_full(fld_p: int, modulus: Sequence[int], g: list[int], n: int, prime_divisors: list[int]) -> bool:
    def power(e: int) -> list[int]:
        result, base = [1], g
        while e:
            if e & 1:
                result = poly_mod(poly_mul(result, base, fld_p), modulus, fld_p)
            base = poly_mod(poly_mul(base, base, fld_p), modulus, fld_p)
            e >>= 1
        return result

    return all(power(n // r) != [1] for r in prime_divisors)


@lru_cache(maxsize=64)
def make_field(p: int, k: int = 1) -> FiniteField:
    """GF(p^k) with deterministic modulus and generator.

    >>> make_field(7).generator
    (3,)
    >>> make_field(2, 2).modulus
    (1, 1, 1)
    """
    if not is_prime(p):
        raise DomainError(f"field characteristic must be prime, got {p}")
    if k < 1:
        raise DomainError(f"extension degree must be >= 1, got {k}")
    if p**k > MAX_FIELD_SIZE:
        raise CapacityError(f"GF({p}^{k}) exceeds the supported size {MAX_FIELD_SIZE}")

    modulus = next(m for m in _monic(p, k) if is_irreducible(m, p))
    n = p**k - 1
    divisors = list(factorize(n)) if n > 1 else []
    generator = None
    for low in itertools.product(range(p), repeat=k):
        g = _trim(list(reversed(low)))
        if not g:
            continue
        if _order_is_full(p, modulus, g, n, divisors):
            generator = g
            break
    assert generator is not None, "every finite field has a primitive element"

    powers = []
    cur = [1]
    for _ in range(n):
        powers.append(tuple(cur) + (0,) * (k - len(cur)))
        cur = poly_mod(poly_mul(cur, generator, p), modulus, p)
    if cur != [1]:
        raise AssertionError("generator power table did not close")
    gen = tuple(generator) + (0,) * (k - len(generator))
    return FiniteField(p, k, tuple(modulus), gen, tuple(powers))


def exp_map(F: FiniteField, x: int) -> GroupElement:
    """generator**x as an element of the additive group (Z/p)^k.

    The residues are the polynomial coefficients, lowest degree first.
    """
    q = F.size - 1
    if not 0 <= x < q:
        raise DomainError(f"exponent {x} outside [0, {q})")
    return F.exp(x)
