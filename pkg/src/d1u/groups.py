"""Finite abelian groups as products of cyclic factors.

A group is stored in primary decomposition: every factor is a prime power and
the factor list is sorted ascending, so two isomorphic groups compare equal.
Elements are plain tuples of residues, one per factor.

>>> g = AbelianGroup([6, 2])
>>> g.factors
(2, 2, 3)
>>> g.add((1, 0, 2), (1, 1, 2))
(0, 1, 1)
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .arith import factorize, partitions
from .errors import DomainError, ShapeError

GroupElement = tuple[int, ...]


def _split(raw: Sequence[int]) -> tuple[list[int], list[tuple[int, int]]]:
    """Split raw cyclic orders into prime-power parts.

    Returns the sorted prime-power factors and, for each of them, the pair
    (index of the raw factor it came from, modulus).
    """
    parts: list[tuple[int, int]] = []
    for i, n in enumerate(raw):
        n = int(n)
        if n < 1:
            raise DomainError(f"cyclic factor must be >= 1, got {n}")
        if n == 1:
            continue
        for p, e in factorize(n).items():
            parts.append((i, p**e))
    parts.sort(key=lambda item: item[1])
    return [m for _, m in parts], parts


@dataclass(frozen=True, init=False)
class AbelianGroup:
    """Finite abelian group Z/n_1 x ... x Z/n_r with prime-power n_j, sorted."""

    factors: tuple[int, ...]

    def __init__(self, factors: Sequence[int] = ()):
        canon, _ = _split(factors)
        object.__setattr__(self, "factors", tuple(canon))

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    def __len__(self) -> int:
        return self.order

    def __str__(self) -> str:
        if not self.factors:
            return "trivial"
        return " x ".join(f"Z/{n}" for n in self.factors)

    def zero(self) -> GroupElement:
        return (0,) * self.rank

    def check(self, u: Sequence[int]) -> GroupElement:
        """Validate shape and range of ``u``; return it as a tuple."""
        if len(u) != self.rank:
            raise ShapeError(f"element {tuple(u)} has {len(u)} residues, group {self} has {self.rank} factors")
        u = tuple(int(r) for r in u)
        for r, n in zip(u, self.factors):
            if not 0 <= r < n:
                raise ShapeError(f"residue {r} out of range for Z/{n}")
        return u

    def reduce(self, u: Sequence[int]) -> GroupElement:
        """Reduce arbitrary integers to an element (shape still checked)."""
        if len(u) != self.rank:
            raise ShapeError(f"element {tuple(u)} does not match group {self}")
        return tuple(int(r) % n for r, n in zip(u, self.factors))

    def __contains__(self, u: object) -> bool:
        try:
            self.check(u)  # type: ignore[arg-type]
        except (ShapeError, TypeError):
            return False
        return True

    def add(self, u: Sequence[int], v: Sequence[int]) -> GroupElement:
        u, v = self.check(u), self.check(v)
        return tuple((a + b) % n for a, b, n in zip(u, v, self.factors))

    def sub(self, u: Sequence[int], v: Sequence[int]) -> GroupElement:
        u, v = self.check(u), self.check(v)
        return tuple((a - b) % n for a, b, n in zip(u, v, self.factors))

    def neg(self, u: Sequence[int]) -> GroupElement:
        u = self.check(u)
        return tuple(-a % n for a, n in zip(u, self.factors))

    def scale(self, k: int, u: Sequence[int]) -> GroupElement:
        u = self.check(u)
        return tuple(k * a % n for a, n in zip(u, self.factors))

    def elements(self) -> Iterator[GroupElement]:
        """All elements in lexicographic order of residues (matches ``index``)."""
        return itertools.product(*(range(n) for n in self.factors))

    def index(self, u: Sequence[int]) -> int:
        """Mixed-radix code of ``u`` in ``range(order)``; last factor varies fastest."""
        code = 0
        for r, n in zip(self.check(u), self.factors):
            code = code * n + r
        return code

    def element(self, code: int) -> GroupElement:
        if not 0 <= code < self.order:
            raise ShapeError(f"code {code} out of range for group of order {self.order}")
        out = []
        for n in reversed(self.factors):
            code, r = divmod(code, n)
            out.append(r)
        return tuple(reversed(out))

    def to_json(self) -> list[int]:
        return list(self.factors)


def group_from_factors(raw: Sequence[int]) -> tuple[AbelianGroup, Callable[[Sequence[int]], GroupElement]]:
    """Canonical group for arbitrary cyclic orders plus a residue converter.

    The converter maps a residue tuple written against ``raw`` (e.g. ``[15]``)
    to the canonical coordinates (``Z/3 x Z/5``) via the Chinese remainder map.

    >>> g, conv = group_from_factors([15])
    >>> g.factors, conv([7])
    ((3, 5), (1, 2))
    """
    canon, parts = _split(raw)
    group = AbelianGroup(canon)
    raw = [int(n) for n in raw]

    def convert(u: Sequence[int]) -> GroupElement:
        if len(u) != len(raw):
            raise ShapeError(f"element {tuple(u)} does not match factors {raw}")
        for r, n in zip(u, raw):
            if not 0 <= int(r) < n:
                raise ShapeError(f"residue {r} out of range for Z/{n}")
        return tuple(int(u[i]) % m for i, m in parts)

    return group, convert


def direct_product(*groups: AbelianGroup) -> tuple[AbelianGroup, Callable[..., GroupElement]]:
    """Product group and an embedding ``(u_1, ..., u_k) -> element``."""
    raw = [n for g in groups for n in g.factors]
    group, convert = group_from_factors(raw)

    def embed(*elements: Sequence[int]) -> GroupElement:
        if len(elements) != len(groups):
            raise ShapeError(f"expected {len(groups)} components, got {len(elements)}")
        flat: list[int] = []
        for g, u in zip(groups, elements):
            flat.extend(g.check(u))
        return convert(flat)

    return group, embed


def cyclic(n: int) -> AbelianGroup:
    return AbelianGroup([n])


def enumerate_abelian_groups(n: int) -> list[AbelianGroup]:
    """One representative per isomorphism class of abelian groups of order ``n``.

    Classes correspond to a choice of partition of every prime exponent. The
    order is deterministic: primes ascending, partitions from the cyclic one
    (``(e,)``) down to the elementary abelian one (``(1, ..., 1)``).

    >>> [str(g) for g in enumerate_abelian_groups(8)]
    ['Z/8', 'Z/2 x Z/4', 'Z/2 x Z/2 x Z/2']
    """
    if n < 1:
        raise DomainError(f"group order must be >= 1, got {n}")
    per_prime = [
        [[p**k for k in part] for part in partitions(e)]
        for p, e in factorize(n).items()
    ] if n > 1 else []
    return [
        AbelianGroup([m for chunk in choice for m in chunk])
        for choice in itertools.product(*per_prime)
    ]


def character_value(g: AbelianGroup, index: Sequence[int], e: Sequence[int]) -> complex:
    """exp(2 pi i sum_j index_j e_j / n_j), the character ``index`` evaluated at ``e``."""
    index, e = g.check(index), g.check(e)
    # reduce the phase to [0, 1) exactly before leaving integer arithmetic
    num, den = 0, 1
    for s, x, n in zip(index, e, g.factors):
        num, den = num * n + s * x * den, den * n
    return cmath.exp(2j * math.pi * ((num % den) / den))


@dataclass(frozen=True)
class Character:
    """The character of ``group`` labelled by the element ``index``."""

    group: AbelianGroup
    index: GroupElement

    def __post_init__(self):
        object.__setattr__(self, "index", self.group.check(self.index))

    def __call__(self, e: Sequence[int]) -> complex:
        return character_value(self.group, self.index, e)


def characters(g: AbelianGroup) -> list[Character]:
    return [Character(g, s) for s in g.elements()]
