"""Differentials of functions Z/dZ -> B and the differential 1-uniformity test.

A function is d1u when, for every nonzero shift a, the difference sequence
``x -> f(x + a) - f(x)`` never repeats a value. Two deciders are provided:
``is_d1u`` checks shifts 1..ceil((d-1)/2) only (shift a and d - a carry the
same information), ``is_d1u_bruteforce`` counts solutions of
``f(x + a) - f(x) = b`` for every a != 0 and every b.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, ShapeError
from .groups import AbelianGroup, GroupElement, group_from_factors


@dataclass(frozen=True)
class GroupFunction:
    """A total function from Z/dZ into ``codomain``, stored as its value table."""

    d: int
    codomain: AbelianGroup
    values: tuple[GroupElement, ...]

    def __post_init__(self):
        if self.d < 1:
            raise DomainError(f"domain order must be >= 1, got {self.d}")
        if len(self.values) != self.d:
            raise ShapeError(f"expected {self.d} values, got {len(self.values)}")
        object.__setattr__(self, "values", tuple(self.codomain.check(v) for v in self.values))

    @classmethod
    def from_callable(cls, d: int, codomain: AbelianGroup, fn: Callable[[int], Sequence[int]]) -> "GroupFunction":
        return cls(d, codomain, tuple(codomain.reduce(fn(x)) for x in range(d)))

    @classmethod
    def cyclic(cls, d: int, n: int, values: Sequence[int]) -> "GroupFunction":
        """Shorthand for a function into Z/n given as plain integers."""
        g, convert = group_from_factors([n])
        return cls(d, g, tuple(convert([v % n]) for v in values))

    def __call__(self, x: int) -> GroupElement:
        return self.values[x % self.d]

    def __len__(self) -> int:
        return self.d

    def as_array(self) -> np.ndarray:
        """Values as a (d, rank) integer array."""
        return np.array(self.values, dtype=np.int64).reshape(self.d, self.codomain.rank)

    def __add__(self, other: "GroupFunction") -> "GroupFunction":
        if other.d != self.d or other.codomain != self.codomain:
            raise ShapeError("pointwise sum needs equal domain and codomain")
        g = self.codomain
        return GroupFunction(self.d, g, tuple(g.add(u, v) for u, v in zip(self.values, other.values)))


@dataclass(frozen=True)
class D1uVerdict:
    is_d1u: bool
    witness: tuple[int, int, int] | None = None

    def __post_init__(self):
        if self.is_d1u == (self.witness is not None):
            raise ValueError("a witness is present exactly when the verdict is negative")

    def __bool__(self) -> bool:
        return self.is_d1u


def _check_shift(f: GroupFunction, a: int) -> int:
    if not 0 <= a < f.d:
        raise DomainError(f"shift {a} outside [0, {f.d})")
    return a


def differential(f: GroupFunction, a: int) -> list[GroupElement]:
    """D_a f: entry x is f((x + a) mod d) - f(x)."""
    a = _check_shift(f, a)
    g, v, d = f.codomain, f.values, f.d
    return [g.sub(v[(x + a) % d], v[x]) for x in range(d)]


def _as_function(f: GroupFunction, values: Sequence[GroupElement]) -> GroupFunction:
    return GroupFunction(f.d, f.codomain, tuple(values))


def second_differential(f: GroupFunction, a1: int, a2: int) -> list[GroupElement]:
    """D_{a1} D_{a2} f."""
    _check_shift(f, a1)
    return differential(_as_function(f, differential(f, a2)), a1)


def _codes(f: GroupFunction) -> tuple[np.ndarray, np.ndarray]:
    arr = f.as_array()
    mod = np.array(f.codomain.factors, dtype=np.int64)
    return arr, mod


def _first_repeat(seq: np.ndarray) -> tuple[int, int] | None:
    """Lexicographically first (x, x') with x < x' and seq[x] == seq[x']."""
    first: dict[int, int] = {}
    repeated: set[int] = set()
    best = None
    for x, c in enumerate(seq.tolist()):
        if c not in first:
            first[c] = x
        elif c not in repeated:
            repeated.add(c)
            if best is None or (first[c], x) < best:
                best = (first[c], x)
    return best


def is_d1u(f: GroupFunction) -> D1uVerdict:
    """Decide differential 1-uniformity using half of the shifts."""
    d = f.d
    if d < 2:
        raise DomainError(f"d1u test needs d >= 2, got {d}")
    arr, mod = _codes(f)
    radix = np.cumprod(np.concatenate(([1], mod[::-1])))[-2::-1].astype(np.int64)
    idx = np.arange(d)
    # shifts a and d - a are paired by D_a f(x) = -D_{-a} f(a + x)
    for a in range(1, d // 2 + 1):
        codes = ((arr[(idx + a) % d] - arr) % mod) @ radix
        if len(np.unique(codes)) < d:
            x, x2 = _first_repeat(codes)
            return D1uVerdict(False, (a, x, x2))
    return D1uVerdict(True)


def is_d1u_bruteforce(f: GroupFunction) -> D1uVerdict:
    """Decide differential 1-uniformity by counting solutions of f(x+a) - f(x) = b."""
    d = f.d
    if d < 2:
        raise DomainError(f"d1u test needs d >= 2, got {d}")
    g = f.codomain
    for a in range(1, d):
        best = None
        diffs = [g.sub(f((x + a) % d), f(x)) for x in range(d)]
        for b in g.elements():
            sols = [x for x in range(d) if diffs[x] == b]
            if len(sols) > 1 and (best is None or (sols[0], sols[1]) < best):
                best = (sols[0], sols[1])
        if best is not None:
            return D1uVerdict(False, (a, *best))
    return D1uVerdict(True)


def iterate_identity_check(f: GroupFunction, a: int, r: int) -> bool:
    """Check D_{ra} f(x) == sum_{i<r} D_a f(i a + x) for every x."""
    if a % f.d == 0:
        raise DomainError("iteration identity needs a nonzero shift")
    if r < 0:
        raise DomainError("iteration count must be >= 0")
    d, g = f.d, f.codomain
    a %= d
    da = differential(f, a)
    lhs = differential(f, r * a % d)
    for x in range(d):
        acc = g.zero()
        for i in range(r):
            acc = g.add(acc, da[(i * a + x) % d])
        if acc != lhs[x]:
            return False
    return True


def is_homomorphism(f: GroupFunction) -> bool:
    """True when f(x + y) = f(x) + f(y); for cyclic domains, f(x) = x f(1)."""
    g = f.codomain
    if f(0) != g.zero() or g.scale(f.d, f(1)) != g.zero():
        return False
    return all(f(x) == g.scale(x, f(1)) for x in range(f.d))
