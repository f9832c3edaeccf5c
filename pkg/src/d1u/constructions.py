"""Systematic d1u functions out of Z/dZ and the bound planner.

Two seed families supply a d1u function phi on Z/qZ:

* ``square_map(q)``: x -> x^2 on Z/q for an odd prime q (codomain order q);
* ``exp_construction(q)``: x -> g^x in the additive group of GF(q + 1),
  for q + 1 a prime power (codomain order q + 1).

Restricting phi to Z/dZ (q >= d - 1) and pairing it with either the residue
``i mod p`` (p the least prime not dividing d) or a two-valued flag for even d
gives a d1u function on Z/dZ into Z/p x G or Z/3 x G.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from .arith import is_prime, prime_power
from .diffcalc import GroupFunction, is_d1u
from .errors import DomainError, InvalidInputError
from .fields import make_field
from .groups import AbelianGroup, direct_product

THETA = 0.525  # prime-gap exponent quoted for the asymptotic bound

SQUARE = "odd-prime-square"
EXPONENTIAL = "prime-power-exponential"
USER = "user-supplied"
FAMILY_ORDER = (SQUARE, EXPONENTIAL)


def square_map(q: int) -> GroupFunction:
    """x -> x^2 mod q on Z/qZ, q an odd prime."""
    if q < 3 or not is_prime(q):
        raise DomainError(f"square map needs an odd prime, got {q}")
    return GroupFunction.cyclic(q, q, [x * x for x in range(q)])


def exp_construction(q: int) -> GroupFunction:
    """x -> g^x from Z/qZ into (Z/p)^k, where q + 1 = p^k and g is primitive."""
    pk = prime_power(q + 1)
    if pk is None:
        raise DomainError(f"{q} + 1 is not a prime power")
    F = make_field(*pk)
    return GroupFunction(q, F.additive_group, tuple(F.exp(x) for x in range(q)))


def restrict(phi: GroupFunction, d: int) -> GroupFunction:
    """phi_d(x) = phi(x) for 0 <= x < d, with phi_d(d - 1) = phi(0) when q = d - 1."""
    q = phi.d
    if d < 1 or q < d - 1:
        raise DomainError(f"cannot restrict a function on Z/{q} to Z/{d}; need q >= d - 1")
    return GroupFunction(d, phi.codomain, tuple(phi(x % q) for x in range(d)))


def least_coprime_prime(d: int) -> int:
    if d < 1:
        raise DomainError(f"d must be positive, got {d}")
    p = 2
    while d % p == 0 or not is_prime(p):
        p += 1
    return p


def _require_seed(d: int, phi: GroupFunction) -> None:
    if phi.d < d - 1:
        raise DomainError(f"seed domain Z/{phi.d} is too small for d = {d}")
    if phi.d < 2 or not is_d1u(phi):
        raise InvalidInputError("seed function is not d1u")


def dlogd_construction(d: int, phi: GroupFunction) -> GroupFunction:
    """f(i) = (i mod p, phi_d(i)) into Z/p x G."""
    if d < 2:
        raise DomainError(f"d must be >= 2, got {d}")
    _require_seed(d, phi)
    p = least_coprime_prime(d)
    zp = AbelianGroup([p])
    group, embed = direct_product(zp, phi.codomain)
    phi_d = restrict(phi, d)
    return GroupFunction(d, group, tuple(embed((i % p,), phi_d(i)) for i in range(d)))


def flag(d: int, x: int) -> int:
    """0 on the lower half [0, d/2) of Z/dZ and 1 on the upper half."""
    if d < 2 or d % 2:
        raise DomainError(f"flag needs an even d, got {d}")
    return 0 if x % d < d // 2 else 1


def evens_construction(d: int, phi: GroupFunction) -> GroupFunction:
    """f(i) = (flag(i), phi_d(i)) into Z/3 x G, d even."""
    if d < 2 or d % 2:
        raise DomainError(f"even construction needs an even d, got {d}")
    _require_seed(d, phi)
    z3 = AbelianGroup([3])
    group, embed = direct_product(z3, phi.codomain)
    phi_d = restrict(phi, d)
    return GroupFunction(d, group, tuple(embed((flag(d, i),), phi_d(i)) for i in range(d)))


def _family_ok(family: str, q: int) -> bool:
    if family == SQUARE:
        return q >= 3 and is_prime(q)
    return q >= 2 and prime_power(q + 1) is not None


def _family_order(family: str, q: int) -> int:
    return q if family == SQUARE else q + 1


def best_seed(lo: int, hi: int) -> tuple[int, str, int]:
    """Seed ``(q, family, codomain order)`` in ``[lo, hi]`` of least codomain order.

    Ties go to the square family, then to the smaller q.
    """
    lo = max(lo, 2)
    best = None
    q = lo
    while q <= hi and (best is None or q <= best[0]):
        for rank, family in enumerate(FAMILY_ORDER):
            if _family_ok(family, q):
                key = (_family_order(family, q), rank, q)
                if best is None or key < best:
                    best = key
        q += 1
    if best is None:
        raise DomainError(f"no seed function with domain size in [{lo}, {hi}]")
    order, rank, q = best
    return q, FAMILY_ORDER[rank], order


@dataclass(frozen=True)
class ConstructionPlan:
    d: int
    branch: str  # "prime" (x^2 directly), "odd" or "even"
    q: int
    base_family: str
    base_order: int
    codomain: AbelianGroup
    bound: int
    p: int | None = None
    comparison_bounds: dict = field(default_factory=dict, compare=False)

    @property
    def bases_count(self) -> int:
        return self.bound + 1

    def to_json(self) -> dict:
        out = asdict(self)
        out["codomain"] = self.codomain.to_json()
        out["bases_count"] = self.bases_count
        return out


def comparison_bounds(d: int, dlogd_only: int | None = None) -> dict:
    factor = 2 if d % 2 else 3
    out = {
        "corollary7": factor * (d + d**THETA),
        "chebyshev": 4 * d,
        "prior": math.ceil(3 * (d - 1) ** 2 / 4),
    }
    if dlogd_only is not None:
        out["dlogd_only"] = dlogd_only
    return out


def plan(d: int, base: GroupFunction | None = None) -> ConstructionPlan:
    """Choose the construction with the smallest codomain for dimension d.

    With ``base`` given, that function is used as the seed instead of scanning
    the built-in families over q in [d - 1, 2d].
    """
    if d < 2:
        raise DomainError(f"d must be >= 2, got {d}")
    p = least_coprime_prime(d)
    if base is not None:
        if base.d < d - 1:
            raise DomainError(f"seed domain Z/{base.d} is too small for d = {d}")
        q, family, c_base = base.d, USER, base.codomain.order
        seed_group = base.codomain
    else:
        q, family, c_base = best_seed(d - 1, 2 * d)
        seed_group = _seed_codomain(family, q)
    dlogd_only = p * c_base

    if base is None and d % 2 and is_prime(d):
        g = AbelianGroup([d])
        return ConstructionPlan(d, "prime", d, SQUARE, d, g, d, None, comparison_bounds(d, dlogd_only))
    if d % 2:
        group, _ = direct_product(AbelianGroup([p]), seed_group)
        return ConstructionPlan(d, "odd", q, family, c_base, group, p * c_base, p, comparison_bounds(d, dlogd_only))
    group, _ = direct_product(AbelianGroup([3]), seed_group)
    return ConstructionPlan(d, "even", q, family, c_base, group, 3 * c_base, None, comparison_bounds(d, dlogd_only))


def _seed_codomain(family: str, q: int) -> AbelianGroup:
    if family == SQUARE:
        return AbelianGroup([q])
    p, k = prime_power(q + 1)
    return AbelianGroup([p] * k)


def seed_function(family: str, q: int) -> GroupFunction:
    if family == SQUARE:
        return square_map(q)
    if family == EXPONENTIAL:
        return exp_construction(q)
    raise DomainError(f"unknown seed family {family!r}")


def build(d: int, base: GroupFunction | None = None) -> GroupFunction:
    """Construct the d1u function described by ``plan(d, base)``."""
    pl = plan(d, base)
    if pl.branch == "prime":
        f = square_map(d)
    else:
        phi = base if base is not None else seed_function(pl.base_family, pl.q)
        f = dlogd_construction(d, phi) if pl.branch == "odd" else evens_construction(d, phi)
    if f.codomain != pl.codomain:
        raise AssertionError(f"built codomain {f.codomain} differs from plan {pl.codomain}")
    if not is_d1u(f):
        raise AssertionError(f"construction for d = {d} is not d1u")
    return f
