import math

import pytest

from d1u.arith import is_prime, next_prime
from d1u.constructions import (
    EXPONENTIAL,
    SQUARE,
    build,
    dlogd_construction,
    evens_construction,
    exp_construction,
    flag,
    least_coprime_prime,
    plan,
    restrict,
    square_map,
)
from d1u.diffcalc import GroupFunction, is_d1u, is_d1u_bruteforce
from d1u.errors import DomainError, InvalidInputError
from d1u.groups import AbelianGroup


def test_square_map():
    f = square_map(5)
    assert [v[0] for v in f.values] == [0, 1, 4, 4, 1]
    assert is_d1u_bruteforce(f)
    assert [v[0] for v in square_map(3).values] == [0, 1, 1]
    assert is_d1u_bruteforce(square_map(3))
    for bad in (9, 2, 15, 1):
        with pytest.raises(DomainError):
            square_map(bad)


def test_exp_construction():
    f = exp_construction(6)
    assert [v[0] for v in f.values] == [1, 3, 2, 6, 4, 5]
    assert f.codomain == AbelianGroup([7])
    assert is_d1u_bruteforce(f)
    f8 = exp_construction(8)
    assert f8.codomain == AbelianGroup([3, 3])
    assert is_d1u_bruteforce(f8)
    assert [v[0] for v in exp_construction(4).values] == [1, 2, 4, 3]
    with pytest.raises(DomainError):
        exp_construction(5)


def test_restrict():
    phi = exp_construction(6)
    assert restrict(phi, 5).values == phi.values[:5]
    assert restrict(phi, 6) == phi
    phi8 = exp_construction(8)
    r = restrict(phi8, 9)
    assert r.values == phi8.values + (phi8.values[0],)
    with pytest.raises(DomainError):
        restrict(phi, 8)


def test_least_coprime_prime():
    for d in range(3, 200, 2):
        assert least_coprime_prime(d) == 2
    assert least_coprime_prime(14) == 3
    assert least_coprime_prime(30030) == 17
    for d in range(2, 500):
        p = least_coprime_prime(d)
        assert is_prime(p) and d % p
        assert all(d % r == 0 for r in range(2, p) if is_prime(r))


def test_dlogd_construction_examples():
    f = dlogd_construction(21, square_map(23))
    assert f.codomain == AbelianGroup([2, 23]) and f.codomain.order == 46
    assert is_d1u_bruteforce(f)
    f = dlogd_construction(9, exp_construction(8))
    assert f.codomain.order == 18 and is_d1u_bruteforce(f)
    f = dlogd_construction(5, square_map(5))
    assert f.codomain == AbelianGroup([2, 5]) and is_d1u_bruteforce(f)
    # first coordinate is i mod p, second the restricted seed
    assert f.values[3] == (1, 4)


def test_dlogd_rejects_bad_seed():
    not_d1u = GroupFunction.cyclic(7, 7, list(range(7)))
    with pytest.raises(InvalidInputError):
        dlogd_construction(7, not_d1u)
    with pytest.raises(DomainError):
        dlogd_construction(10, square_map(5))


def test_flag():
    assert [flag(6, x) for x in range(6)] == [0, 0, 0, 1, 1, 1]
    assert flag(14, 6) == 0 and flag(14, 7) == 1
    assert [flag(2, x) for x in range(2)] == [0, 1]
    with pytest.raises(DomainError):
        flag(7, 1)


def test_evens_construction_examples():
    f = evens_construction(14, square_map(13))
    assert f.codomain == AbelianGroup([3, 13]) and is_d1u_bruteforce(f)
    f = evens_construction(20, square_map(19))
    assert f.codomain.order == 57 and is_d1u_bruteforce(f)
    f = evens_construction(6, square_map(5))
    assert f.codomain == AbelianGroup([3, 5]) and is_d1u_bruteforce(f)
    with pytest.raises(DomainError):
        evens_construction(7, square_map(7))


def test_product_constructions_every_seed():
    # every usable seed in the window, not just the planner's pick
    for d in range(2, 41):
        for q in range(max(d - 1, 2), 2 * d + 1):
            seeds = []
            if q >= 3 and is_prime(q):
                seeds.append(square_map(q))
            try:
                seeds.append(exp_construction(q))
            except DomainError:
                pass
            for phi in seeds:
                assert is_d1u(dlogd_construction(d, phi)), (d, q)
                if d % 2 == 0:
                    assert is_d1u(evens_construction(d, phi)), (d, q)


def test_plan_examples():
    p14 = plan(14)
    assert (p14.bound, p14.q, p14.base_family, p14.branch) == (39, 13, SQUARE, "even")
    assert p14.bases_count == 40
    p21 = plan(21)
    assert (p21.bound, p21.q, p21.base_family, p21.p) == (46, 23, SQUARE, 2)
    assert 2 * exp_construction(24).codomain.order == 50
    p30030 = plan(30030)
    assert p30030.bound == 3 * next_prime(30029) == 90087
    assert p30030.comparison_bounds["dlogd_only"] == 17 * 30029
    assert plan(10).bound == 33 and plan(10).q == 11
    assert plan(9).base_family == EXPONENTIAL and plan(9).bound == 18


def test_plan_comparison_bounds():
    cb = plan(21).comparison_bounds
    assert cb["corollary7"] == pytest.approx(2 * (21 + 21**0.525))
    assert cb["chebyshev"] == 84
    assert cb["prior"] == math.ceil(3 * 20**2 / 4)
    assert plan(14).comparison_bounds["corollary7"] == pytest.approx(3 * (14 + 14**0.525))


def test_plan_invariants():
    for d in range(2, 3000):
        pl = plan(d)
        assert pl.q >= d - 1
        if pl.branch == "odd":
            assert pl.bound == pl.p * pl.base_order
        elif pl.branch == "even":
            assert pl.bound == 3 * pl.base_order
        else:
            assert is_prime(d) and pl.bound == d
        assert pl.codomain.order == pl.bound


def test_plan_rejects_small_d():
    with pytest.raises(DomainError):
        plan(1)


def test_build_examples():
    f = build(14)
    assert f.codomain == AbelianGroup([3, 13]) and is_d1u(f)
    assert build(3) == square_map(3)
    f = build(10)
    assert f.codomain == AbelianGroup([3, 11]) and f.codomain.order == 33


def test_build_with_user_seed():
    seed = exp_construction(12)
    f = build(12, seed)
    assert f.codomain.order == 3 * 13
    assert plan(12, seed).base_family == "user-supplied"
    assert is_d1u_bruteforce(f)
