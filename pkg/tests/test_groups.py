import cmath
import itertools
import math

import pytest
from sympy.functions.combinatorial.numbers import partition

from d1u.arith import factorize
from d1u.errors import DomainError, ShapeError
from d1u.groups import (
    AbelianGroup,
    Character,
    character_value,
    direct_product,
    enumerate_abelian_groups,
    group_from_factors,
)

SMALL_GROUPS = [g for n in range(1, 65) for g in enumerate_abelian_groups(n)]


def test_add_examples():
    assert AbelianGroup([5]).add((3,), (4,)) == (2,)
    g = AbelianGroup([2, 3])
    assert g.add((1, 2), (1, 2)) == (0, 1)
    for u in g.elements():
        assert g.add(u, g.zero()) == u


def test_add_rejects_wrong_shape():
    g = AbelianGroup([2, 3])
    with pytest.raises(ShapeError):
        g.add((1,), (0, 1))
    with pytest.raises(ShapeError):
        g.add((2, 0), (0, 1))


def test_canonical_factors():
    assert AbelianGroup([6, 2]).factors == (2, 2, 3)
    assert AbelianGroup([3, 13]) == AbelianGroup([13, 3])
    assert AbelianGroup([]).order == 1
    assert AbelianGroup([1, 1]).factors == ()


def test_group_from_factors_uses_crt():
    g, conv = group_from_factors([15])
    assert g.factors == (3, 5)
    assert conv([7]) == (1, 2)
    g, conv = group_from_factors([3, 2])
    assert conv([1, 1]) == (1, 1)
    assert conv([2, 0]) == (0, 2)


def test_direct_product_keeps_components():
    h, embed = direct_product(AbelianGroup([3]), AbelianGroup([2]))
    assert h.factors == (2, 3)
    assert embed((2,), (1,)) == (1, 2)


@pytest.mark.parametrize("g", [g for g in SMALL_GROUPS if g.order <= 24])
def test_group_axioms_exhaustive(g):
    els = list(g.elements())
    zero = g.zero()
    for u in els:
        assert g.add(u, g.neg(u)) == zero
        for v in els:
            assert g.add(u, v) == g.add(v, u)
    # associativity on all triples is cubic; sample a fixed slice for the larger ones
    triples = itertools.product(els, repeat=3) if g.order <= 12 else itertools.product(els[:6], els, els[:6])
    for u, v, w in triples:
        assert g.add(g.add(u, v), w) == g.add(u, g.add(v, w))


def test_group_axioms_up_to_64():
    for g in SMALL_GROUPS:
        els = list(g.elements())
        zero = g.zero()
        for u in els:
            assert g.add(u, g.neg(u)) == zero
            assert g.add(u, zero) == u
        for u, v in zip(els, reversed(els)):
            assert g.add(u, v) == g.add(v, u)


def test_index_roundtrip():
    g = AbelianGroup([2, 4, 3])
    assert [g.index(u) for u in g.elements()] == list(range(g.order))
    assert all(g.element(g.index(u)) == u for u in g.elements())


def test_enumerate_examples():
    assert [g.factors for g in enumerate_abelian_groups(8)] == [(8,), (2, 4), (2, 2, 2)]
    assert [g.factors for g in enumerate_abelian_groups(15)] == [(3, 5)]
    assert len(enumerate_abelian_groups(20)) == 2
    assert enumerate_abelian_groups(1) == [AbelianGroup()]
    with pytest.raises(DomainError):
        enumerate_abelian_groups(0)


def test_enumeration_count_matches_partition_oracle():
    for n in range(1, 201):
        expected = math.prod(int(partition(e)) for e in factorize(n).values()) if n > 1 else 1
        groups = enumerate_abelian_groups(n)
        assert len(groups) == expected
        assert len(set(groups)) == expected
        assert all(g.order == n for g in groups)


def test_character_examples():
    assert character_value(AbelianGroup([3]), (1,), (1,)) == pytest.approx(cmath.exp(2j * math.pi / 3), abs=1e-15)
    g = AbelianGroup([2, 2])
    assert character_value(g, (1, 1), (1, 0)) == pytest.approx(-1, abs=1e-15)
    for e in g.elements():
        assert character_value(g, g.zero(), e) == 1


def test_character_modulus_and_multiplicativity():
    for g in [AbelianGroup([4, 3]), AbelianGroup([2, 2, 5]), AbelianGroup([9])]:
        els = list(g.elements())
        for s in els:
            chi = Character(g, s)
            for u in els:
                assert abs(abs(chi(u)) - 1) < 1e-12
                for v in els[:7]:
                    assert abs(chi(g.add(u, v)) - chi(u) * chi(v)) < 1e-12


def test_character_orthogonality_up_to_64():
    for g in SMALL_GROUPS:
        els = list(g.elements())
        for s in els:
            total = sum(character_value(g, s, e) for e in els)
            if s == g.zero():
                assert abs(total - g.order) < 1e-9
            else:
                assert abs(total) < 1e-9
