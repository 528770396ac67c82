"""Factorisability tests.

Division structure and the Moebius transform are frozen from hand
evaluations (V4 and cyclic groups small enough to enumerate divisors by
eye).  The factorisability decision is exercised both ways: every function
built from character data must pass, and the order function on the Klein
four-group must fail with quotient value exactly 2.
"""

import random
from fractions import Fraction

import pytest

from factoreq.errors import ValidationError
from factoreq.factorisable import (
    Division,
    SubgroupFunction,
    abelian_characters,
    character_kernel,
    division_transform,
    divisions,
    factorisable_quotient,
    function_from_character_data,
    is_factorisable_abelian,
)
from factoreq.groups import (
    cyclic_group,
    dihedral_group,
    direct_product,
    elementary_abelian_group,
)


def test_divisions_of_v4():
    g = elementary_abelian_group(2, 2)
    divs = divisions(g)
    assert [sorted(d.members) for d in divs] == [[0], [1], [2], [3]]
    assert [d.order for d in divs] == [1, 2, 2, 2]


def test_divisions_of_cyclic_groups():
    c4 = cyclic_group(4)
    assert [sorted(d.members) for d in divisions(c4)] == [[0], [2], [1, 3]]
    assert len(divisions(cyclic_group(1))) == 1
    c12 = cyclic_group(12)
    # one division per divisor, of size phi(d)
    assert sorted(len(d.members) for d in divisions(c12)) == [1, 1, 2, 2, 2, 4]


def test_divisions_partition():
    for g in (cyclic_group(8), elementary_abelian_group(2, 3),
              direct_product(cyclic_group(2), cyclic_group(4))):
        divs = divisions(g)
        seen = sorted(x for d in divs for x in d.members)
        assert seen == list(range(g.order))
        for d in divs:
            assert all(g.subgroup_generated_by([x]) == d.generated_subgroup
                       for x in d.members)


def test_divisions_need_abelian():
    with pytest.raises(ValidationError):
        divisions(dihedral_group(6))


def test_subgroup_function_totality_and_positivity():
    g = elementary_abelian_group(2, 2)
    with pytest.raises(ValidationError):
        SubgroupFunction(g, {frozenset([0]): 1})
    with pytest.raises(ValidationError):
        SubgroupFunction.from_callable(g, lambda s: -1)
    f = SubgroupFunction.from_callable(g, len)
    assert f.value([0, 1]) == 2
    with pytest.raises(ValidationError):
        f.value([1, 2])  # not a subgroup


def test_division_transform_constant_one():
    g = cyclic_group(12)
    f = SubgroupFunction.from_callable(g, lambda s: 1)
    assert all(division_transform(f, d) == 1 for d in divisions(g))


def test_division_transform_order_function():
    v4 = elementary_abelian_group(2, 2)
    f = SubgroupFunction.from_callable(v4, len)
    involution = next(d for d in divisions(v4) if d.order == 2)
    assert division_transform(f, involution) == 2
    c4 = cyclic_group(4)
    f4 = SubgroupFunction.from_callable(c4, len)
    top = next(d for d in divisions(c4) if d.order == 4)
    # divisors 1, 2, 4: 4^mu(1) * 2^mu(2) * 1^mu(4) = 4/2
    assert division_transform(f4, top) == 2


def test_quotient_of_constant_function():
    g = direct_product(cyclic_group(2), cyclic_group(4))
    f = SubgroupFunction.from_callable(g, lambda s: Fraction(5, 3))
    ft = factorisable_quotient(f)
    assert all(v == 1 for v in ft.values.values())


def test_quotient_of_order_function_on_v4():
    v4 = elementary_abelian_group(2, 2)
    ft = factorisable_quotient(SubgroupFunction.from_callable(v4, len))
    for sub, value in ft.values.items():
        assert value == (2 if len(sub) == 4 else 1)


def test_quotient_vanishes_on_cyclic_subgroups():
    rng = random.Random(7)
    for g in (elementary_abelian_group(2, 2), cyclic_group(8),
              direct_product(cyclic_group(2), cyclic_group(4)),
              elementary_abelian_group(3, 2)):
        f = SubgroupFunction.from_callable(
            g, lambda s: Fraction(rng.randint(1, 30), rng.randint(1, 30)))
        ft = factorisable_quotient(f)
        for sub, value in ft.values.items():
            if any(g.subgroup_generated_by([x]) == sub for x in sub):
                assert value == 1


def test_quotient_multiplicativity():
    g = elementary_abelian_group(2, 2)
    rng = random.Random(3)
    f1 = SubgroupFunction.from_callable(g, lambda s: rng.randint(1, 9))
    f2 = SubgroupFunction.from_callable(g, lambda s: rng.randint(1, 9))
    lhs = factorisable_quotient(f1.times(f2))
    q1, q2 = factorisable_quotient(f1), factorisable_quotient(f2)
    for sub in g.all_subgroups():
        assert lhs.values[sub] == q1.values[sub] * q2.values[sub]


def test_abelian_characters_v4():
    g = elementary_abelian_group(2, 2)
    chars = abelian_characters(g)
    assert chars == ((0, 0, 0, 0), (0, 0, 1, 1), (0, 1, 0, 1), (0, 1, 1, 0))
    assert character_kernel(g, chars[1]) == frozenset([0, 1])


def test_abelian_characters_are_homomorphisms():
    g = direct_product(cyclic_group(2), cyclic_group(4))
    m = g.exponent()
    chars = abelian_characters(g)
    assert len(chars) == g.order == len(set(chars))
    for chi in chars:
        for x in range(g.order):
            for y in range(g.order):
                assert chi[g.mul[x][y]] == (chi[x] + chi[y]) % m


def test_function_from_character_data_examples():
    g = elementary_abelian_group(2, 2)
    f = function_from_character_data(g, [1, 1, 1, 1])
    assert all(v == 1 for v in f.values.values())
    f5 = function_from_character_data(g, [5, 1, 1, 1])
    assert all(v == 5 for v in f5.values.values())
    f2 = function_from_character_data(g, [1, 2, 1, 1])
    ker = character_kernel(g, abelian_characters(g)[1])
    for sub, value in f2.values.items():
        assert value == (2 if sub <= ker else 1)


def test_function_from_character_data_validation():
    g = elementary_abelian_group(2, 2)
    with pytest.raises(ValidationError):
        function_from_character_data(g, [1, 2, 3])
    with pytest.raises(ValidationError):
        function_from_character_data(g, [1, -2, 3, 1])


def test_is_factorisable_verdicts():
    v4 = elementary_abelian_group(2, 2)
    assert not is_factorisable_abelian(SubgroupFunction.from_callable(v4, len))
    assert is_factorisable_abelian(
        SubgroupFunction.from_callable(v4, lambda s: Fraction(7, 3)))
    e8 = elementary_abelian_group(2, 3)
    assert not is_factorisable_abelian(SubgroupFunction.from_callable(e8, len))


def test_character_data_round_trip_randomized():
    rng = random.Random(20260825)
    groups = [elementary_abelian_group(2, 2), cyclic_group(8),
              direct_product(cyclic_group(2), cyclic_group(4)),
              elementary_abelian_group(2, 3), cyclic_group(12),
              elementary_abelian_group(3, 2)]
    for g in groups:
        for _ in range(4):
            vals = [Fraction(rng.randint(1, 12), rng.randint(1, 12))
                    for _ in range(g.order)]
            f = function_from_character_data(g, vals)
            assert is_factorisable_abelian(f)


def test_division_and_function_reprs_are_usable():
    g = cyclic_group(4)
    d = divisions(g)[0]
    assert isinstance(d, Division) and d.order == 1
    f = SubgroupFunction.from_callable(g, len)
    assert f.group is g
