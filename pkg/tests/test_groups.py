"""Group core: construction, subgroup lattice, quotients, subquotients.

Subgroup enumeration is checked against two independent oracles: full
power-set closure (|G| <= 16) and closures of all generating sets of size
<= log2|G| (|G| <= 32, since any subgroup of order n is generated by at most
log2(n) elements).
"""

import math
from itertools import combinations

import pytest

from factoreq.errors import ResourceError, ValidationError
from factoreq.groups import (
    Dihedral2N,
    ElemAbelianP2,
    HeisenbergP3,
    cyclic_group,
    dihedral_group,
    direct_product,
    elementary_abelian_group,
    group_from_generators,
    heisenberg_group,
    make_subquotient,
    quaternion_group,
    quotient_group,
    semidirect_product,
    standard_group,
    subgroup_as_group,
    subquotients_of_type,
)


def oracle_subgroups_powerset(g):
    """Every subset containing 0 that is multiplicatively closed."""
    assert g.order <= 16
    rest = range(1, g.order)
    out = set()
    for r in range(g.order):
        for combo in combinations(rest, r):
            s = frozenset((0,) + combo)
            if g.is_subgroup(s):
                out.add(s)
    return out


def oracle_subgroups_bounded_gens(g):
    """Closures of all <= log2|G| element subsets (complete for |G| <= 2^k)."""
    maxgens = max(1, int(math.log2(g.order)))
    out = {frozenset([0])}
    for r in range(1, maxgens + 1):
        for combo in combinations(range(1, g.order), r):
            out.add(g.subgroup_generated_by(combo))
    return out


def order_multiset(g):
    counts = {}
    for o in g.element_orders:
        counts[o] = counts.get(o, 0) + 1
    return counts


# -- construction ------------------------------------------------------------

def test_cyclic_groups():
    c1 = cyclic_group(1)
    assert c1.order == 1 and c1.element_orders == (1,)
    c6 = cyclic_group(6)
    assert c6.order == 6
    assert order_multiset(c6) == {1: 1, 2: 1, 3: 2, 6: 2}
    assert c6.is_abelian()


def test_elementary_abelian():
    v4 = elementary_abelian_group(2, 2)
    assert v4.order == 4 and order_multiset(v4) == {1: 1, 2: 3}
    e9 = elementary_abelian_group(3, 2)
    assert e9.order == 9 and order_multiset(e9) == {1: 1, 3: 8}
    with pytest.raises(ValidationError):
        elementary_abelian_group(4, 1)
    with pytest.raises(ValidationError):
        elementary_abelian_group(3, 0)


def test_dihedral_groups():
    assert dihedral_group(2).order == 2
    d4 = dihedral_group(4)
    assert order_multiset(d4) == {1: 1, 2: 3}
    d8 = dihedral_group(8)
    assert not d8.is_abelian()
    assert order_multiset(d8) == {1: 1, 2: 5, 4: 2}
    d16 = dihedral_group(16)
    assert order_multiset(d16) == {1: 1, 2: 9, 4: 2, 8: 4}
    with pytest.raises(ValidationError):
        dihedral_group(7)


def test_quaternion_group():
    q8 = quaternion_group()
    assert q8.order == 8
    assert order_multiset(q8) == {1: 1, 2: 1, 4: 6}
    assert not q8.is_abelian()
    assert len(q8.center()) == 2


def test_heisenberg_group():
    h = heisenberg_group(3)
    assert h.order == 27
    assert order_multiset(h) == {1: 1, 3: 26}
    assert not h.is_abelian()
    assert len(h.center()) == 3
    with pytest.raises(ValidationError):
        heisenberg_group(2)
    with pytest.raises(ValidationError):
        heisenberg_group(6)


def test_group_from_generators():
    s3 = group_from_generators([(1, 2, 0), (1, 0, 2)])
    assert s3.order == 6 and not s3.is_abelian()
    with pytest.raises(ValidationError):
        group_from_generators([])
    with pytest.raises(ValidationError):
        group_from_generators([(0, 0, 1)])
    with pytest.raises(ResourceError):
        group_from_generators([tuple((i + 1) % 12 for i in range(12))],
                              element_budget=10)
    # Closure finishes but the group is over the desk-scale cap.
    with pytest.raises(ValidationError):
        group_from_generators([tuple((i + 1) % 256 for i in range(256))])


def test_products():
    c6 = direct_product(cyclic_group(2), cyclic_group(3))
    assert c6.order == 6 and c6.is_abelian()
    assert 6 in c6.element_orders
    invert = (0, 2, 1)
    s3 = semidirect_product(cyclic_group(3), cyclic_group(2),
                            [(0, 1, 2), invert])
    assert s3.order == 6 and not s3.is_abelian()
    with pytest.raises(ValidationError):
        semidirect_product(cyclic_group(3), cyclic_group(2),
                           [(0, 1, 2), (1, 0, 2)])  # not an automorphism
    with pytest.raises(ValidationError):
        semidirect_product(cyclic_group(3), cyclic_group(2), [(0, 1, 2)])


def test_standard_group_dispatch():
    assert standard_group("cyclic", 5).order == 5
    assert standard_group("quaternion8").order == 8
    with pytest.raises(ValidationError):
        standard_group("sporadic")


def test_construction_is_deterministic():
    a, b = dihedral_group(16), dihedral_group(16)
    assert a.mul == b.mul and a.generators == b.generators
    assert [c.label for c in a.subgroup_classes()] == \
           [c.label for c in b.subgroup_classes()]


def test_table_sanity():
    g = dihedral_group(8)
    for x in range(g.order):
        assert g.mul[x][g.inverse[x]] == 0
        assert g.mul[g.inverse[x]][x] == 0
    with pytest.raises(ValidationError):
        # associative latin square with wrong identity position
        bad = ((1, 0), (0, 0))
        from factoreq.groups import Group
        Group(bad, (1,))


# -- subgroup lattice --------------------------------------------------------

SUBGROUP_COUNTS = {
    # name -> (total subgroups, number of conjugacy classes)
    "C6": (4, 4),
    "V4": (5, 5),
    "E9": (6, 6),
    "S3": (6, 4),
    "D8": (10, 8),
    "Q8": (6, 6),
    "E8": (16, 16),
    "D16": (19, 11),
    "Heis3": (19, 11),
}


def build(name):
    return {
        "C6": lambda: cyclic_group(6),
        "V4": lambda: elementary_abelian_group(2, 2),
        "E9": lambda: elementary_abelian_group(3, 2),
        "S3": lambda: dihedral_group(6),
        "D8": lambda: dihedral_group(8),
        "Q8": lambda: quaternion_group,
        "E8": lambda: elementary_abelian_group(2, 3),
        "D16": lambda: dihedral_group(16),
        "Heis3": lambda: heisenberg_group(3),
    }[name]() if name != "Q8" else quaternion_group()


@pytest.mark.parametrize("name", sorted(SUBGROUP_COUNTS))
def test_subgroup_enumeration_against_oracles(name):
    g = build(name)
    total, nclasses = SUBGROUP_COUNTS[name]
    subs = set(g.all_subgroups())
    assert len(subs) == total
    assert subs == oracle_subgroups_bounded_gens(g)
    if g.order <= 16:
        assert subs == oracle_subgroups_powerset(g)
    classes = g.subgroup_classes()
    assert len(classes) == nclasses
    assert sum(c.class_size for c in classes) == total


def test_class_metadata():
    d8 = dihedral_group(8)
    classes = d8.subgroup_classes()
    assert classes[0].label == "o1#0" and classes[0].order == 1
    assert classes[-1].representative == frozenset(range(8))
    # orders are non-decreasing and labels count within each order
    orders = [c.order for c in classes]
    assert orders == sorted(orders)
    assert [c.label for c in classes].count("o2#0") == 1
    # representative is the least member, and lookup round-trips
    for c in classes:
        assert c.representative == min(c.members, key=lambda s: tuple(sorted(s)))
        for m in c.members:
            assert d8.class_of_subgroup(m) == c.index
    # cyclicity flags
    assert all(c.is_cyclic for c in classes if c.order <= 2)
    assert not classes[-1].is_cyclic
    with pytest.raises(ValidationError):
        d8.class_by_label("o3#0")


def test_normality_flags():
    s3 = dihedral_group(6)
    flags = {c.label: c.is_normal for c in s3.subgroup_classes()}
    assert flags == {"o1#0": True, "o2#0": False, "o3#0": True, "o6#0": True}


def test_element_classes():
    s3 = dihedral_group(6)
    sizes = sorted(len(c) for c in s3.element_classes())
    assert sizes == [1, 2, 3]
    q8 = quaternion_group()
    assert len(q8.element_classes()) == 5
    assert q8.element_classes()[0] == (0,)


# -- quotients and subgroups as groups ---------------------------------------

def test_quotient_by_trivial_is_identity_relabeling():
    g = dihedral_group(8)
    q, proj = quotient_group(g, [0])
    assert q.mul == g.mul
    assert proj == tuple(range(8))


def test_quotient_heisenberg_by_center():
    h = heisenberg_group(3)
    q, proj = quotient_group(h, h.center())
    assert q.order == 9 and q.is_abelian()
    assert all(o in (1, 3) for o in q.element_orders)
    for x in range(h.order):
        for y in range(h.order):
            assert proj[h.mul[x][y]] == q.mul[proj[x]][proj[y]]


def test_quotient_rejects_non_normal():
    s3 = dihedral_group(6)
    refl = next(c for c in s3.subgroup_classes() if c.order == 2)
    with pytest.raises(ValidationError):
        quotient_group(s3, refl.representative)


def test_subgroup_as_group():
    d8 = dihedral_group(8)
    v4 = next(c for c in d8.subgroup_classes()
              if c.order == 4 and not c.is_cyclic)
    sub, emb = subgroup_as_group(d8, v4.representative)
    assert sub.order == 4 and set(emb) == set(v4.representative)
    for x in range(4):
        for y in range(4):
            assert emb[sub.mul[x][y]] == d8.mul[emb[x]][emb[y]]
    trivial, emb0 = subgroup_as_group(d8, [0])
    assert trivial.order == 1 and emb0 == (0,)


# -- subquotients ------------------------------------------------------------

def test_subquotients_elementary_abelian():
    e9 = elementary_abelian_group(3, 2)
    found = subquotients_of_type(e9, ElemAbelianP2(3))
    assert len(found) == 1
    sq = found[0]
    assert sq.top == frozenset(range(9)) and sq.bottom == frozenset([0])
    assert sq.quotient.order == 9


def test_subquotients_heisenberg():
    h = heisenberg_group(3)
    found = subquotients_of_type(h, HeisenbergP3(3))
    assert len(found) == 1
    assert found[0].top == frozenset(range(27))
    assert found[0].bottom == frozenset([0])
    # (Z/3)^2 subquotients: four order-9 subgroups over 1, plus G over center.
    elem = subquotients_of_type(h, ElemAbelianP2(3))
    shapes = sorted((len(sq.top), len(sq.bottom)) for sq in elem)
    assert shapes == [(9, 1)] * 4 + [(27, 3)]


def test_subquotients_two_groups_of_order_eight():
    d8 = dihedral_group(8)
    shapes = sorted((len(sq.top), len(sq.bottom))
                    for sq in subquotients_of_type(d8, ElemAbelianP2(2)))
    assert shapes == [(4, 1), (4, 1), (8, 2)]
    q8 = quaternion_group()
    found = subquotients_of_type(q8, ElemAbelianP2(2))
    assert len(found) == 1 and len(found[0].bottom) == 2


def test_subquotients_dihedral16():
    d16 = dihedral_group(16)
    found = subquotients_of_type(d16, Dihedral2N(4))
    assert len(found) == 1
    assert found[0].top == frozenset(range(16))
    assert found[0].bottom == frozenset([0])
    assert subquotients_of_type(cyclic_group(8), Dihedral2N(4)) == ()
    with pytest.raises(ValidationError):
        Dihedral2N(2)


def test_subquotients_dihedral8():
    # the order-8 member of the family: two subgroup copies in D16 plus
    # the quotient by the center, and D8 itself as (G, 1)
    d16 = dihedral_group(16)
    shapes = sorted((len(sq.top), len(sq.bottom))
                    for sq in subquotients_of_type(d16, Dihedral2N(3)))
    assert shapes == [(8, 1), (8, 1), (16, 2)]
    d8 = dihedral_group(8)
    found = subquotients_of_type(d8, Dihedral2N(3))
    assert len(found) == 1
    assert found[0].top == frozenset(range(8))
    assert found[0].bottom == frozenset([0])
    # the quaternion group has a single, central involution: no match
    assert subquotients_of_type(quaternion_group(), Dihedral2N(3)) == ()


def test_subquotient_intermediates():
    q8 = quaternion_group()
    sq = subquotients_of_type(q8, ElemAbelianP2(2))[0]
    inter = sq.intermediate_classes()
    labels = {q8.subgroup_classes()[v].label for v in inter.values()}
    # preimages of V4's subgroups: the center, the three C4s, and Q8 itself
    assert labels == {"o2#0", "o4#0", "o4#1", "o4#2", "o8#0"}
    prei = sq.preimage(frozenset([0]))
    assert prei == sq.bottom


def test_make_subquotient_generic():
    d8 = dihedral_group(8)
    sq = make_subquotient(d8, range(8), [0])
    assert sq.quotient.order == 8
    assert sq.quotient_type is None
    with pytest.raises(ValidationError):
        make_subquotient(d8, range(8), [1])
