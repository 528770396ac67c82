"""Relation engine tests.

Characters are checked against an explicit coset-action oracle (count the
cosets a representative really fixes, for every class member).  Basis vectors
for the small groups are frozen from hand computations with the character
matrices written out.
"""

import pytest

from factoreq.errors import ValidationError
from factoreq.groups import (
    ElemAbelianP2,
    HeisenbergP3,
    cyclic_group,
    dihedral_group,
    elementary_abelian_group,
    heisenberg_group,
    make_subquotient,
    quaternion_group,
    subgroup_as_group,
    subquotients_of_type,
)
from factoreq.relations import (
    GRelation,
    bouc_generators,
    induce_inflate,
    induce_relation,
    is_relation,
    permutation_character,
    relation_basis,
    relation_span_basis,
    spans_match,
)


def oracle_character(group, subgroup):
    """Count genuinely fixed cosets of the exact subgroup, per element class."""
    cosets, seen = [], set()
    for x in range(group.order):
        if x not in seen:
            coset = frozenset(group.mul[x][h] for h in subgroup)
            cosets.append(coset)
            seen |= coset
    values = []
    for ec in group.element_classes():
        g = ec[0]
        values.append(sum(1 for c in cosets
                          if frozenset(group.mul[g][y] for y in c) == c))
    return tuple(values)


GROUPS = {
    "C6": lambda: cyclic_group(6),
    "V4": lambda: elementary_abelian_group(2, 2),
    "E9": lambda: elementary_abelian_group(3, 2),
    "S3": lambda: dihedral_group(6),
    "D8": lambda: dihedral_group(8),
    "Q8": quaternion_group,
    "E8": lambda: elementary_abelian_group(2, 3),
    "Heis3": lambda: heisenberg_group(3),
    "D16": lambda: dihedral_group(16),
}


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_characters_match_coset_oracle_for_every_member(name):
    g = GROUPS[name]()
    for cls in g.subgroup_classes():
        computed = permutation_character(g, cls).values
        for member in cls.members:
            assert computed == oracle_character(g, member)


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_character_invariants(name):
    g = GROUPS[name]()
    for cls in g.subgroup_classes():
        vals = permutation_character(g, cls).values
        index = g.order // cls.order
        assert vals[0] == index
        assert all(0 <= v <= index for v in vals)


def test_character_spot_values():
    v4 = elementary_abelian_group(2, 2)
    assert permutation_character(v4, 0).values == (4, 0, 0, 0)
    assert permutation_character(v4, "o4#0").values == (1, 1, 1, 1)
    h = permutation_character(v4, 1).values
    assert h[0] == 2 and sorted(h) == [0, 0, 2, 2]


def test_relation_basis_of_cyclic_groups_is_empty():
    for n in (1, 2, 3, 4, 5, 6, 7, 8, 12):
        assert relation_basis(cyclic_group(n)) == ()


EXPECTED_BASES = {
    # classes are ordered (trivial, ..., whole group); hand-solved kernels
    "V4": [((0, 1), (1, -1), (2, -1), (3, -1), (4, 2))],
    "E9": [((0, 1), (1, -1), (2, -1), (3, -1), (4, -1), (5, 3))],
    "S3": [((0, 1), (1, -2), (2, -1), (3, 2))],
    "Q8": [((1, 1), (2, -1), (3, -1), (4, -1), (5, 2))],
}


@pytest.mark.parametrize("name", sorted(EXPECTED_BASES))
def test_relation_basis_frozen_values(name):
    g = GROUPS[name]()
    assert [r.coefficients for r in relation_basis(g)] == EXPECTED_BASES[name]


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_relation_basis_properties(name):
    g = GROUPS[name]()
    basis = relation_basis(g)
    non_cyclic = sum(1 for c in g.subgroup_classes() if not c.is_cyclic)
    assert len(basis) == non_cyclic
    for rel in basis:
        assert is_relation(g, rel)
        assert sum(v for _, v in rel.coefficients) == 0
        first = rel.coefficients[0][1] if rel.coefficients else 1
        assert first > 0


def test_is_relation_examples():
    v4 = elementary_abelian_group(2, 2)
    assert is_relation(v4, {0: 1, 1: -1, 2: -1, 3: -1, 4: 2})
    assert not is_relation(v4, {0: 1})
    assert not is_relation(v4, {0: 1, 4: -1})
    assert is_relation(v4, {})
    with pytest.raises(ValidationError):
        is_relation(v4, {17: 1})
    with pytest.raises(ValidationError):
        is_relation(v4, {0: "two"})


def test_relation_arithmetic_helpers():
    e9 = elementary_abelian_group(3, 2)
    rel = relation_basis(e9)[0]
    doubled = rel.plus(rel)
    assert doubled.coefficients == tuple((i, 2 * v) for i, v in rel.coefficients)
    assert rel.plus(GRelation(e9, tuple((i, -v) for i, v in rel.coefficients))) \
        == GRelation(e9, ())
    assert "o9#0" in rel.describe()


def test_induce_inflate_through_center_of_q8():
    q8 = quaternion_group()
    sq = subquotients_of_type(q8, ElemAbelianP2(2))[0]
    rel = relation_basis(sq.quotient)[0]
    image = induce_inflate(q8, sq, rel)
    assert image.coefficients == ((1, 1), (2, -1), (3, -1), (4, -1), (5, 2))


def test_induce_inflate_identity_subquotient():
    h = heisenberg_group(3)
    sq = make_subquotient(h, range(h.order), [0])
    assert sq.quotient.mul == h.mul  # identity relabeling
    for rel in relation_basis(sq.quotient):
        image = induce_inflate(h, sq, rel)
        assert image.coefficients == rel.coefficients
    with pytest.raises(ValidationError):
        induce_inflate(h, sq, GRelation(h, ()))  # wrong carrier group
    with pytest.raises(ValidationError):
        induce_inflate(h, sq, GRelation(sq.quotient, ((0, 1),)))  # not a relation


def test_induce_relation_accumulates_conjugate_images():
    d8 = dihedral_group(8)
    v4 = next(c for c in d8.subgroup_classes()
              if c.order == 4 and not c.is_cyclic)
    sub, emb = subgroup_as_group(d8, v4.representative)
    rel = relation_basis(sub)[0]
    image = induce_relation(d8, emb, rel)
    assert is_relation(d8, image)
    # two of V4's order-2 subgroups fuse in D8, so one coefficient is -2
    assert sorted(v for _, v in image.coefficients) == [-2, -1, 1, 2]


BOUC_COUNTS = {"V4": 1, "E9": 1, "D8": 4, "Q8": 1, "E8": 14, "Heis3": 11,
               "D16": 9}
BOUC_PRIME = {"V4": 2, "E9": 3, "D8": 2, "Q8": 2, "E8": 2, "Heis3": 3,
              "D16": 2}


@pytest.mark.parametrize("name", sorted(BOUC_COUNTS))
def test_bouc_generator_counts_and_validity(name):
    g = GROUPS[name]()
    gens = bouc_generators(g, BOUC_PRIME[name])
    assert len(gens) == BOUC_COUNTS[name]
    for rel in gens:
        assert is_relation(g, rel)


@pytest.mark.parametrize("name", sorted(BOUC_COUNTS))
def test_bouc_span_equals_basis_span(name):
    g = GROUPS[name]()
    assert spans_match(bouc_generators(g, BOUC_PRIME[name]), relation_basis(g))


def test_bouc_rejects_bad_input():
    with pytest.raises(ValidationError):
        bouc_generators(dihedral_group(6), 2)  # not a 2-group
    with pytest.raises(ValidationError):
        bouc_generators(elementary_abelian_group(2, 2), 4)
    assert bouc_generators(cyclic_group(9), 3) == ()


def test_heisenberg_center_pair_relation_shape():
    h = heisenberg_group(3)
    gens = bouc_generators(h, 3)
    pair_rels = [r for r in gens
                 if sorted(v for _, v in r.coefficients) == [-1, -1, 1, 1]]
    assert len(pair_rels) == 6  # one per unordered pair of 4 classes
    classes = h.subgroup_classes()
    for rel in pair_rels:
        orders = sorted(classes[i].order for i, _ in rel.coefficients)
        assert orders == [3, 3, 9, 9]


def test_span_basis_is_canonical():
    d8 = dihedral_group(8)
    basis = relation_basis(d8)
    doubled = [r.plus(r) for r in basis]
    assert relation_span_basis(doubled) != relation_span_basis(basis)
    shuffled = basis[::-1]
    assert relation_span_basis(shuffled) == relation_span_basis(basis)
    assert relation_span_basis([]) == ()
