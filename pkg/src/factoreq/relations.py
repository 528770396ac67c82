"""Relations between permutation characters of a finite group.

A relation assigns an integer coefficient to each conjugacy class of
subgroups so that the corresponding permutation characters cancel:
``sum_H n_H chi_{G/H} = 0``.  The set of relations is a saturated integer
lattice; :func:`relation_basis` returns its canonical (Hermite normal form)
basis.  For p-groups, :func:`bouc_generators` produces the classical
generating family obtained by inducing and inflating three kinds of
small-quotient relations, and the two spans must agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .groups import (
    Dihedral2N,
    ElemAbelianP2,
    Group,
    HeisenbergP3,
    Subquotient,
    _is_prime,
    subquotients_of_type,
)
from .intmat import kernel_basis, row_span_basis


@dataclass(frozen=True)
class CharacterVector:
    """Permutation character values on the element conjugacy classes."""

    group: Group
    values: tuple

    def __post_init__(self):
        ecs = self.group.element_classes()
        if len(self.values) != len(ecs):
            raise ValidationError("one value per element class required")


def permutation_character(group: Group, subgroup_class) -> CharacterVector:
    """Character of the coset action G/H: fixed cosets per element class.

    ``subgroup_class`` may be a SubgroupClass, its index, or its label.  The
    count ``#{x : x^-1 g x in H}`` is always divisible by |H|; the quotient
    is the number of fixed cosets.
    """
    cls = _as_class(group, subgroup_class)
    members = cls.representative
    mul, inv = group.mul, group.inverse
    values = []
    for ec in group.element_classes():
        g = ec[0]
        hits = sum(1 for x in range(group.order)
                   if mul[mul[inv[x]][g]][x] in members)
        fixed, rem = divmod(hits, cls.order)
        assert rem == 0, "conjugation count must be divisible by |H|"
        values.append(fixed)
    return CharacterVector(group, tuple(values))


def _as_class(group, spec):
    classes = group.subgroup_classes()
    if isinstance(spec, int):
        if not 0 <= spec < len(classes):
            raise ValidationError(f"no subgroup class with index {spec}")
        return classes[spec]
    if isinstance(spec, str):
        return group.class_by_label(spec)
    if spec in classes:
        return spec
    raise ValidationError(f"{spec!r} does not name a subgroup class")


@dataclass(frozen=True)
class GRelation:
    """An integer combination of subgroup classes with cancelling characters.

    ``coefficients`` is a sorted tuple of (class_index, coefficient) pairs
    with zero coefficients dropped; the empty relation is allowed.
    """

    group: Group
    coefficients: tuple

    @staticmethod
    def from_mapping(group: Group, mapping) -> "GRelation":
        classes = group.subgroup_classes()
        coeffs = {}
        for key, val in dict(mapping).items():
            idx = _as_class(group, key).index
            if not isinstance(val, int):
                raise ValidationError("relation coefficients must be integers")
            coeffs[idx] = coeffs.get(idx, 0) + val
        _ = classes
        return GRelation(group, tuple(sorted((k, v) for k, v in coeffs.items() if v)))

    def coefficient(self, class_index: int) -> int:
        return dict(self.coefficients).get(class_index, 0)

    @property
    def support(self) -> tuple:
        return tuple(idx for idx, _ in self.coefficients)

    def as_vector(self) -> tuple:
        n = len(self.group.subgroup_classes())
        vec = [0] * n
        for idx, val in self.coefficients:
            vec[idx] = val
        return tuple(vec)

    def plus(self, other: "GRelation") -> "GRelation":
        if other.group is not self.group:
            raise ValidationError("relations live on different groups")
        merged = dict(self.coefficients)
        for idx, val in other.coefficients:
            merged[idx] = merged.get(idx, 0) + val
        return GRelation(self.group, tuple(sorted((k, v) for k, v in merged.items() if v)))

    def describe(self) -> str:
        classes = self.group.subgroup_classes()
        if not self.coefficients:
            return "0"
        parts = []
        for idx, val in self.coefficients:
            sign = "-" if val < 0 else ("+" if parts else "")
            mag = abs(val)
            term = classes[idx].label if mag == 1 else f"{mag}*{classes[idx].label}"
            parts.append(f"{sign} {term}" if parts else f"{sign}{term}")
        return " ".join(parts)

    def __repr__(self):
        return f"GRelation({self.describe()})"


def is_relation(group: Group, candidate) -> bool:
    """Do the permutation characters weighted by the candidate cancel?"""
    rel = candidate if isinstance(candidate, GRelation) \
        else GRelation.from_mapping(group, candidate)
    if rel.group is not group:
        raise ValidationError("relation belongs to a different group")
    total = [0] * len(group.element_classes())
    for idx, val in rel.coefficients:
        char = permutation_character(group, idx).values
        for i, x in enumerate(char):
            total[i] += val * x
    return not any(total)


def relation_basis(group: Group) -> tuple:
    """Canonical basis of the saturated lattice of relations.

    The kernel of the (element classes) x (subgroup classes) character matrix
    is taken over the integers and returned in row Hermite normal form, so
    each basis vector's first nonzero coefficient is positive and repeated
    runs are bit-identical.
    """
    classes = group.subgroup_classes()
    chars = [permutation_character(group, c).values for c in classes]
    rows = tuple(tuple(chars[j][i] for j in range(len(classes)))
                 for i in range(len(group.element_classes())))
    basis = []
    for vec in kernel_basis(rows):
        rel = GRelation(group, tuple((i, v) for i, v in enumerate(vec) if v))
        basis.append(rel)
    return tuple(basis)


def relation_span_basis(relations) -> tuple:
    """Canonical integer row-span of a family of relations (HNF rows)."""
    rels = tuple(relations)
    if not rels:
        return ()
    return row_span_basis(tuple(r.as_vector() for r in rels))


def spans_match(relations_a, relations_b) -> bool:
    return relation_span_basis(relations_a) == relation_span_basis(relations_b)


def induce_inflate(group: Group, sq: Subquotient, rel: GRelation) -> GRelation:
    """Pull a quotient relation up through a subquotient (B <= H <= G).

    Each subgroup class of H/B is replaced by the G-conjugacy class of its
    preimage in H; coefficients landing on the same class accumulate.  The
    result is again a relation (asserted).
    """
    if sq.group is not group:
        raise ValidationError("subquotient belongs to a different group")
    if rel.group is not sq.quotient:
        raise ValidationError("relation must live on the subquotient's quotient")
    if not is_relation(sq.quotient, rel):
        raise ValidationError("input is not a relation of the quotient")
    qclasses = sq.quotient.subgroup_classes()
    acc: dict[int, int] = {}
    for idx, val in rel.coefficients:
        pre = sq.preimage(qclasses[idx].representative)
        gidx = group.class_of_subgroup(pre)
        acc[gidx] = acc.get(gidx, 0) + val
    out = GRelation(group, tuple(sorted((k, v) for k, v in acc.items() if v)))
    assert is_relation(group, out), "induced-inflated image failed to cancel"
    return out


def induce_relation(group: Group, embedding, rel: GRelation) -> GRelation:
    """Read a relation of a subgroup (as its own Group) inside the big group.

    ``embedding`` is the index map returned by ``subgroup_as_group``; each
    subgroup class of H maps to the G-class of its image.
    """
    sub = rel.group
    if len(embedding) != sub.order:
        raise ValidationError("embedding length must match the subgroup order")
    sclasses = sub.subgroup_classes()
    acc: dict[int, int] = {}
    for idx, val in rel.coefficients:
        image = frozenset(embedding[i] for i in sclasses[idx].representative)
        gidx = group.class_of_subgroup(image)
        acc[gidx] = acc.get(gidx, 0) + val
    out = GRelation(group, tuple(sorted((k, v) for k, v in acc.items() if v)))
    assert is_relation(group, out), "induced image failed to cancel"
    return out


def bouc_generators(group: Group, p: int) -> tuple:
    """The classical generating relations of a p-group.

    Three sources, induced and inflated from every matching subquotient:

    * elementary abelian p^2 quotients contribute
      ``1 - sum_C C + p * (H/B)`` over all order-p subgroups C;
    * for odd p, exponent-p Heisenberg quotients contribute
      ``I - IZ - J + JZ`` for every pair of non-conjugate non-central
      order-p classes (Z the center);
    * for p = 2, dihedral quotients of order 2^n, n >= 3, contribute the
      same ``I - IZ - J + JZ`` pattern for order-2 classes.  The order-8
      dihedral case is needed: its own relation lattice exceeds the span
      of its elementary abelian subquotient relations by index 2.

    Their span is the full relation lattice (checked in the tests, not here).
    """
    if not _is_prime(p):
        raise ValidationError(f"{p} is not prime")
    n = group.order
    while n % p == 0:
        n //= p
    if n != 1:
        raise ValidationError(f"group of order {group.order} is not a {p}-group")
    out = []
    for sq in subquotients_of_type(group, ElemAbelianP2(p)):
        q = sq.quotient
        coeffs = {}
        for cls in q.subgroup_classes():
            if cls.order == 1:
                coeffs[cls.index] = 1
            elif cls.order == p:
                coeffs[cls.index] = -1
            else:
                coeffs[cls.index] = p
        rel = GRelation.from_mapping(q, coeffs)
        out.append(induce_inflate(group, sq, rel))
    if p % 2:
        for sq in subquotients_of_type(group, HeisenbergP3(p)):
            out.extend(induce_inflate(group, sq, rel)
                       for rel in _center_pair_relations(sq.quotient, p))
    else:
        size = group.order
        n_max = size.bit_length() - 1
        for nn in range(3, n_max + 1):
            for sq in subquotients_of_type(group, Dihedral2N(nn)):
                out.extend(induce_inflate(group, sq, rel)
                           for rel in _center_pair_relations(sq.quotient, 2))
    return tuple(out)


def _center_pair_relations(q: Group, p: int):
    """I - IZ - J + JZ over pairs of non-central order-p classes of q."""
    z = q.center()
    noncentral = [cls for cls in q.subgroup_classes()
                  if cls.order == p and not cls.representative <= z]
    rels = []
    for a in range(len(noncentral)):
        for b in range(a + 1, len(noncentral)):
            big_i, big_j = noncentral[a], noncentral[b]
            iz = q.subgroup_generated_by(big_i.representative | z)
            jz = q.subgroup_generated_by(big_j.representative | z)
            coeffs: dict[int, int] = {}
            for idx, val in ((big_i.index, 1),
                             (q.class_of_subgroup(iz), -1),
                             (big_j.index, -1),
                             (q.class_of_subgroup(jz), 1)):
                coeffs[idx] = coeffs.get(idx, 0) + val
            rels.append(GRelation(q, tuple(sorted(
                (k, v) for k, v in coeffs.items() if v))))
    return rels
