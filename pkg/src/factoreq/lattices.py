"""Integral G-lattices, invariant pairings, and exact regulator constants.

A lattice is a free Z-module of finite rank with a G-action given by one
unimodular integer matrix per group generator.  Regulator constants are
evaluated exactly over Q:

    C_Theta(M) = prod_H det((1/|H|) <.,.> restricted to M^H)^{n_H}

for a relation Theta = sum n_H H, with any G-invariant positive-definite
pairing <.,.>; the value does not depend on that choice.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ValidationError
from .groups import Group, subgroup_generators
from .intmat import (
    bareiss_determinant,
    fraction_determinant,
    fraction_valuations,
    identity_matrix,
    is_positive_definite,
    kernel_basis,
    mat_mul,
    sublattice_index,
    transpose,
)
from .relations import GRelation, _as_class


class GLattice:
    """A free Z-module with a G-action (columns map to their images).

    ``actions[i]`` is the matrix of the i-th group generator.  Matrices for
    the remaining elements are materialized on demand by multiplying along
    the generator words that enumerated the group; the first
    materialization verifies rho(s)rho(x) = rho(sx) for every generator s
    and element x, which extends inductively to the full homomorphism law.
    """

    def __init__(self, group: Group, actions, label: str = ""):
        if len(actions) != len(group.generators):
            raise ValidationError(
                f"need one action matrix per generator "
                f"({len(group.generators)}), got {len(actions)}")
        mats = tuple(tuple(tuple(int(x) for x in row) for row in m)
                     for m in actions)
        rank = len(mats[0]) if mats else 0
        for m in mats:
            if len(m) != rank or any(len(row) != rank for row in m):
                raise ValidationError("action matrices must be square and "
                                      "of equal size")
            if rank and abs(bareiss_determinant(m)) != 1:
                raise ValidationError("action matrices must be unimodular")
        self.group = group
        self.rank = rank
        self.actions = mats
        self.label = label or f"lattice(rank {rank})"
        self._materialized = None
        self._pairing = None
        self._fixed: dict[int, tuple] = {}
        self._default_dets: dict[int, Fraction] = {}

    def __repr__(self):
        return f"GLattice({self.label}, rank={self.rank}, {self.group.name})"

    def materialized(self) -> tuple:
        """One matrix per group element, verified to be a homomorphism."""
        if self._materialized is None:
            grp = self.group
            n = grp.order
            mats: list = [None] * n
            mats[0] = identity_matrix(self.rank)
            # element indices follow the closure order, so every y > 0 is
            # s*x for some generator s and some x < y
            for x in range(n):
                for gi, g in enumerate(grp.generators):
                    y = grp.mul[g][x]
                    if mats[y] is None:
                        mats[y] = mat_mul(self.actions[gi], mats[x])
            for gi, g in enumerate(grp.generators):
                for x in range(n):
                    if mat_mul(self.actions[gi], mats[x]) != mats[grp.mul[g][x]]:
                        raise ValidationError(
                            f"actions of {self.label} do not respect the "
                            f"multiplication table of {grp.name}")
            self._materialized = tuple(mats)
        return self._materialized


@dataclass(frozen=True)
class Pairing:
    """A symmetric positive-definite rational form on a lattice's basis.

    Positive definite implies nondegenerate; definiteness also pins the
    regulator-constant value to the positive representative, which is the
    only one exposed here.  G-invariance is checked against a specific
    lattice when the pairing is used.
    """

    matrix: tuple

    def __init__(self, matrix):
        rows = tuple(tuple(Fraction(x) for x in row) for row in matrix)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValidationError("pairing matrix must be square")
        if any(rows[i][j] != rows[j][i] for i in range(n) for j in range(i)):
            raise ValidationError("pairing matrix must be symmetric")
        if n and not is_positive_definite(rows):
            raise ValidationError("pairing matrix must be positive definite")
        object.__setattr__(self, "matrix", rows)

    @property
    def rank(self) -> int:
        return len(self.matrix)


@dataclass(frozen=True)
class RegulatorValue:
    """An exact positive rational together with its prime factorization."""

    value: Fraction
    valuations: dict

    def __post_init__(self):
        if self.value <= 0:
            raise ValidationError("regulator constants are positive")
        check = Fraction(1)
        for p, e in self.valuations.items():
            check *= Fraction(p) ** e
        if check != self.value:
            raise ValidationError("valuations do not reassemble the value")

    def valuation(self, p: int) -> int:
        return self.valuations.get(p, 0)

    def __repr__(self):
        return f"RegulatorValue({self.value})"


# -- standard lattices --------------------------------------------------------


def trivial_lattice(group: Group) -> GLattice:
    """Z with every group element acting as the identity."""
    one = identity_matrix(1)
    return GLattice(group, tuple(one for _ in group.generators), label="Z")


def coset_lattice(group: Group, subgroup_class) -> GLattice:
    """Z[G/H]: permutation lattice on the left cosets of a representative."""
    cls = _as_class(group, subgroup_class)
    rep = sorted(cls.representative)
    cosets: list[frozenset] = []
    index: dict[frozenset, int] = {}
    for x in range(group.order):
        c = frozenset(group.mul[x][h] for h in rep)
        if c not in index:
            index[c] = len(cosets)
            cosets.append(c)
    rank = len(cosets)
    actions = []
    for g in group.generators:
        m = [[0] * rank for _ in range(rank)]
        for i, c in enumerate(cosets):
            image = frozenset(group.mul[g][x] for x in c)
            m[index[image]][i] = 1
        actions.append(tuple(tuple(row) for row in m))
    return GLattice(group, tuple(actions), label=f"Coset({cls.label})")


def regular_lattice(group: Group) -> GLattice:
    """Z[G], i.e. the coset lattice of the trivial subgroup."""
    lat = coset_lattice(group, 0)
    lat.label = "Reg"
    return lat


def cyclic_quotient_lattice(group: Group) -> GLattice:
    """Z[G] modulo the sum-of-all-elements vector, basis {image of g != 1}.

    The identity's image is minus the sum of the other images, so an action
    column picks up a full column of -1 whenever a product lands on 1.
    """
    n = group.order
    rank = n - 1
    actions = []
    for g in group.generators:
        m = [[0] * rank for _ in range(rank)]
        for x in range(1, n):
            y = group.mul[g][x]
            if y == 0:
                for r in range(rank):
                    m[r][x - 1] = -1
            else:
                m[y - 1][x - 1] = 1
        actions.append(tuple(tuple(row) for row in m))
    return GLattice(group, tuple(actions), label="A")


def augmentation_lattice(group: Group) -> GLattice:
    """The kernel of Z[G] -> Z, g -> 1, with basis {g - 1 : g != 1}."""
    n = group.order
    rank = n - 1
    actions = []
    for g in group.generators:
        m = [[0] * rank for _ in range(rank)]
        for x in range(1, n):
            y = group.mul[g][x]
            # g*(x-1) = (gx-1) - (g-1); both terms vanish when they hit 1
            if y != 0:
                m[y - 1][x - 1] += 1
            if g != 0:
                m[g - 1][x - 1] -= 1
        actions.append(tuple(tuple(row) for row in m))
    return GLattice(group, tuple(actions), label="I")


def direct_sum(first: GLattice, second: GLattice) -> GLattice:
    """Block-diagonal sum of two lattices over the same group."""
    if first.group is not second.group:
        raise ValidationError("direct summands must share their group")
    ra, rb = first.rank, second.rank
    actions = []
    for ma, mb in zip(first.actions, second.actions):
        top = [tuple(row) + (0,) * rb for row in ma]
        bottom = [(0,) * ra + tuple(row) for row in mb]
        actions.append(tuple(top + bottom))
    return GLattice(first.group, tuple(actions),
                    label=f"Sum({first.label},{second.label})")


def inflate_lattice(group: Group, projection, lat: GLattice) -> GLattice:
    """Pull a quotient-group lattice back along G -> G/B.

    ``projection`` maps each element index of ``group`` to an element index
    of ``lat.group`` and must be the projection of a quotient construction.
    """
    proj = tuple(projection)
    if len(proj) != group.order:
        raise ValidationError("projection must cover every group element")
    mats = lat.materialized()
    actions = tuple(mats[proj[g]] for g in group.generators)
    out = GLattice(group, actions, label=f"Inf({lat.label})")
    return out


def restrict_lattice(lat: GLattice, sub: Group, embedding) -> GLattice:
    """View a G-lattice as a lattice over a subgroup.

    ``embedding[i]`` is the ambient index of ``sub``'s element i, as
    produced by ``subgroup_as_group``.
    """
    emb = tuple(embedding)
    if len(emb) != sub.order:
        raise ValidationError("embedding must cover every subgroup element")
    mats = lat.materialized()
    actions = tuple(mats[emb[g]] for g in sub.generators)
    return GLattice(sub, actions, label=f"Res({lat.label})")


# -- pairings and fixed sublattices -------------------------------------------


def averaged_pairing(lat: GLattice) -> Pairing:
    """The G-invariant form sum_g rho(g)^T rho(g); always positive definite."""
    if lat._pairing is None:
        rank = lat.rank
        total = [[0] * rank for _ in range(rank)]
        for m in lat.materialized():
            prod = mat_mul(transpose(m), m)
            for i in range(rank):
                row = total[i]
                prow = prod[i]
                total[i] = [a + b for a, b in zip(row, prow)]
        lat._pairing = Pairing(tuple(tuple(row) for row in total))
    return lat._pairing


def fixed_sublattice(lat: GLattice, subgroup_class):
    """Basis (as columns) of the sublattice fixed by a subgroup class.

    The kernel of the stacked maps rho(h) - id over a generating set of the
    class representative; integer kernels are saturated, and the column
    form is the canonical one induced by the row normal form.
    """
    cls = _as_class(lat.group, subgroup_class)
    if cls.index not in lat._fixed:
        gens = subgroup_generators(lat.group, cls.representative)
        if not gens:
            basis = identity_matrix(lat.rank)
        else:
            mats = lat.materialized()
            stacked = []
            for h in gens:
                m = mats[h]
                for i in range(lat.rank):
                    row = list(m[i])
                    row[i] -= 1
                    stacked.append(tuple(row))
            basis = kernel_basis(tuple(stacked))
        cols = transpose(basis) if basis else tuple(() for _ in range(lat.rank))
        lat._fixed[cls.index] = cols
    return lat._fixed[cls.index]


def _check_invariance(lat: GLattice, pairing: Pairing):
    if pairing.rank != lat.rank:
        raise ValidationError(
            f"pairing has rank {pairing.rank}, lattice has rank {lat.rank}")
    p = pairing.matrix
    for m in lat.actions:
        if mat_mul(mat_mul(transpose(m), p), m) != p:
            raise ValidationError("pairing is not invariant under the action")


def _scaled_gram_det(lat: GLattice, cls, pairing: Pairing) -> Fraction:
    """det of (1/|H|) <.,.> on a basis of the fixed sublattice of cls."""
    basis = fixed_sublattice(lat, cls)
    dim = len(basis[0]) if basis else 0
    if dim == 0:
        return Fraction(1)
    gram = mat_mul(mat_mul(transpose(basis), pairing.matrix), basis)
    det = fraction_determinant(gram)
    return det / Fraction(cls.order) ** dim


def regulator_constant(lat: GLattice, theta: GRelation,
                       pairing: Pairing | None = None) -> RegulatorValue:
    """Evaluate C_Theta on a lattice, exactly.

    With no pairing supplied the averaged one is used (and per-class
    determinants are cached on the lattice); a supplied pairing must be
    symmetric positive definite and invariant under the action.
    """
    if theta.group is not lat.group:
        raise ValidationError("relation and lattice live on different groups")
    classes = lat.group.subgroup_classes()
    use_cache = pairing is None
    if use_cache:
        pairing = averaged_pairing(lat)
    else:
        _check_invariance(lat, pairing)
    value = Fraction(1)
    for idx, n_h in theta.coefficients:
        if use_cache and idx in lat._default_dets:
            det = lat._default_dets[idx]
        else:
            det = _scaled_gram_det(lat, classes[idx], pairing)
            if use_cache:
                lat._default_dets[idx] = det
        assert det > 0, "definite pairing restricted to a sublattice"
        value *= det ** n_h
    return RegulatorValue(value, fraction_valuations(value))


def index_ratio_check(m_lat: GLattice, n_lat: GLattice, embed,
                      theta: GRelation):
    """Compare C_Theta(M)/C_Theta(N) with prod [N^H : iota(M^H)]^(2 n_H).

    ``embed`` is an injective equivariant integer matrix from M's basis to
    N's.  Returns (equality holds, {class label: index}).
    """
    if m_lat.group is not n_lat.group:
        raise ValidationError("lattices live on different groups")
    if theta.group is not m_lat.group:
        raise ValidationError("relation lives on a different group")
    if m_lat.rank != n_lat.rank:
        raise ValidationError("embedding with finite index needs equal ranks")
    mat = tuple(tuple(int(x) for x in row) for row in embed)
    if len(mat) != n_lat.rank or any(len(row) != m_lat.rank for row in mat):
        raise ValidationError(
            f"embedding must be a {n_lat.rank} x {m_lat.rank} matrix")
    if m_lat.rank and bareiss_determinant(mat) == 0:
        raise ValidationError("embedding must be injective")
    for ma, mb in zip(m_lat.actions, n_lat.actions):
        if mat_mul(mb, mat) != mat_mul(mat, ma):
            raise ValidationError("embedding is not equivariant")
    classes = m_lat.group.subgroup_classes()
    indices = {}
    rhs = Fraction(1)
    for idx, n_h in theta.coefficients:
        cls = classes[idx]
        image = mat_mul(mat, fixed_sublattice(m_lat, cls))
        target = fixed_sublattice(n_lat, cls)
        dim = len(target[0]) if target else 0
        index = 1 if dim == 0 else sublattice_index(target, image)
        indices[cls.label] = index
        rhs *= Fraction(index) ** (2 * n_h)
    lhs = (regulator_constant(m_lat, theta).value
           / regulator_constant(n_lat, theta).value)
    return lhs == rhs, indices


@lru_cache(maxsize=64)
def _tower_lattice(group: Group, m: int) -> GLattice:
    out = direct_sum(direct_sum(cyclic_quotient_lattice(group),
                                augmentation_lattice(group)),
                     trivial_lattice(group))
    for _ in range(m):
        out = direct_sum(out, regular_lattice(group))
    return out


def tower_target_constant(group: Group, m: int,
                          theta: GRelation) -> RegulatorValue:
    """C_Theta of the unit-lattice model A + I + Z + Reg^m.

    The cyclic-quotient and augmentation contributions cancel and the
    regular summands contribute nothing, so the result always equals
    C_Theta(Z) = prod |H|^(-n_H); that closed form is asserted internally.
    """
    if not isinstance(m, int) or m < 0:
        raise ValidationError("the number of regular summands must be a "
                              "non-negative integer")
    result = regulator_constant(_tower_lattice(group, m), theta)
    classes = group.subgroup_classes()
    expected = Fraction(1)
    for idx, n_h in theta.coefficients:
        expected *= Fraction(classes[idx].order) ** (-n_h)
    assert result.value == expected, "tower constant must collapse to C(Z)"
    return result
