"""Classical equivariant intersection numbers of the resolution and the
associated surface fibration, plus the character-theoretic pairing matrix.

All integrals are localized, so each is a pure power of the equivariant
parameter t times an exact rational.  The t-power is carried as an integer
tag next to the rational; t is never a series variable.

Threefold tensors are indexed by Irr*(G) (equivalently the non-binary
nodes, in slot order); surface tensors are indexed by all simple roots.
The two-point blocks come from positive-root coefficient sums, for which
sum over R+ of alpha alpha^T = h * C^-1 with h the Coxeter number; the
pairing matrix inverts the threefold two-point block exactly, which is the
cross-check tying the character table to the root system.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .exact import identity, mat_mul
from .grouprep import (
    DEFAULT_DPS,
    GroupSpec,
    as_mpc,
    correspondence,
    round_integer,
)
from .rootsys import root_system

Matrix = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class EquivariantScalar:
    value: Fraction
    t_power: int

    def __str__(self) -> str:
        if self.t_power == 0:
            return str(self.value)
        return f"{self.value} * t^{self.t_power}"


@dataclass(frozen=True)
class IntersectionData:
    """0/1/2/3-point integrals in one fixed basis.

    one_point is identically zero (stored for shape completeness, with no
    t-power of its own).  two_point and three_point are fully materialized
    symmetric tensors sharing a single t-power each.
    """

    basis: tuple[str, ...]
    zero_point: EquivariantScalar
    one_point: tuple[Fraction, ...]
    two_point: Matrix
    two_point_t_power: int
    three_point: tuple[tuple[tuple[Fraction, ...], ...], ...]
    three_point_t_power: int


def _root_tensors(vectors) -> tuple[Matrix, tuple]:
    """Sum of outer squares and cubes of the given integer vectors."""
    if not vectors:
        raise ValueError("no vectors")
    n = len(vectors[0])
    two = [[0] * n for _ in range(n)]
    three = [[[0] * n for _ in range(n)] for _ in range(n)]
    for v in vectors:
        for i in range(n):
            if v[i] == 0:
                continue
            for j in range(n):
                if v[j] == 0:
                    continue
                two[i][j] += v[i] * v[j]
                for k in range(n):
                    three[i][j][k] += v[i] * v[j] * v[k]
    two_m = tuple(tuple(Fraction(x) for x in row) for row in two)
    three_t = tuple(
        tuple(tuple(Fraction(x) for x in row) for row in plane) for plane in three
    )
    return two_m, three_t


def threefold_integrals(spec: GroupSpec, dps: int = DEFAULT_DPS) -> IntersectionData:
    """Integrals over the resolution, in the Irr*(G) basis:

    point class 1/(t^3 |G|); divisor one-points 0; two-point
    -(1/2h) * restricted root sum at t^-1; three-point (1/4) * restricted
    root sum at t^0.
    """
    corr = correspondence(spec, dps)
    rs = root_system(corr.ade)
    restricted = [
        tuple(alpha[node] for node in corr.slot_node) for alpha in rs.positive_roots
    ]
    two, three = _root_tensors(restricted)
    h = rs.coxeter_number
    n = len(corr.slots)
    return IntersectionData(
        basis=corr.slot_labels,
        zero_point=EquivariantScalar(Fraction(1, spec.order), -3),
        one_point=tuple(Fraction(0) for _ in range(n)),
        two_point=tuple(
            tuple(-x / (2 * h) for x in row) for row in two
        ),
        two_point_t_power=-1,
        three_point=tuple(
            tuple(tuple(x / 4 for x in row) for row in plane) for plane in three
        ),
        three_point_t_power=0,
    )


def surface_integrals(spec: GroupSpec, dps: int = DEFAULT_DPS) -> IntersectionData:
    """Integrals over the surface resolution, in the full simple-root basis:

    point class 4/(t^2 |G^|); one-points 0; two-point -(1/h) * root sum
    = -C^-1 at t^0; three-point (1/2) * root sum at t^1.
    """
    corr = correspondence(spec, dps)
    rs = root_system(corr.ade)
    two, three = _root_tensors(rs.positive_roots)
    h = rs.coxeter_number
    rank = rs.rank
    labels = tuple(
        corr.binary_group.irreps[i].label for i in corr.node_irreps
    )
    return IntersectionData(
        basis=labels,
        zero_point=EquivariantScalar(Fraction(4, corr.binary_group.order), -2),
        one_point=tuple(Fraction(0) for _ in range(rank)),
        two_point=tuple(tuple(-x / h for x in row) for row in two),
        two_point_t_power=0,
        three_point=tuple(
            tuple(tuple(x / 2 for x in row) for row in plane) for plane in three
        ),
        three_point_t_power=1,
    )


def mckay_pairing(spec: GroupSpec, dps: int = DEFAULT_DPS):
    """The intersection pairing from characters, an integer matrix at t^1:

        g[rho][rho'] = (1/|G|) sum over classes of size * (chi_V - 3)
                       * chi_rho * conj(chi_rho')

    Rounding asserts a residual below 1e-30.  The product with the
    two-point matrix of `threefold_integrals` is the identity; that
    inversion is the content of `pairing_inverse_check`.
    """
    corr = correspondence(spec, dps)
    g = corr.group
    with mp.workdps(dps + 10):
        rows = []
        for s in corr.slots:
            row = []
            for s2 in corr.slots:
                acc = mp.mpc(0)
                for ci, cls in enumerate(g.classes):
                    acc += (
                        cls.size
                        * (as_mpc(g.chi_v[ci]) - 3)
                        * as_mpc(g.table[s][ci])
                        * mp.conj(as_mpc(g.table[s2][ci]))
                    )
                row.append(round_integer(acc / g.order))
            rows.append(tuple(row))
    matrix = tuple(rows)
    return matrix, 1


def pairing_inverse_check(spec: GroupSpec, dps: int = DEFAULT_DPS) -> bool:
    """pairing (t^1) times two-point (t^-1) equals the identity at t^0."""
    pairing, _ = mckay_pairing(spec, dps)
    data = threefold_integrals(spec, dps)
    product = mat_mul(
        [[Fraction(x) for x in row] for row in pairing],
        [list(row) for row in data.two_point],
    )
    return product == identity(len(pairing))


@dataclass(frozen=True)
class ClassicalPotential:
    """Cubic part of the genus-zero potential plus the identity-sector
    constants of the orbifold side.

    cubic[i][j][k] is the three-point integral (the coefficient of
    y_i y_j y_k / 3!).  The identity-sector data consists of the triple
    self-pairing of the identity class and, per nontrivial class, the
    pairing of the identity with a class and its inverse class.
    """

    basis: tuple[str, ...]
    cubic: tuple[tuple[tuple[Fraction, ...], ...], ...]
    cubic_t_power: int
    delta_e_cubed: EquivariantScalar
    delta_pair: dict[str, EquivariantScalar]


def classical_potential(spec: GroupSpec, dps: int = DEFAULT_DPS) -> ClassicalPotential:
    corr = correspondence(spec, dps)
    data = threefold_integrals(spec, dps)
    g = corr.group
    assert g.classes[0].size == 1 and g.classes[0].element_order == 1
    pairs = {}
    for cls in g.classes[1:]:
        centralizer = g.order // cls.size
        pairs[cls.label] = EquivariantScalar(Fraction(1, centralizer), -1)
    return ClassicalPotential(
        basis=data.basis,
        cubic=data.three_point,
        cubic_t_power=data.three_point_t_power,
        delta_e_cubed=EquivariantScalar(Fraction(1, g.order), -3),
        delta_pair=pairs,
    )
