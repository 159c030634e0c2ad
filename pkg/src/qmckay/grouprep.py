"""Finite rotation groups, their binary covers, and the irrep/node dictionary.

Five families of finite subgroups of the rotation group SO(3) are supported,
each with its double cover inside SU(2):

======================  ==========  ===========  ==============
family                  |G|         |G^| = 2|G|  root system
======================  ==========  ===========  ==============
cyclic(k), k >= 2       k           2k           A(2k-1)
dihedral(m), m >= 2     2m          4m           D(m+2)
tetrahedral             12          24           E6
octahedral              24          48           E7
icosahedral             60          120          E8
======================  ==========  ===========  ==============

Character tables are closed-form and parametric in the family parameter.
Entries are stored exactly as `fractions.Fraction` whenever the value is
rational and otherwise as `mpmath` numbers computed at the model's working
precision (`dps` decimal digits, default 64).  Integer quantities derived
from them (tensor multiplicities, pairings) are obtained by rounding with a
residual assertion below 1e-30.

Fixed conventions (part of the public contract; consumers index by label):

* Class and irrep orderings per family are exactly the orders produced by
  the builders below, documented next to each table.
* The nontrivial irreps of the binary group are matched to the nodes of the
  root system of the family ("node dictionary").  For cyclic(k), node ``p``
  carries the character ``chi(p+1)`` of Z_{2k}.  For dihedral(m), node 0
  carries the 1-dimensional ``sgn``, nodes ``1..m-1`` carry the 2-dimensional
  ``rho1..rho(m-1)`` along the chain, and the two fork nodes carry the
  remaining 1-dimensionals ``psi1``, ``psi2``.  For the exceptional families
  the dictionary is listed in the builders.  `correspondence` re-derives the
  McKay adjacency from characters and verifies it against the Cartan matrix,
  so a wrong dictionary cannot survive construction.
* An irrep of the binary group "pulls back" from G exactly when its
  character at the central involution z equals its dimension.  The nodes
  whose irreps do not pull back are the binary simple roots.

Naming caveat: an odd-rank A-type label always names the root system of the
*binary* group, so ``A3`` belongs to cyclic(2), ``A5`` to cyclic(3), and so
on.  Some classifications instead label the cyclic group of order n by
``A(n-1)``; this package never uses that convention.  Even-rank A types have
no rotation group here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

import mpmath as mp

from .errors import ConfigurationError, InternalConsistencyError
from .rootsys import ADEType, cartan_matrix, root_system

DEFAULT_DPS = 64
_GUARD = 10  # extra working digits for table construction
RESIDUAL_TOL = mp.mpf("1e-30")

CharValue = Union[Fraction, mp.mpf, mp.mpc]

_KINDS = ("cyclic", "dihedral", "tetrahedral", "octahedral", "icosahedral")


@dataclass(frozen=True, order=True)
class GroupSpec:
    """One finite rotation group, named by family and parameter."""

    kind: str
    parameter: int = 0

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ConfigurationError(f"unknown group family {self.kind!r}")
        if self.kind == "cyclic" and self.parameter < 2:
            raise ConfigurationError("cyclic groups need parameter k >= 2")
        if self.kind == "dihedral" and self.parameter < 2:
            raise ConfigurationError("dihedral groups need parameter m >= 2")
        if self.kind in _KINDS[2:] and self.parameter != 0:
            raise ConfigurationError(f"{self.kind} takes no parameter")

    @staticmethod
    def cyclic(k: int) -> "GroupSpec":
        return GroupSpec("cyclic", k)

    @staticmethod
    def dihedral(m: int) -> "GroupSpec":
        return GroupSpec("dihedral", m)

    @staticmethod
    def tetrahedral() -> "GroupSpec":
        return GroupSpec("tetrahedral")

    @staticmethod
    def octahedral() -> "GroupSpec":
        return GroupSpec("octahedral")

    @staticmethod
    def icosahedral() -> "GroupSpec":
        return GroupSpec("icosahedral")

    @property
    def order(self) -> int:
        if self.kind == "cyclic":
            return self.parameter
        if self.kind == "dihedral":
            return 2 * self.parameter
        return {"tetrahedral": 12, "octahedral": 24, "icosahedral": 60}[self.kind]

    def __str__(self) -> str:
        if self.kind == "cyclic":
            return f"cyclic({self.parameter})"
        if self.kind == "dihedral":
            return f"dihedral({self.parameter})"
        return self.kind


def root_system_of(spec: GroupSpec) -> ADEType:
    """ADE type of the binary cover's McKay root system."""
    if spec.kind == "cyclic":
        return ADEType("A", 2 * spec.parameter - 1)
    if spec.kind == "dihedral":
        return ADEType("D", spec.parameter + 2)
    return ADEType("E", {"tetrahedral": 6, "octahedral": 7, "icosahedral": 8}[spec.kind])


# ---------------------------------------------------------------------------
# exact-where-possible character values
# ---------------------------------------------------------------------------

_COS_TABLE = {
    Fraction(0): Fraction(1),
    Fraction(1, 2): Fraction(-1),
    Fraction(1, 3): Fraction(-1, 2),
    Fraction(2, 3): Fraction(-1, 2),
    Fraction(1, 4): Fraction(0),
    Fraction(3, 4): Fraction(0),
    Fraction(1, 6): Fraction(1, 2),
    Fraction(5, 6): Fraction(1, 2),
}


def cos_turn(t: Fraction) -> CharValue:
    """cos(2*pi*t) for rational t, exact whenever the value is rational."""
    t = Fraction(t) % 1
    if t in _COS_TABLE:
        return _COS_TABLE[t]
    return mp.cospi(2 * mp.mpf(t.numerator) / t.denominator)


def exp_turn(t: Fraction) -> CharValue:
    """exp(2*pi*i*t) for rational t, exact whenever the value is rational."""
    t = Fraction(t) % 1
    if t == 0:
        return Fraction(1)
    if t == Fraction(1, 2):
        return Fraction(-1)
    return mp.expjpi(2 * mp.mpf(t.numerator) / t.denominator)


def as_mpc(v: CharValue) -> mp.mpc:
    if isinstance(v, Fraction):
        return mp.mpc(mp.mpf(v.numerator) / v.denominator)
    return mp.mpc(v)


def conj_value(v: CharValue) -> CharValue:
    if isinstance(v, Fraction):
        return v
    return mp.conj(v)


def round_integer(x, tol=RESIDUAL_TOL) -> int:
    """Round a (possibly complex) value to the nearest integer, asserting the
    residual (including any imaginary part) stays below ``tol``."""
    z = mp.mpc(x)
    n = int(mp.nint(z.real))
    if abs(z.real - n) > tol or abs(z.imag) > tol:
        raise InternalConsistencyError(f"value {z} is not an integer within {tol}")
    return n


# ---------------------------------------------------------------------------
# data model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConjClass:
    """One conjugacy class.

    ``turn`` is the rotation angle of the class acting on R^3, as an exact
    fraction of a full turn normalised to [0, 1/2]; it is None for classes of
    a binary group.  ``image_class`` holds, for a binary group, the index of
    the class of the image rotation in the quotient.
    """

    label: str
    size: int
    element_order: int
    turn: Fraction | None = None
    image_class: int | None = None


@dataclass(frozen=True)
class Irrep:
    label: str
    dim: int


@dataclass(frozen=True)
class GroupModel:
    spec: GroupSpec
    name: str
    order: int
    is_binary: bool
    classes: tuple[ConjClass, ...]
    irreps: tuple[Irrep, ...]
    table: tuple[tuple[CharValue, ...], ...]  # rows: irreps, columns: classes
    chi_v: tuple[CharValue, ...] | None  # character of the rotation action on R^3
    chi_u: tuple[CharValue, ...] | None  # character of the defining SU(2) action
    center_class: int | None  # index of the central involution z (binary only)
    inverse_class: tuple[int, ...]  # class index -> class index of the inverses
    dps: int

    def class_index(self, label: str) -> int:
        for i, c in enumerate(self.classes):
            if c.label == label:
                return i
        raise ConfigurationError(f"{self.name} has no class {label!r}")

    def irrep_index(self, label: str) -> int:
        for i, r in enumerate(self.irreps):
            if r.label == label:
                return i
        raise ConfigurationError(f"{self.name} has no irrep {label!r}")

    def character(self, label: str) -> tuple[CharValue, ...]:
        return self.table[self.irrep_index(label)]

    def nontrivial_irreps(self) -> tuple[int, ...]:
        """Indices of the nontrivial irreps, sorted by (dimension, position)."""
        return tuple(
            sorted(range(1, len(self.irreps)), key=lambda i: (self.irreps[i].dim, i))
        )


@dataclass(frozen=True)
class McKayGraph:
    labels: tuple[str, ...]
    dims: tuple[int, ...]
    adjacency: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Correspondence:
    """Everything tying one group to its root system.

    ``node_irreps[p]`` is the index (into ``binary_group.irreps``) of the
    irrep sitting at node ``p``.  ``slots`` lists the nontrivial irreps of G
    in the canonical (dimension, position) order; ``slot_node[s]`` is the node
    whose irrep pulls back to slot ``s``, and ``node_slot`` is its partial
    inverse (None on binary nodes).
    """

    spec: GroupSpec
    ade: ADEType
    group: GroupModel
    binary_group: GroupModel
    node_irreps: tuple[int, ...]
    binary_nodes: frozenset[int]
    slots: tuple[int, ...]
    slot_labels: tuple[str, ...]
    node_slot: tuple[int | None, ...]
    slot_node: tuple[int, ...]


# ---------------------------------------------------------------------------
# character sums
# ---------------------------------------------------------------------------


def inner_product(model: GroupModel, row_a, row_b) -> mp.mpc:
    """(1/|G|) * sum over classes of size * a * conj(b).

    Runs at the model's working precision regardless of the ambient mpmath
    context, so stored table entries are never truncated mid-sum.
    """
    with mp.workdps(model.dps + _GUARD):
        acc = mp.mpc(0)
        for cls, a, b in zip(model.classes, row_a, row_b):
            acc += cls.size * as_mpc(a) * mp.conj(as_mpc(b))
        return acc / model.order


def multiplicity(model: GroupModel, row_a, row_b) -> int:
    return round_integer(inner_product(model, row_a, row_b))


def pulls_back(model: GroupModel, irrep_label: str) -> bool:
    """True when the binary-group irrep factors through the rotation group."""
    if not model.is_binary:
        raise ConfigurationError("pulls_back applies to binary-group models")
    i = model.irrep_index(irrep_label)
    dim = model.irreps[i].dim
    z = as_mpc(model.table[i][model.center_class])
    if abs(z - dim) < RESIDUAL_TOL:
        return True
    if abs(z + dim) < RESIDUAL_TOL:
        return False
    raise InternalConsistencyError(
        f"character of {irrep_label} at the central involution is neither +-dim: {z}"
    )


def mckay_graph(model: GroupModel) -> McKayGraph:
    """Adjacency a[i][j] = multiplicity of irrep j inside U (x) irrep i."""
    if not model.is_binary or model.chi_u is None:
        raise ConfigurationError("the McKay graph is built from a binary-group model")
    with mp.workdps(model.dps + _GUARD):
        rows = model.table
        chi_u = model.chi_u
        n = len(rows)
        adj = []
        for i in range(n):
            prod = [as_mpc(u) * as_mpc(a) for u, a in zip(chi_u, rows[i])]
            adj.append(tuple(multiplicity(model, prod, rows[j]) for j in range(n)))
    return McKayGraph(
        labels=tuple(r.label for r in model.irreps),
        dims=tuple(r.dim for r in model.irreps),
        adjacency=tuple(adj),
    )


# ---------------------------------------------------------------------------
# ages and the hard Lefschetz condition
# ---------------------------------------------------------------------------


def age(exponents: tuple[int, int, int], modulus: int) -> Fraction:
    """Age of a diagonalised finite-order action with the given eigenvalue
    exponents (k1, k2, k3) modulo ``modulus``.

    Requires 0 <= k_i < modulus and k1+k2+k3 = 0 mod modulus (determinant 1).
    """
    if modulus < 1:
        raise ConfigurationError("modulus must be a positive integer")
    if len(exponents) != 3 or any(not (0 <= k < modulus) for k in exponents):
        raise ConfigurationError("exponents must satisfy 0 <= k < modulus")
    if sum(exponents) % modulus != 0:
        raise ConfigurationError("exponents must sum to 0 mod modulus (det = 1)")
    return Fraction(sum(exponents), modulus)


def inverse_exponents(exponents: tuple[int, int, int], modulus: int) -> tuple[int, int, int]:
    return tuple((-k) % modulus for k in exponents)  # type: ignore[return-value]


def hard_lefschetz_exponents(exponents: tuple[int, int, int], modulus: int) -> bool:
    """True when the element and its inverse have equal age."""
    return age(exponents, modulus) == age(inverse_exponents(exponents, modulus), modulus)


def class_age_exponents(cls: ConjClass) -> tuple[tuple[int, int, int], int]:
    """Eigenvalue exponents (0, p, q-p) mod q of a rotation with turn p/q."""
    if cls.turn is None:
        raise ConfigurationError("ages are defined for rotation-group classes")
    t = cls.turn
    if t == 0:
        return (0, 0, 0), 1
    return (0, t.numerator, t.denominator - t.numerator), t.denominator


def hard_lefschetz_check(model: GroupModel) -> tuple[bool, tuple[Fraction, ...]]:
    """Ages of every class, plus whether each equals the age of its inverse.

    For rotation groups every nontrivial age is 1, so the check always
    passes; it exists so the criterion is verified rather than assumed.
    """
    ages = []
    ok = True
    for cls in model.classes:
        exps, q = class_age_exponents(cls)
        ages.append(age(exps, q))
        ok = ok and hard_lefschetz_exponents(exps, q)
    return ok, tuple(ages)


# ---------------------------------------------------------------------------
# family builders
# ---------------------------------------------------------------------------


def _chi_v_from_turns(classes: tuple[ConjClass, ...]) -> tuple[CharValue, ...]:
    return tuple(1 + 2 * cos_turn(cls.turn) for cls in classes)


def _assemble(
    spec,
    name,
    order,
    is_binary,
    classes,
    irreps,
    rows,
    chi_v,
    chi_u,
    inverse,
    dps,
) -> GroupModel:
    classes = tuple(classes)
    irreps = tuple(irreps)
    rows = tuple(tuple(r) for r in rows)
    if sum(c.size for c in classes) != order:
        raise InternalConsistencyError(f"{name}: class sizes do not sum to the order")
    if sum(r.dim * r.dim for r in irreps) != order:
        raise InternalConsistencyError(f"{name}: sum of dim^2 differs from the order")
    if len(classes) != len(irreps):
        raise InternalConsistencyError(f"{name}: class and irrep counts differ")
    center = None
    if is_binary:
        small = [i for i, c in enumerate(classes) if c.size == 1 and c.element_order == 2]
        if len(small) != 1:
            raise InternalConsistencyError(f"{name}: central involution not unique")
        center = small[0]
        if abs(as_mpc(chi_u[center]) + 2) > RESIDUAL_TOL:
            raise InternalConsistencyError(f"{name}: defining character at z is not -2")
    return GroupModel(
        spec=spec,
        name=name,
        order=order,
        is_binary=is_binary,
        classes=classes,
        irreps=irreps,
        table=rows,
        chi_v=tuple(chi_v) if chi_v is not None else None,
        chi_u=tuple(chi_u) if chi_u is not None else None,
        center_class=center,
        inverse_class=tuple(inverse),
        dps=dps,
    )


def _cyclic_family(k: int, dps: int):
    F = Fraction
    # G = Z_k.  Classes g0..g(k-1) (powers of the rotation by one k-th turn),
    # irreps chi0..chi(k-1) with chi_a(g^j) = exp(2 pi i a j / k).
    classes_g = tuple(
        ConjClass(f"g{j}", 1, k // gcd(j, k), F(min(j, k - j), k)) for j in range(k)
    )
    irreps_g = tuple(Irrep(f"chi{a}", 1) for a in range(k))
    rows_g = [[exp_turn(F(a * j, k)) for j in range(k)] for a in range(k)]
    chi_v = tuple(1 + 2 * cos_turn(F(j, k)) for j in range(k))
    inv_g = tuple((k - j) % k for j in range(k))
    g = _assemble(
        GroupSpec.cyclic(k), f"Z{k}", k, False, classes_g, irreps_g, rows_g, chi_v, None, inv_g, dps
    )

    n = 2 * k
    # Binary group = Z_{2k}; the generator covers the rotation by one k-th turn.
    classes_h = tuple(
        ConjClass(f"g{j}", 1, n // gcd(j, n), None, j % k) for j in range(n)
    )
    irreps_h = tuple(Irrep(f"chi{a}", 1) for a in range(n))
    rows_h = [[exp_turn(F(a * j, n)) for j in range(n)] for a in range(n)]
    chi_u = tuple(2 * cos_turn(F(j, n)) for j in range(n))
    inv_h = tuple((n - j) % n for j in range(n))
    gh = _assemble(
        GroupSpec.cyclic(k), f"Z{n}", n, True, classes_h, irreps_h, rows_h, None, chi_u, inv_h, dps
    )

    node_irreps = tuple(p + 1 for p in range(n - 1))
    restriction = {p: f"chi{(p + 1) // 2}" for p in range(n - 1) if (p + 1) % 2 == 0}
    return g, gh, node_irreps, restriction


def _dihedral_family(m: int, dps: int):
    F = Fraction
    even = m % 2 == 0
    half = m // 2

    # G = dihedral group of order 2m: rotations r^j about the main axis and m
    # half-turn flips.  Class order: e, r1..r(half or half-1), [r(half) central
    # when m is even], then the flip class(es).
    classes_g: list[ConjClass] = [ConjClass("e", 1, 1, F(0))]
    for j in range(1, half + 1):
        if even and j == half:
            classes_g.append(ConjClass(f"r{j}", 1, 2, F(1, 2)))
        else:
            classes_g.append(ConjClass(f"r{j}", 2, m // gcd(j, m), F(j, m)))
    if even:
        classes_g.append(ConjClass("sv", half, 2, F(1, 2)))
        classes_g.append(ConjClass("se", half, 2, F(1, 2)))
    else:
        classes_g.append(ConjClass("s", m, 2, F(1, 2)))

    irreps_g: list[Irrep] = [Irrep("triv", 1), Irrep("sgn", 1)]
    if even:
        irreps_g += [Irrep("psi1", 1), Irrep("psi2", 1)]
    two_range = range(1, (half - 1 if even else (m - 1) // 2) + 1)
    irreps_g += [Irrep(f"rho{i}", 2) for i in two_range]

    def g_row(label: str) -> list[CharValue]:
        row: list[CharValue] = []
        for cls in classes_g:
            if cls.label == "e":
                row.append(F(2) if label.startswith("rho") else F(1))
            elif cls.label.startswith("r"):
                j = int(cls.label[1:])
                if label == "triv" or label == "sgn":
                    row.append(F(1))
                elif label == "psi1" or label == "psi2":
                    row.append(F((-1) ** j))
                else:
                    i = int(label[3:])
                    row.append(2 * cos_turn(F(i * j, m)))
            else:  # flips
                if label == "triv":
                    row.append(F(1))
                elif label == "sgn":
                    row.append(F(-1))
                elif label == "psi1":
                    row.append(F(1) if cls.label == "sv" else F(-1))
                elif label == "psi2":
                    row.append(F(-1) if cls.label == "sv" else F(1))
                else:
                    row.append(F(0))
        return row

    rows_g = [g_row(r.label) for r in irreps_g]
    chi_v = _chi_v_from_turns(tuple(classes_g))
    inv_g = tuple(range(len(classes_g)))
    g = _assemble(
        GroupSpec.dihedral(m),
        f"D{m}",
        2 * m,
        False,
        classes_g,
        irreps_g,
        rows_g,
        chi_v,
        None,
        inv_g,
        dps,
    )

    # Binary group: order 4m with presentation x^(2m) = e, y^2 = x^m,
    # y x y^-1 = x^-1.  Classes: e, z = x^m, {x^j, x^-j} for j = 1..m-1,
    # and the two y-classes split by the parity of the x-exponent.
    def image_of_rotation(j: int) -> int:
        j = j % m
        jj = min(j, m - j)
        return 0 if jj == 0 else jj  # class index: e=0, r1=1, ...

    classes_h: list[ConjClass] = [
        ConjClass("e", 1, 1, None, 0),
        ConjClass("z", 1, 2, None, 0),
    ]
    classes_h += [
        ConjClass(f"x{j}", 2, 2 * m // gcd(j, 2 * m), None, image_of_rotation(j))
        for j in range(1, m)
    ]
    flip_a = g.class_index("sv" if even else "s")
    flip_b = g.class_index("se" if even else "s")
    classes_h += [
        ConjClass("ya", m, 4, None, flip_a),
        ConjClass("yb", m, 4, None, flip_b),
    ]

    irreps_h = [Irrep("triv", 1), Irrep("sgn", 1), Irrep("psi1", 1), Irrep("psi2", 1)]
    irreps_h += [Irrep(f"rho{i}", 2) for i in range(1, m)]

    plus_i, minus_i = exp_turn(F(1, 4)), exp_turn(F(3, 4))

    def h_row(label: str) -> list[CharValue]:
        row: list[CharValue] = []
        for cls in classes_h:
            if cls.label == "e":
                row.append(F(2) if label.startswith("rho") else F(1))
            elif cls.label == "z":
                if label.startswith("rho"):
                    row.append(F(2 * (-1) ** int(label[3:])))
                elif label in ("triv", "sgn"):
                    row.append(F(1))
                else:
                    row.append(F(1) if even else F(-1))
            elif cls.label.startswith("x"):
                j = int(cls.label[1:])
                if label in ("triv", "sgn"):
                    row.append(F(1))
                elif label in ("psi1", "psi2"):
                    row.append(F((-1) ** j))
                else:
                    i = int(label[3:])
                    row.append(2 * cos_turn(F(i * j, 2 * m)))
            else:  # ya / yb
                ya = cls.label == "ya"
                if label == "triv":
                    row.append(F(1))
                elif label == "sgn":
                    row.append(F(-1))
                elif label == "psi1":
                    if even:
                        row.append(F(1) if ya else F(-1))
                    else:
                        row.append(plus_i if ya else minus_i)
                elif label == "psi2":
                    if even:
                        row.append(F(-1) if ya else F(1))
                    else:
                        row.append(minus_i if ya else plus_i)
                else:
                    row.append(F(0))
        return row

    rows_h = [h_row(r.label) for r in irreps_h]
    chi_u = rows_h[4]  # rho1 is the defining 2-dimensional representation
    inv_h = list(range(len(classes_h)))
    if not even:
        ia, ib = len(classes_h) - 2, len(classes_h) - 1
        inv_h[ia], inv_h[ib] = ib, ia
    gh = _assemble(
        GroupSpec.dihedral(m),
        f"D{m}^",
        4 * m,
        True,
        classes_h,
        irreps_h,
        rows_h,
        None,
        chi_u,
        inv_h,
        dps,
    )

    # Node dictionary for D(m+2): sgn - rho1 - ... - rho(m-1) < (psi1, psi2).
    node_irreps = tuple([1] + [3 + p for p in range(1, m)] + [2, 3])
    restriction = {0: "sgn"}
    for p in range(2, m, 2):
        restriction[p] = f"rho{p // 2}"
    if even:
        restriction[m] = "psi1"
        restriction[m + 1] = "psi2"
    return g, gh, node_irreps, restriction


def _tetrahedral_family(dps: int):
    F = Fraction
    w, wb = exp_turn(F(1, 3)), exp_turn(F(2, 3))
    classes_g = (
        ConjClass("e", 1, 1, F(0)),
        ConjClass("c2", 3, 2, F(1, 2)),
        ConjClass("c3", 4, 3, F(1, 3)),
        ConjClass("c3b", 4, 3, F(1, 3)),
    )
    irreps_g = (Irrep("triv", 1), Irrep("om", 1), Irrep("omb", 1), Irrep("std3", 3))
    rows_g = [
        [F(1), F(1), F(1), F(1)],
        [F(1), F(1), w, wb],
        [F(1), F(1), wb, w],
        [F(3), F(-1), F(0), F(0)],
    ]
    chi_v = rows_g[3]
    g = _assemble(
        GroupSpec.tetrahedral(), "T", 12, False, classes_g, irreps_g, rows_g, chi_v, None,
        (0, 1, 3, 2), dps,
    )

    classes_h = (
        ConjClass("e", 1, 1, None, 0),
        ConjClass("z", 1, 2, None, 0),
        ConjClass("q4", 6, 4, None, 1),
        ConjClass("h6", 4, 6, None, 2),
        ConjClass("h6b", 4, 6, None, 3),
        ConjClass("h3", 4, 3, None, 2),
        ConjClass("h3b", 4, 3, None, 3),
    )
    irreps_h = (
        Irrep("triv", 1), Irrep("om", 1), Irrep("omb", 1), Irrep("std3", 3),
        Irrep("u2", 2), Irrep("u2om", 2), Irrep("u2omb", 2),
    )
    rows_h = [
        [F(1)] * 7,
        [F(1), F(1), F(1), w, wb, w, wb],
        [F(1), F(1), F(1), wb, w, wb, w],
        [F(3), F(3), F(-1), F(0), F(0), F(0), F(0)],
        [F(2), F(-2), F(0), F(1), F(1), F(-1), F(-1)],
        [F(2), F(-2), F(0), w, wb, -as_mpc(w), -as_mpc(wb)],
        [F(2), F(-2), F(0), wb, w, -as_mpc(wb), -as_mpc(w)],
    ]
    gh = _assemble(
        GroupSpec.tetrahedral(), "T^", 24, True, classes_h, irreps_h, rows_h, None,
        rows_h[4], (0, 1, 2, 4, 3, 6, 5), dps,
    )
    # E6 nodes (Bourbaki, 0-based): om - u2om - std3 - u2omb - omb on the
    # chain, u2 on the branch node next to std3.
    node_irreps = (1, 4, 5, 3, 6, 2)
    restriction = {0: "om", 3: "std3", 5: "omb"}
    return g, gh, node_irreps, restriction


def _octahedral_family(dps: int):
    F = Fraction
    classes_g = (
        ConjClass("e", 1, 1, F(0)),
        ConjClass("t2", 6, 2, F(1, 2)),
        ConjClass("d2", 3, 2, F(1, 2)),
        ConjClass("c3", 8, 3, F(1, 3)),
        ConjClass("c4", 6, 4, F(1, 4)),
    )
    irreps_g = (
        Irrep("triv", 1), Irrep("sgn", 1), Irrep("two", 2), Irrep("std", 3), Irrep("stdsgn", 3),
    )
    rows_g = [
        [F(1)] * 5,
        [F(1), F(-1), F(1), F(1), F(-1)],
        [F(2), F(0), F(2), F(-1), F(0)],
        [F(3), F(1), F(-1), F(0), F(-1)],
        [F(3), F(-1), F(-1), F(0), F(1)],
    ]
    chi_v = rows_g[4]
    g = _assemble(
        GroupSpec.octahedral(), "O", 24, False, classes_g, irreps_g, rows_g, chi_v, None,
        (0, 1, 2, 3, 4), dps,
    )

    s2 = mp.sqrt(2)
    classes_h = (
        ConjClass("e", 1, 1, None, 0),
        ConjClass("z", 1, 2, None, 0),
        ConjClass("q4", 6, 4, None, 2),
        ConjClass("e4", 12, 4, None, 1),
        ConjClass("h6", 8, 6, None, 3),
        ConjClass("h3", 8, 3, None, 3),
        ConjClass("o8", 6, 8, None, 4),
        ConjClass("o8b", 6, 8, None, 4),
    )
    irreps_h = (
        Irrep("triv", 1), Irrep("sgn", 1), Irrep("two", 2), Irrep("std", 3),
        Irrep("stdsgn", 3), Irrep("u2", 2), Irrep("u2s", 2), Irrep("spin4", 4),
    )
    rows_h = [
        [F(1)] * 8,
        [F(1), F(1), F(1), F(-1), F(1), F(1), F(-1), F(-1)],
        [F(2), F(2), F(2), F(0), F(-1), F(-1), F(0), F(0)],
        [F(3), F(3), F(-1), F(1), F(0), F(0), F(-1), F(-1)],
        [F(3), F(3), F(-1), F(-1), F(0), F(0), F(1), F(1)],
        [F(2), F(-2), F(0), F(0), F(1), F(-1), s2, -s2],
        [F(2), F(-2), F(0), F(0), F(1), F(-1), -s2, s2],
        [F(4), F(-4), F(0), F(0), F(-1), F(1), F(0), F(0)],
    ]
    gh = _assemble(
        GroupSpec.octahedral(), "O^", 48, True, classes_h, irreps_h, rows_h, None,
        rows_h[5], tuple(range(8)), dps,
    )
    # E7 nodes: u2 - stdsgn - spin4 - std - u2s - sgn on the chain, with the
    # 2-dimensional `two` on the branch node next to spin4.
    node_irreps = (5, 2, 4, 7, 3, 6, 1)
    restriction = {1: "two", 2: "stdsgn", 4: "std", 6: "sgn"}
    return g, gh, node_irreps, restriction


def _icosahedral_family(dps: int):
    F = Fraction
    ph = (1 + mp.sqrt(5)) / 2
    classes_g = (
        ConjClass("e", 1, 1, F(0)),
        ConjClass("d2", 15, 2, F(1, 2)),
        ConjClass("c3", 20, 3, F(1, 3)),
        ConjClass("c5", 12, 5, F(1, 5)),
        ConjClass("c5b", 12, 5, F(2, 5)),
    )
    irreps_g = (
        Irrep("triv", 1), Irrep("three", 3), Irrep("threep", 3), Irrep("four", 4), Irrep("five", 5),
    )
    rows_g = [
        [F(1)] * 5,
        [F(3), F(-1), F(0), ph, 1 - ph],
        [F(3), F(-1), F(0), 1 - ph, ph],
        [F(4), F(0), F(1), F(-1), F(-1)],
        [F(5), F(1), F(-1), F(0), F(0)],
    ]
    chi_v = rows_g[1]
    g = _assemble(
        GroupSpec.icosahedral(), "I", 60, False, classes_g, irreps_g, rows_g, chi_v, None,
        (0, 1, 2, 3, 4), dps,
    )

    classes_h = (
        ConjClass("e", 1, 1, None, 0),
        ConjClass("z", 1, 2, None, 0),
        ConjClass("q4", 30, 4, None, 1),
        ConjClass("h6", 20, 6, None, 2),
        ConjClass("h3", 20, 3, None, 2),
        ConjClass("d10", 12, 10, None, 3),
        ConjClass("d5", 12, 5, None, 4),
        ConjClass("d10b", 12, 10, None, 4),
        ConjClass("d5b", 12, 5, None, 3),
    )
    irreps_h = (
        Irrep("triv", 1), Irrep("three", 3), Irrep("threep", 3), Irrep("four", 4),
        Irrep("five", 5), Irrep("u2", 2), Irrep("u2p", 2), Irrep("spin4", 4), Irrep("six", 6),
    )
    rows_h = [
        [F(1)] * 9,
        [F(3), F(3), F(-1), F(0), F(0), ph, 1 - ph, 1 - ph, ph],
        [F(3), F(3), F(-1), F(0), F(0), 1 - ph, ph, ph, 1 - ph],
        [F(4), F(4), F(0), F(1), F(1), F(-1), F(-1), F(-1), F(-1)],
        [F(5), F(5), F(1), F(-1), F(-1), F(0), F(0), F(0), F(0)],
        [F(2), F(-2), F(0), F(1), F(-1), ph, ph - 1, 1 - ph, -ph],
        [F(2), F(-2), F(0), F(1), F(-1), 1 - ph, -ph, ph, ph - 1],
        [F(4), F(-4), F(0), F(-1), F(1), F(1), F(-1), F(1), F(-1)],
        [F(6), F(-6), F(0), F(0), F(0), F(-1), F(1), F(-1), F(1)],
    ]
    gh = _assemble(
        GroupSpec.icosahedral(), "I^", 120, True, classes_h, irreps_h, rows_h, None,
        rows_h[5], tuple(range(9)), dps,
    )
    # E8 nodes: u2p - four - six - five - spin4 - three - u2 on the chain,
    # threep on the branch node next to six.
    node_irreps = (6, 2, 3, 8, 4, 7, 1, 5)
    restriction = {1: "threep", 2: "four", 4: "five", 6: "three"}
    return g, gh, node_irreps, restriction


def _build_family(spec: GroupSpec, dps: int):
    if spec.kind == "cyclic":
        return _cyclic_family(spec.parameter, dps)
    if spec.kind == "dihedral":
        return _dihedral_family(spec.parameter, dps)
    if spec.kind == "tetrahedral":
        return _tetrahedral_family(dps)
    if spec.kind == "octahedral":
        return _octahedral_family(dps)
    return _icosahedral_family(dps)


# ---------------------------------------------------------------------------
# correspondence construction and validation
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def correspondence(spec: GroupSpec, dps: int = DEFAULT_DPS) -> Correspondence:
    with mp.workdps(dps + _GUARD):
        g, gh, node_irreps, restriction = _build_family(spec, dps)
        ade = root_system_of(spec)
        rank = ade.rank
        if len(node_irreps) != rank or set(node_irreps) != set(range(1, len(gh.irreps))):
            raise InternalConsistencyError(f"{spec}: bad node dictionary")

        # The McKay adjacency, restricted along the node dictionary, must be
        # exactly 2*Id - Cartan; this pins every hand-written table.
        graph = mckay_graph(gh)
        cartan = cartan_matrix(ade)
        for p in range(rank):
            for q in range(rank):
                want = 2 * int(p == q) - cartan[p][q]
                if graph.adjacency[node_irreps[p]][node_irreps[q]] != want:
                    raise InternalConsistencyError(
                        f"{spec}: McKay adjacency does not match the {ade} Cartan matrix"
                    )
        # The affine-kernel identity: adjacency * dims = 2 * dims.
        for i in range(len(graph.dims)):
            if sum(graph.adjacency[i][j] * graph.dims[j] for j in range(len(graph.dims))) \
                    != 2 * graph.dims[i]:
                raise InternalConsistencyError(f"{spec}: affine marks identity fails")

        binary_nodes = frozenset(
            p for p in range(rank) if not pulls_back(gh, gh.irreps[node_irreps[p]].label)
        )
        if set(restriction) != set(range(rank)) - binary_nodes:
            raise InternalConsistencyError(f"{spec}: restriction map keys do not match")

        slots = g.nontrivial_irreps()
        slot_labels = tuple(g.irreps[i].label for i in slots)
        if sorted(restriction.values()) != sorted(slot_labels):
            raise InternalConsistencyError(f"{spec}: restriction is not onto Irr*(G)")
        node_slot: list[int | None] = [None] * rank
        slot_node = [-1] * len(slots)
        for p, lbl in restriction.items():
            s = slot_labels.index(lbl)
            node_slot[p] = s
            slot_node[s] = p
            # the node's character must restrict to the named G-irrep
            hat_row = gh.table[node_irreps[p]]
            g_row = g.table[g.irrep_index(lbl)]
            for col, cls in enumerate(gh.classes):
                diff = as_mpc(hat_row[col]) - as_mpc(g_row[cls.image_class])
                if abs(diff) > RESIDUAL_TOL:
                    raise InternalConsistencyError(
                        f"{spec}: node {p} does not restrict to {lbl}"
                    )

        return Correspondence(
            spec=spec,
            ade=ade,
            group=g,
            binary_group=gh,
            node_irreps=node_irreps,
            binary_nodes=binary_nodes,
            slots=slots,
            slot_labels=slot_labels,
            node_slot=tuple(node_slot),
            slot_node=tuple(slot_node),
        )


def build_group(spec: GroupSpec, dps: int = DEFAULT_DPS) -> GroupModel:
    """The rotation group G with classes, character table and chi_V."""
    return correspondence(spec, dps).group


def build_binary_group(spec: GroupSpec, dps: int = DEFAULT_DPS) -> GroupModel:
    """The binary cover with classes, character table, chi_U and z."""
    return correspondence(spec, dps).binary_group


def binary_simple_roots(spec: GroupSpec, dps: int = DEFAULT_DPS) -> tuple[int, ...]:
    """Nodes whose irreps do not pull back from the rotation group."""
    return tuple(sorted(correspondence(spec, dps).binary_nodes))
