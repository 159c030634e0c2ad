"""Curve classes, BPS state counts, and the curve-counting partition function.

The resolution of the quotient threefold carries exceptional curve classes
indexed by Irr*(G), the nontrivial irreps of the rotation group.  Every
positive root of the attached ADE system maps to such a class by restricting
its coefficient vector to the non-binary nodes; the genus-zero BPS count of
a class is half the number of positive roots over it, all higher-genus BPS
counts vanish, and everything else here (partition function, Gromov-Witten
invariants in every genus, the box-counting prediction) is a formal
consequence of that table.

Conventions:

* A curve class is a tuple of nonnegative integers over Irr*(G) in the
  canonical ordering (dimension, then table position); the q-variables
  q1..qr follow the same ordering.
* The partition-function variable Q is formal.  The genus parameter enters
  only through `gw_all_genus`, which converts BPS counts to fixed-genus
  invariants by exact divisor sums against sine-power expansions; no
  analytic substitution relating Q and the genus parameter is ever made.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigurationError
from .grouprep import DEFAULT_DPS, GroupSpec, correspondence
from .rootsys import root_system
from .series import MultiSeries, Truncation, macmahon_factor, sin_power_expansion

CurveClass = tuple[int, ...]


def q_variables(spec: GroupSpec, dps: int = DEFAULT_DPS) -> tuple[str, ...]:
    """q1..qr, one per nontrivial irrep of G, in the canonical order."""
    corr = correspondence(spec, dps)
    return tuple(f"q{i + 1}" for i in range(len(corr.slots)))


def curve_class(spec: GroupSpec, alpha, dps: int = DEFAULT_DPS) -> CurveClass:
    """Image of a positive root: its coefficients at the non-binary nodes."""
    corr = correspondence(spec, dps)
    alpha = tuple(alpha)
    roots = root_system(corr.ade).positive_roots
    if alpha not in roots:
        raise ConfigurationError(f"{alpha} is not a positive root of {corr.ade}")
    return tuple(alpha[node] for node in corr.slot_node)


@dataclass(frozen=True)
class BPSTable:
    """Genus-zero BPS counts n0 per curve class; all higher genera vanish.

    ``fibers[beta]`` counts the positive roots over beta, so every count is
    fibers[beta]/2 and the table covers exactly the image of the root map.
    """

    spec: GroupSpec
    counts: dict[CurveClass, Fraction]
    fibers: dict[CurveClass, int]

    def jsonable(self) -> list:
        out = []
        for beta in sorted(self.counts):
            out.append({
                "class": list(beta),
                "n0": str(self.counts[beta]),
                "fiber_size": self.fibers[beta],
            })
        return out


def bps_table(spec: GroupSpec, dps: int = DEFAULT_DPS) -> BPSTable:
    corr = correspondence(spec, dps)
    roots = root_system(corr.ade).positive_roots
    fibers: dict[CurveClass, int] = {}
    for alpha in roots:
        beta = tuple(alpha[node] for node in corr.slot_node)
        if all(b == 0 for b in beta):
            continue
        fibers[beta] = fibers.get(beta, 0) + 1
    counts = {beta: Fraction(f, 2) for beta, f in fibers.items()}
    return BPSTable(spec=spec, counts=counts, fibers=fibers)


@dataclass(frozen=True)
class PartitionFunction:
    """The curve-class partition function together with its factor list.

    ``factors`` records the product decomposition as (class, weight) pairs:
    the series equals the product over factors of
    prod_m (1 - q^class Q^m)^(m*weight).
    """

    spec: GroupSpec
    series: MultiSeries
    factors: tuple[tuple[CurveClass, Fraction], ...]


def _beta_exponents(variables, beta) -> dict[str, int]:
    return {v: b for v, b in zip(variables, beta)}


def partition_function(
    spec: GroupSpec, truncation: Truncation, dps: int = DEFAULT_DPS
) -> PartitionFunction:
    """Product over BPS classes of the MacMahon factor at weight n0."""
    table = bps_table(spec, dps)
    variables = q_variables(spec, dps) + ("Q",)
    acc = MultiSeries.one(variables, truncation)
    factors = []
    for beta in sorted(table.counts):
        weight = table.counts[beta]
        factors.append((beta, weight))
        acc = acc * macmahon_factor(
            variables, truncation, _beta_exponents(variables, beta), weight
        )
    return PartitionFunction(spec=spec, series=acc, factors=tuple(factors))


def partition_function_by_roots(
    spec: GroupSpec, truncation: Truncation, dps: int = DEFAULT_DPS
) -> PartitionFunction:
    """The same product taken root by root at weight 1/2.

    Exactly equals `partition_function`; kept as an independent route so the
    per-class collapse is testable rather than assumed.
    """
    corr = correspondence(spec, dps)
    roots = root_system(corr.ade).positive_roots
    variables = q_variables(spec, dps) + ("Q",)
    half = Fraction(1, 2)
    acc = MultiSeries.one(variables, truncation)
    factors = []
    for alpha in roots:
        beta = tuple(alpha[node] for node in corr.slot_node)
        if all(b == 0 for b in beta):
            continue
        factors.append((beta, half))
        acc = acc * macmahon_factor(
            variables, truncation, _beta_exponents(variables, beta), half
        )
    return PartitionFunction(spec=spec, series=acc, factors=tuple(factors))


def dt_partition(spec: GroupSpec, truncation: Truncation, dps: int = DEFAULT_DPS) -> MultiSeries:
    """The same series read as the reduced box-counting prediction.

    Q is formal, so the change of variables between the two pictures is the
    identity on coefficients; consumers label the output accordingly.
    """
    return partition_function(spec, truncation, dps).series


def _divisors_of_class(beta: CurveClass):
    from math import gcd
    g = 0
    for b in beta:
        g = gcd(g, b)
    for d in range(1, g + 1):
        if g % d == 0:
            yield d


def gw_genus0(spec: GroupSpec, beta, dps: int = DEFAULT_DPS) -> Fraction:
    """Genus-zero invariant: sum over d | beta of n0(beta/d) / d^3."""
    beta = tuple(int(b) for b in beta)
    if all(b == 0 for b in beta):
        raise ConfigurationError("the zero class has no invariant")
    table = bps_table(spec, dps)
    total = Fraction(0)
    for d in _divisors_of_class(beta):
        base = tuple(b // d for b in beta)
        n0 = table.counts.get(base)
        if n0 is not None:
            total += n0 / d ** 3
    return total


def gw_all_genus(spec: GroupSpec, beta, g: int, dps: int = DEFAULT_DPS) -> Fraction:
    """Genus-g invariant from genus-zero BPS data:

        sum over d | beta of n0(beta/d) * [lam^(2g-2)] (1/d)(2 sin(d lam/2))^-2
    """
    beta = tuple(int(b) for b in beta)
    if all(b == 0 for b in beta):
        raise ConfigurationError("the zero class has no invariant")
    if g < 0:
        raise ConfigurationError("the genus must be nonnegative")
    table = bps_table(spec, dps)
    order = max(2 * g - 2, 0)
    total = Fraction(0)
    for d in _divisors_of_class(beta):
        base = tuple(b // d for b in beta)
        n0 = table.counts.get(base)
        if n0 is None:
            continue
        kernel = sin_power_expansion(d, 0, order)
        total += n0 * kernel.coefficient({"lam": 2 * g - 2})
    return total


def normal_bundle_type(spec: GroupSpec, rho, dps: int = DEFAULT_DPS) -> tuple[int, int]:
    """Normal bundle degrees (-k, k-2) of the curve attached to an irrep.

    k counts the binary nodes adjacent to the irrep's node in the Dynkin
    diagram, which is the number of surface components contracted onto the
    curve.  ``rho`` is an Irr*(G) label or its index in the canonical order.
    """
    corr = correspondence(spec, dps)
    if isinstance(rho, str):
        if rho not in corr.slot_labels:
            raise ConfigurationError(f"{rho!r} is not a nontrivial irrep of {spec}")
        slot = corr.slot_labels.index(rho)
    else:
        slot = int(rho)
        if not 0 <= slot < len(corr.slots):
            raise ConfigurationError(f"irrep index {slot} out of range for {spec}")
    node = corr.slot_node[slot]
    cartan = root_system(corr.ade).cartan
    k = sum(
        1
        for other in corr.binary_nodes
        if cartan[node][other] == -1
    )
    return (-k, k - 2)
