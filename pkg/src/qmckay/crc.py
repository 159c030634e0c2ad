"""The orbifold genus-zero potential and its match with the resolution.

The quotient side of the correspondence packages its genus-zero data into a
potential in one variable per nontrivial conjugacy class,

    F(x) = 1/2 * sum over positive roots of h(pi + sum_rho alpha^rho X_rho),

where X_rho is affine-linear in x with constant 2*pi*dim(rho)/|G| and
coefficients L_rho(g) = (size(g)/|G|) * sqrt(3 - chi_V(g)) * chi_rho(g),
and h is determined (up to irrelevant low-order terms) by
h'''(s) = 1/2 * tan(-s/2).  Everything here works at configurable decimal
precision: square roots and the golden-ratio character values leave the
rationals, so coefficients are high-precision reals with an exact rational
reconstruction offered separately (`rational_guess`).

Structure of the computation:

* All derivatives of h, and of tan, are polynomials in T = tan of the base
  point; the polynomials have exact rational coefficients and are built
  once by recursion, so a degree-N Taylor expansion costs one tan per root.
* Roots whose restricted coefficient vector vanishes have constant
  arguments and are skipped; for every other root the base point is a
  rational angle whose distance from the tan pole is decided by an exact
  integer test before any floating evaluation.
* Complex character values (cyclic groups) make individual contributions
  complex; the assembled coefficients must be real, which is asserted
  against 10^(-dps/2) rather than symmetrized away.

The resolution route (`resolution_third_partials`) evaluates the same third
partials from the other side of the correspondence: the classical cubic
intersection form plus one geometric series per root, glued by the change
of variables y = i*L*x, q_rho = exp(2*pi*i*dim(rho)/|G|).  The agreement of
the two routes (`crc_consistency`) is the numeric content of the
genus-zero crepant resolution statement for these groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

import mpmath as mp

from .errors import ConfigurationError, PoleError
from .grouprep import DEFAULT_DPS, GroupSpec, as_mpc, correspondence
from .intersect import classical_potential
from .rootsys import root_system

_GUARD = 10


# ---------------------------------------------------------------------------
# polynomial towers for derivatives of h and tan
# ---------------------------------------------------------------------------


def _poly_derivative(p: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    return tuple(p[i] * i for i in range(1, len(p)))


def _poly_mul(a: tuple[Fraction, ...], b: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return tuple(out)


@lru_cache(maxsize=None)
def _h_poly(n: int) -> tuple[Fraction, ...]:
    """h^(n) as a polynomial in T = tan(-s/2), for n >= 3.

    h''' = T/2, and d/ds acts as multiplication of the T-derivative by
    dT/ds = -(1 + T^2)/2.
    """
    if n < 3:
        raise ConfigurationError("derivatives of order below three are not defined")
    if n == 3:
        return (Fraction(0), Fraction(1, 2))
    prev = _h_poly(n - 1)
    chain = (Fraction(-1, 2), Fraction(0), Fraction(-1, 2))
    return _poly_mul(_poly_derivative(prev), chain)


@lru_cache(maxsize=None)
def _tan_poly(n: int) -> tuple[Fraction, ...]:
    """The n-th derivative of tan as a polynomial in T = tan itself."""
    if n == 0:
        return (Fraction(0), Fraction(1))
    prev = _tan_poly(n - 1)
    chain = (Fraction(1), Fraction(0), Fraction(1))
    return _poly_mul(_poly_derivative(prev), chain)


def _poly_eval(p: tuple[Fraction, ...], t):
    acc = mp.mpf(0) if not isinstance(t, mp.mpc) else mp.mpc(0)
    for c in reversed(p):
        acc = acc * t + mp.mpf(c.numerator) / c.denominator
    return acc


def h_derivative(n: int, s, dps: int = DEFAULT_DPS):
    """The n-th derivative of h at a real point s, n >= 3.

    Refuses points too close to the poles of tan(-s/2) instead of returning
    a huge meaningless value.
    """
    if n < 3:
        raise ConfigurationError("derivatives of order below three are not defined")
    with mp.workdps(dps + _GUARD):
        s = mp.mpf(s)
        if abs(mp.cos(s / 2)) < mp.mpf(10) ** (-(dps - _GUARD)):
            raise PoleError(f"h^({n}) evaluated within pole tolerance of s = {mp.nstr(s, 8)}")
        t = mp.tan(-s / 2)
        return _poly_eval(_h_poly(n), t)


# ---------------------------------------------------------------------------
# linear forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearForm:
    """X_rho = constant + sum over nontrivial classes of coefficient * x."""

    irrep: str
    constant_turn: Fraction  # constant / (2*pi) = dim(rho) / |G|
    coefficients: tuple  # complex values, one per nontrivial class


@dataclass(frozen=True)
class FormSystem:
    spec: GroupSpec
    class_labels: tuple[str, ...]  # nontrivial classes, model order
    forms: tuple[LinearForm, ...]  # one per Irr*(G) slot
    dps: int


def linear_forms(spec: GroupSpec, dps: int = DEFAULT_DPS) -> FormSystem:
    corr = correspondence(spec, dps)
    g = corr.group
    order = g.order
    with mp.workdps(dps + _GUARD):
        forms = []
        for s, label in zip(corr.slots, corr.slot_labels):
            dim = g.irreps[s].dim
            coeffs = []
            for ci in range(1, len(g.classes)):
                weight = 3 - as_mpc(g.chi_v[ci]).real
                if weight < 0:
                    raise ConfigurationError("chi_V exceeds 3 on a nontrivial class")
                coeffs.append(
                    Fraction(g.classes[ci].size, order) * mp.sqrt(weight)
                    * as_mpc(g.table[s][ci])
                )
            forms.append(
                LinearForm(
                    irrep=label,
                    constant_turn=Fraction(dim, order),
                    coefficients=tuple(coeffs),
                )
            )
    return FormSystem(
        spec=spec,
        class_labels=tuple(c.label for c in g.classes[1:]),
        forms=tuple(forms),
        dps=dps,
    )


@dataclass(frozen=True)
class _RootForm:
    """One positive root's affine form: base turn and x-coefficients.

    base_turn is (argument - pi)/(2*pi) at x = 0, an exact rational; the
    argument never meets the tan pole because the exact test
    denominator-divides check below excludes it.
    """

    dim_sum: int  # sum of alpha^rho * dim(rho), in (0, |G|)
    coefficients: tuple  # complex, per nontrivial class


def _root_forms(spec: GroupSpec, dps: int) -> tuple[FormSystem, tuple[_RootForm, ...]]:
    corr = correspondence(spec, dps)
    system = linear_forms(spec, dps)
    order = corr.group.order
    dims = [corr.group.irreps[s].dim for s in corr.slots]
    out = []
    with mp.workdps(dps + _GUARD):
        for alpha in root_system(corr.ade).positive_roots:
            restricted = [alpha[node] for node in corr.slot_node]
            if all(r == 0 for r in restricted):
                continue  # constant argument, no contribution to any coefficient
            dim_sum = sum(r * d for r, d in zip(restricted, dims))
            if dim_sum % order == 0:
                raise PoleError(
                    f"root {tuple(alpha)} of {spec} sits on a tan pole "
                    f"(restricted dimension sum {dim_sum} divisible by {order})"
                )
            n_cls = len(system.class_labels)
            coeffs = []
            for ci in range(n_cls):
                acc = mp.mpc(0)
                for r, form in zip(restricted, system.forms):
                    if r:
                        acc += r * form.coefficients[ci]
                coeffs.append(acc)
            out.append(_RootForm(dim_sum=dim_sum, coefficients=tuple(coeffs)))
    return system, tuple(out)


# ---------------------------------------------------------------------------
# the potential
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PotentialSeries:
    """Taylor coefficients of the quotient-side potential, degrees 3..N.

    Keys are exponent tuples over ``class_labels``; values are real mpf.
    """

    spec: GroupSpec
    class_labels: tuple[str, ...]
    degree: int
    coefficients: dict[tuple[int, ...], mp.mpf]
    dps: int

    def coefficient(self, exponents: dict[str, int]) -> mp.mpf:
        key = tuple(exponents.get(lbl, 0) for lbl in self.class_labels)
        return self.coefficients.get(key, mp.mpf(0))

    def jsonable(self) -> list:
        out = []
        for key in sorted(self.coefficients, key=lambda k: (sum(k), k)):
            value = self.coefficients[key]
            guess = rational_guess(value, dps=self.dps)
            out.append({
                "degree": sum(key),
                "exponents": {
                    lbl: e for lbl, e in zip(self.class_labels, key) if e
                },
                "coefficient": mp.nstr(value, 30),
                "rational_guess": str(guess) if guess is not None else None,
            })
        return out


def _exponent_vectors(n_vars: int, total: int):
    """All nonnegative integer vectors of the given length and sum."""
    if n_vars == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _exponent_vectors(n_vars - 1, total - head):
            yield (head,) + rest


def orbifold_potential(spec: GroupSpec, degree: int, dps: int = DEFAULT_DPS) -> PotentialSeries:
    """Taylor coefficients of F(x) up to the given total degree (>= 3)."""
    if degree < 3:
        raise ConfigurationError("the potential starts at degree three")
    system, roots = _root_forms(spec, dps)
    order = correspondence(spec, dps).group.order
    n_vars = len(system.class_labels)
    with mp.workdps(dps + _GUARD):
        factorials = [mp.mpf(1)]
        for i in range(1, degree + 1):
            factorials.append(factorials[-1] * i)
        acc: dict[tuple[int, ...], mp.mpc] = {}
        for root in roots:
            # base point s0 = pi + 2*pi*dim_sum/order; T = tan(-s0/2)
            t = mp.cot(mp.pi * mp.mpf(root.dim_sum) / order)
            h_values = {n: _poly_eval(_h_poly(n), t) for n in range(3, degree + 1)}
            for n in range(3, degree + 1):
                hn = h_values[n]
                for key in _exponent_vectors(n_vars, n):
                    term = hn / 2
                    for e, l in zip(key, root.coefficients):
                        if e:
                            term = term * l ** e / factorials[e]
                    if term != 0:
                        acc[key] = acc.get(key, mp.mpc(0)) + term
        tol = mp.mpf(10) ** (-(dps // 2))
        coeffs: dict[tuple[int, ...], mp.mpf] = {}
        for key, value in acc.items():
            if abs(value.imag) > tol:
                raise ConfigurationError(
                    f"potential coefficient at {key} has imaginary part {value.imag}"
                )
            if abs(value.real) > tol:
                coeffs[key] = value.real
    return PotentialSeries(
        spec=spec,
        class_labels=system.class_labels,
        degree=degree,
        coefficients=coeffs,
        dps=dps,
    )


def taylor_third_partial(potential: PotentialSeries, k, k2, k3) -> mp.mpf:
    """Third partial at 0 from Taylor data: coefficient times exponent factorials."""
    labels = potential.class_labels
    idx = [_class_index(labels, k) for k in (k, k2, k3)]
    key = [0] * len(labels)
    for i in idx:
        key[i] += 1
    coeff = potential.coefficients.get(tuple(key), mp.mpf(0))
    factor = 1
    for e in key:
        for j in range(2, e + 1):
            factor *= j
    return coeff * factor


def _class_index(labels: tuple[str, ...], k) -> int:
    if isinstance(k, str):
        if k not in labels:
            raise ConfigurationError(f"unknown conjugacy class {k!r}")
        return labels.index(k)
    k = int(k)
    if not 0 <= k < len(labels):
        raise ConfigurationError(f"class index {k} out of range")
    return k


def third_partial(spec: GroupSpec, k, k2, k3, x=None, dps: int = DEFAULT_DPS):
    """Third partial of the potential at the point x by the closed formula

        -(1/4) * sum over roots of l_k l_k' l_k'' * tan(theta/2 + pi/2),

    where theta is the root's form evaluated at x and l its x-gradient.
    x maps class labels to real values; omitted entries are zero.
    """
    system, roots = _root_forms(spec, dps)
    order = correspondence(spec, dps).group.order
    labels = system.class_labels
    idx = [_class_index(labels, kk) for kk in (k, k2, k3)]
    x = dict(x or {})
    unknown = set(x) - set(labels)
    if unknown:
        raise ConfigurationError(f"unknown conjugacy classes {sorted(unknown)}")
    with mp.workdps(dps + _GUARD):
        xvec = [mp.mpf(x.get(lbl, 0)) for lbl in labels]
        total = mp.mpc(0)
        for root in roots:
            theta = 2 * mp.pi * mp.mpf(root.dim_sum) / order
            for xv, l in zip(xvec, root.coefficients):
                if xv:
                    theta = theta + xv * l
            arg = theta / 2 + mp.pi / 2
            if abs(mp.cos(arg)) < mp.mpf(10) ** (-(dps - _GUARD)):
                raise PoleError(f"third partial hit a tan pole at x = {x}")
            weight = mp.mpc(1)
            for i in idx:
                weight = weight * root.coefficients[i]
            total += weight * mp.tan(arg)
        total = -total / 4
        tol = mp.mpf(10) ** (-(dps // 2))
        if abs(total.imag) > tol:
            raise ConfigurationError(f"third partial came out non-real: {total}")
        return total.real


def b_series(spec: GroupSpec, n_terms: int, dps: int = DEFAULT_DPS) -> tuple:
    """Taylor coefficients in u of the third partial F_(s,s,r1)(x_s=0, x_r1=-u).

    Only defined for dihedral(3), whose two nontrivial classes are the
    flip class s and the rotation class r1.
    """
    if spec != GroupSpec.dihedral(3):
        raise ConfigurationError("the b-series is specific to dihedral(3)")
    if n_terms < 1:
        raise ConfigurationError("need at least one coefficient")
    system, roots = _root_forms(spec, dps)
    order = 6
    i_s = system.class_labels.index("s")
    i_r = system.class_labels.index("r1")
    with mp.workdps(dps + _GUARD):
        coeffs = [mp.mpf(0)] * n_terms
        for root in roots:
            l_s = root.coefficients[i_s]
            l_r = root.coefficients[i_r]
            # argument theta/2 + pi/2 at x_r1 = -u: A + B*u
            a = mp.pi * mp.mpf(root.dim_sum) / order + mp.pi / 2
            b = -l_r / 2
            t = mp.tan(a)
            weight = -l_s * l_s * l_r / 4
            fact = mp.mpf(1)
            for j in range(n_terms):
                if j:
                    fact *= j
                coeffs[j] += (weight * _poly_eval(_tan_poly(j), t) * b ** j / fact).real
        return tuple(coeffs)


# ---------------------------------------------------------------------------
# change of variables and the resolution route
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChangeOfVariables:
    """Substitution tying the two potentials together.

    y[rho] = i * sum over classes of L_rho(g) x_g, and each quantum
    parameter specializes to the root of unity exp(2*pi*i*dim(rho)/|G|),
    stored here by its exact turn dim(rho)/|G|.
    """

    spec: GroupSpec
    class_labels: tuple[str, ...]
    irrep_labels: tuple[str, ...]
    y_coefficients: tuple[tuple, ...]  # rows: irreps, columns: classes (i*L)
    q_turns: tuple[Fraction, ...]
    dps: int


def change_of_variables(spec: GroupSpec, dps: int = DEFAULT_DPS) -> ChangeOfVariables:
    system = linear_forms(spec, dps)
    with mp.workdps(dps + _GUARD):
        rows = tuple(
            tuple(mp.mpc(0, 1) * c for c in form.coefficients) for form in system.forms
        )
    return ChangeOfVariables(
        spec=spec,
        class_labels=system.class_labels,
        irrep_labels=tuple(f.irrep for f in system.forms),
        y_coefficients=rows,
        q_turns=tuple(f.constant_turn for f in system.forms),
        dps=dps,
    )


def resolution_third_partials(spec: GroupSpec, dps: int = DEFAULT_DPS) -> dict:
    """Third partials at x = 0 computed from the resolution side:

        i^3 * (classical cubic contracted with L three times)
      + sum over roots of (i^3/2) l_k l_k' l_k'' w/(1-w),  w = exp(i*theta0).

    Returns a dict over nondecreasing index triples with complex values
    (their imaginary parts vanishing is part of the statement under test).
    """
    system, roots = _root_forms(spec, dps)
    cubic = classical_potential(spec, dps)
    order = correspondence(spec, dps).group.order
    n = len(system.class_labels)
    r = len(system.forms)
    with mp.workdps(dps + _GUARD):
        i3 = mp.mpc(0, -1)  # i^3
        out = {}
        for triple in combinations_with_replacement(range(n), 3):
            total = mp.mpc(0)
            for a in range(r):
                la = system.forms[a].coefficients[triple[0]]
                for b in range(r):
                    lb = system.forms[b].coefficients[triple[1]]
                    for c in range(r):
                        lc = system.forms[c].coefficients[triple[2]]
                        w = cubic.cubic[a][b][c]
                        if w:
                            total += mp.mpf(w.numerator) / w.denominator * la * lb * lc
            total = i3 * total
            for root in roots:
                w = mp.expjpi(2 * mp.mpf(root.dim_sum) / order)
                geom = w / (1 - w)
                prod = mp.mpc(1)
                for i in triple:
                    prod = prod * root.coefficients[i]
                total += i3 / 2 * prod * geom
            out[triple] = total
    return out


def crc_consistency(spec: GroupSpec, dps: int = DEFAULT_DPS) -> mp.mpf:
    """Max absolute difference, over all index triples, between the
    resolution-route third partials and the quotient-side closed formula
    at x = 0.  Small values are the numeric genus-zero correspondence."""
    res = resolution_third_partials(spec, dps)
    with mp.workdps(dps + _GUARD):
        worst = mp.mpf(0)
        for triple, value in res.items():
            direct = third_partial(spec, *triple, dps=dps)
            worst = max(worst, abs(value - direct))
        return worst


def rational_guess(value, max_denominator: int = 10 ** 6, dps: int = DEFAULT_DPS):
    """A small rational within 1e-20 of the value, or None.

    The candidate comes from a float continued-fraction pass; acceptance is
    decided at full precision.
    """
    with mp.workdps(dps + _GUARD):
        value = mp.mpf(value)
        candidate = Fraction(float(value)).limit_denominator(max_denominator)
        delta = abs(value - mp.mpf(candidate.numerator) / candidate.denominator)
        if delta < mp.mpf("1e-20"):
            return candidate
        return None
