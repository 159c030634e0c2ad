"""Exact truncated multivariate series over the rationals.

Everything downstream (partition functions, curve-counting generating
series, multiple-cover sums) lives in the ring
``Q[[q1..qr, Q]][lam^-2, lam]]`` truncated by total q-degree, Q-degree and
lam-order.  Coefficients are `fractions.Fraction`, so equality of two
pipelines is exact, never a tolerance.

Variable-name convention (internal contract): variables named ``Q`` and
``lam`` play the special roles; every other variable counts toward the
total q-degree.  ``lam`` may carry exponents down to -2 (genus-zero free
energies need a double pole); anything below -2 signals an algebra misuse
and raises instead of truncating silently.

A series also carries ``t_power``, the power of the equivariant weight the
whole series is a multiple of.  It adds under multiplication and must agree
under addition; it exists so localised integrals keep their weight bookkeeping
through series arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ConfigurationError, InternalConsistencyError

LAMBDA_FLOOR = -2


@dataclass(frozen=True)
class Truncation:
    """Degree caps: total degree in the q-variables, degree in Q, order in lam.

    A cap of None leaves that direction unbounded; operations that need a
    cap to terminate (exp, log) refuse to run without one.
    """

    q_total: int | None = None
    big_q: int | None = None
    lam: int | None = None

    def __post_init__(self) -> None:
        for cap in (self.q_total, self.big_q, self.lam):
            if cap is not None and cap < 0:
                raise ConfigurationError("truncation caps must be nonnegative")


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise ConfigurationError(f"series coefficients must be rational, got {type(x).__name__}")


class MultiSeries:
    """A truncated series: mapping from exponent tuples to Fractions.

    Construct through `zero`, `one`, `monomial` or `from_terms`; instances
    are immutable by convention (no mutating API).
    """

    __slots__ = ("variables", "truncation", "t_power", "_terms", "_qidx", "_Qidx", "_lidx")

    def __init__(self, variables, truncation, terms, t_power=0):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ConfigurationError("duplicate series variables")
        self.variables = variables
        self.truncation = truncation
        self.t_power = t_power
        self._qidx = tuple(i for i, v in enumerate(variables) if v not in ("Q", "lam"))
        self._Qidx = variables.index("Q") if "Q" in variables else None
        self._lidx = variables.index("lam") if "lam" in variables else None
        clean: dict[tuple[int, ...], Fraction] = {}
        for key, coeff in terms.items():
            key = tuple(key)
            if len(key) != len(variables):
                raise ConfigurationError("exponent tuple does not match the variables")
            coeff = _as_fraction(coeff)
            if coeff == 0:
                continue
            kept = self._clip(key)
            if kept:
                clean[key] = coeff
        self._terms = clean

    # -- bookkeeping -------------------------------------------------------

    def _grades(self, key) -> tuple[int, int, int]:
        qd = sum(key[i] for i in self._qidx)
        Qd = key[self._Qidx] if self._Qidx is not None else 0
        ld = key[self._lidx] if self._lidx is not None else 0
        return qd, Qd, ld

    def _clip(self, key) -> bool:
        """True when the key survives the truncation caps."""
        qd, Qd, ld = self._grades(key)
        if any(key[i] < 0 for i in self._qidx) or Qd < 0:
            raise InternalConsistencyError("negative exponent in a q or Q variable")
        if ld < LAMBDA_FLOOR:
            raise InternalConsistencyError(f"lambda exponent {ld} fell below {LAMBDA_FLOOR}")
        t = self.truncation
        if t.q_total is not None and qd > t.q_total:
            return False
        if t.big_q is not None and Qd > t.big_q:
            return False
        if t.lam is not None and ld > t.lam:
            return False
        return True

    def _like(self, terms) -> "MultiSeries":
        return MultiSeries(self.variables, self.truncation, terms, self.t_power)

    def _check_compatible(self, other: "MultiSeries") -> None:
        if self.variables != other.variables or self.truncation != other.truncation:
            raise ConfigurationError("series live in different truncated rings")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(variables, truncation, t_power=0) -> "MultiSeries":
        return MultiSeries(variables, truncation, {}, t_power)

    @staticmethod
    def one(variables, truncation, t_power=0) -> "MultiSeries":
        key = (0,) * len(tuple(variables))
        return MultiSeries(variables, truncation, {key: Fraction(1)}, t_power)

    @staticmethod
    def monomial(variables, truncation, exponents: Mapping[str, int], coeff=1, t_power=0):
        variables = tuple(variables)
        unknown = set(exponents) - set(variables)
        if unknown:
            raise ConfigurationError(f"unknown variables {sorted(unknown)}")
        key = tuple(exponents.get(v, 0) for v in variables)
        return MultiSeries(variables, truncation, {key: _as_fraction(coeff)}, t_power)

    @staticmethod
    def from_terms(variables, truncation, terms, t_power=0) -> "MultiSeries":
        return MultiSeries(variables, truncation, dict(terms), t_power)

    # -- inspection --------------------------------------------------------

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exponents: Mapping[str, int]) -> Fraction:
        key = tuple(exponents.get(v, 0) for v in self.variables)
        return self._terms.get(key, Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * len(self.variables), Fraction(0))

    def lambda_slices(self) -> dict[int, "MultiSeries"]:
        """Split by the lam exponent; each slice keeps lam exponent 0."""
        if self._lidx is None:
            raise ConfigurationError("series has no lam variable")
        out: dict[int, dict] = {}
        li = self._lidx
        for key, coeff in self._terms.items():
            flat = key[:li] + (0,) + key[li + 1:]
            out.setdefault(key[li], {})[flat] = coeff
        return {d: self._like(t) for d, t in sorted(out.items())}

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return (
            self.variables == other.variables
            and self.truncation == other.truncation
            and self.t_power == other.t_power
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.variables, self.truncation, self.t_power,
                     frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"MultiSeries({self.format_text()})"

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        self._check_compatible(other)
        if self.t_power != other.t_power:
            raise ConfigurationError(
                f"cannot add series of weight t^{self.t_power} and t^{other.t_power}"
            )
        terms = dict(self._terms)
        for key, coeff in other._terms.items():
            terms[key] = terms.get(key, Fraction(0)) + coeff
        return self._like(terms)

    def __neg__(self) -> "MultiSeries":
        return self._like({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "MultiSeries") -> "MultiSeries":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_compatible(other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for ka, ca in self._terms.items():
            for kb, cb in other._terms.items():
                key = tuple(a + b for a, b in zip(ka, kb))
                if not self._clip(key):
                    continue
                terms[key] = terms.get(key, Fraction(0)) + ca * cb
        return MultiSeries(self.variables, self.truncation, terms,
                           self.t_power + other.t_power)

    __rmul__ = __mul__

    def scale(self, c) -> "MultiSeries":
        c = _as_fraction(c)
        return self._like({k: c * v for k, v in self._terms.items()})

    def with_t_power(self, t_power: int) -> "MultiSeries":
        return MultiSeries(self.variables, self.truncation, self._terms, t_power)

    def __pow__(self, n: int) -> "MultiSeries":
        if not isinstance(n, int) or n < 0:
            raise ConfigurationError("series powers take nonnegative integers")
        acc = MultiSeries.one(self.variables, self.truncation)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base if n > 1 else base
            n >>= 1
        return acc

    # -- transcendental operations ----------------------------------------

    def _nilpotency_bound(self, for_exp: bool) -> int:
        """Largest n with u^n nonzero, from the truncation caps.

        Every key must raise at least one capped grading, and lam exponents
        must be nonnegative so powers cannot dive toward the lam floor.
        """
        t = self.truncation
        caps = []
        for key in self._terms:
            qd, Qd, ld = self._grades(key)
            if ld < 0:
                raise ConfigurationError(
                    "exp/log need nonnegative lam exponents in the argument")
            ok = (
                (t.q_total is not None and qd >= 1)
                or (t.big_q is not None and Qd >= 1)
                or (t.lam is not None and ld >= 1)
            )
            if not ok:
                raise ConfigurationError(
                    "exp/log argument has a term no truncation cap controls")
        for cap in (t.q_total, t.big_q, t.lam):
            if cap is not None:
                caps.append(cap)
        return sum(caps) + 1

    def exp(self) -> "MultiSeries":
        """Exponential; the argument needs zero constant term."""
        if self.constant_term() != 0:
            raise ConfigurationError("exp needs a zero constant term")
        if self.t_power != 0:
            raise ConfigurationError("exp argument must be weightless")
        bound = self._nilpotency_bound(for_exp=True)
        acc = MultiSeries.one(self.variables, self.truncation)
        term = MultiSeries.one(self.variables, self.truncation)
        for n in range(1, bound + 1):
            term = term * self
            if term.is_zero():
                break
            acc = acc + term.scale(Fraction(1, _factorial(n)))
        return acc

    def log(self) -> "MultiSeries":
        """Logarithm; the argument needs constant term one."""
        if self.constant_term() != 1:
            raise ConfigurationError("log needs constant term one")
        if self.t_power != 0:
            raise ConfigurationError("log argument must be weightless")
        u = self - MultiSeries.one(self.variables, self.truncation)
        bound = u._nilpotency_bound(for_exp=False)
        acc = MultiSeries.zero(self.variables, self.truncation)
        term = MultiSeries.one(self.variables, self.truncation)
        for n in range(1, bound + 1):
            term = term * u
            if term.is_zero():
                break
            acc = acc + term.scale(Fraction((-1) ** (n + 1), n))
        return acc

    def pow_rational(self, r: Fraction) -> "MultiSeries":
        """(series)^r for rational r; the base needs constant term one."""
        r = Fraction(r)
        return self.log().scale(r).exp()

    # -- presentation ------------------------------------------------------

    def sorted_terms(self):
        """Terms in graded lexicographic order (total degree, then key)."""
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def terms_jsonable(self) -> list:
        out = []
        for key, coeff in self.sorted_terms():
            exponents = {v: e for v, e in zip(self.variables, key) if e != 0}
            out.append({
                "exponents": exponents,
                "t_power": self.t_power,
                "numerator": str(coeff.numerator),
                "denominator": str(coeff.denominator),
            })
        return out

    def format_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for key, coeff in self.sorted_terms():
            factors = []
            for var, e in zip(self.variables, key):
                if e == 0:
                    continue
                factors.append(var if e == 1 else f"{var}^{e}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(mono)
            elif coeff == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{coeff}*{mono}")
        text = " + ".join(parts).replace("+ -", "- ")
        if self.t_power:
            text = f"({text}) * t^{self.t_power}"
        return text


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


# ---------------------------------------------------------------------------
# library of expansions
# ---------------------------------------------------------------------------


def macmahon_exponent(variables, truncation, beta: Mapping[str, int]) -> MultiSeries:
    """The expansion sum_{m>=1} sum_{j>=1} m * q^(j*beta) * Q^(j*m) / j,
    which is -sum_m m*log(1 - q^beta Q^m).

    exp(-w * this) equals prod_{m>=1} (1 - q^beta Q^m)^(m*w).
    The truncation must cap both the q-total and the Q degree.
    """
    t = truncation
    if t.q_total is None or t.big_q is None:
        raise ConfigurationError("the MacMahon factor needs q and Q caps")
    variables = tuple(variables)
    if "Q" not in variables:
        raise ConfigurationError("the MacMahon factor needs a Q variable")
    beta_key = tuple(beta.get(v, 0) for v in variables)
    beta_total = sum(
        e for v, e in zip(variables, beta_key) if v not in ("Q", "lam")
    )
    if beta_total < 1:
        raise ConfigurationError("beta must have positive degree")
    acc: dict[tuple[int, ...], Fraction] = {}
    qi = variables.index("Q")
    for j in range(1, t.q_total // beta_total + 1):
        for m in range(1, t.big_q // j + 1):
            key = tuple(
                j * b + (j * m if i == qi else 0) for i, b in enumerate(beta_key)
            )
            acc[key] = acc.get(key, Fraction(0)) + Fraction(m, j)
    return MultiSeries(variables, truncation, acc)


def macmahon_factor(variables, truncation, beta, weight) -> MultiSeries:
    """prod_{m>=1} (1 - q^beta Q^m)^(m*weight) as a truncated series.

    One such factor, at weight n0, is the contribution of a genus-zero BPS
    state in the class beta to the partition function.
    """
    w = _as_fraction(weight)
    return macmahon_exponent(variables, truncation, beta).scale(-w).exp()


def sin_power_coefficients(power: int, d: int, order: int) -> dict[int, Fraction]:
    """Taylor coefficients of (2*sin(d*lam/2))^power around lam = 0.

    Returns {lam exponent: coefficient} for exponents up to ``order``.
    Negative powers are fine (the leading exponent is ``power``); exact
    rational arithmetic throughout.
    """
    if d < 1:
        raise ConfigurationError("the cover degree d must be positive")
    if order < power:
        return {}
    # 2*sin(d*lam/2) = lam * u(lam), u(0) = d
    n_terms = (order - power) + 1  # needed coefficients of u^power
    u = [Fraction(0)] * (n_terms + 1)
    sign = 1
    fact = 1
    k = 0
    while 2 * k <= n_terms:
        # coefficient of lam^(2k) in 2*sin(d lam/2)/lam = d^(2k+1)/(2^(2k) (2k+1)!)
        u[2 * k] = Fraction(sign * d ** (2 * k + 1), (2 ** (2 * k)) * fact)
        k += 1
        fact *= (2 * k) * (2 * k + 1)
        sign = -sign
    if power >= 0:
        w = _poly_pow(u, power, n_terms)
    else:
        w = _poly_pow(_poly_inverse(u, n_terms), -power, n_terms)
    out: dict[int, Fraction] = {}
    for i, c in enumerate(w):
        e = power + i
        if c != 0 and e <= order:
            out[e] = c
    return out


def _poly_mul(a, b, n):
    out = [Fraction(0)] * (n + 1)
    for i, ca in enumerate(a):
        if ca == 0 or i > n:
            continue
        for j, cb in enumerate(b):
            if i + j > n:
                break
            out[i + j] += ca * cb
    return out


def _poly_pow(a, p, n):
    out = [Fraction(0)] * (n + 1)
    out[0] = Fraction(1)
    for _ in range(p):
        out = _poly_mul(out, a, n)
    return out


def _poly_inverse(a, n):
    if a[0] == 0:
        raise ConfigurationError("cannot invert a series with zero constant term")
    inv = [Fraction(0)] * (n + 1)
    inv[0] = 1 / a[0]
    for i in range(1, n + 1):
        s = Fraction(0)
        for j in range(1, i + 1):
            if j < len(a):
                s += a[j] * inv[i - j]
        inv[i] = -s / a[0]
    return inv


def sin_power_series(variables, truncation, power: int, d: int) -> MultiSeries:
    """(2*sin(d*lam/2))^power as a MultiSeries in the given ring."""
    t = truncation
    if t.lam is None:
        raise ConfigurationError("sine expansions need a lam cap")
    variables = tuple(variables)
    if "lam" not in variables:
        raise ConfigurationError("sine expansions need a lam variable")
    if power < LAMBDA_FLOOR:
        raise ConfigurationError(f"sine powers below {LAMBDA_FLOOR} leave the ring")
    li = variables.index("lam")
    coeffs = sin_power_coefficients(power, d, t.lam)
    terms = {}
    for e, c in coeffs.items():
        key = [0] * len(variables)
        key[li] = e
        terms[tuple(key)] = c
    return MultiSeries(variables, truncation, terms)


def sin_power_expansion(d: int, g: int, lambda_order: int) -> MultiSeries:
    """(1/d) * (2*sin(d*lam/2))^(2g-2) as an exact lam-Laurent series.

    The degree-d, genus-g multiple-cover kernel: at g = 0 the leading term
    is lam^-2/d^3, at g = 1 the series is the constant 1/d.
    """
    if g < 0:
        raise ConfigurationError("the genus must be nonnegative")
    if lambda_order < 0 or lambda_order % 2:
        raise ConfigurationError("the lambda order must be even and nonnegative")
    tr = Truncation(lam=lambda_order)
    return sin_power_series(("lam",), tr, 2 * g - 2, d).scale(Fraction(1, d))
