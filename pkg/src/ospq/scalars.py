"""Exact scalar domain: the fraction field of Laurent polynomials in s.

The formal variable satisfies s = q^{1/4}, so q = s^4 and q^{1/2} = s^2.
Coefficients live in Q(w) with w = exp(i*pi/4); this closes over every
phase the algebra produces (i, (-1)^..., e^{+-i*pi/4}).  Square roots of
super-bracket products are carried formally by Surd values.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

from .cyclo import Cyclo, CYC_ONE, omega_pow
from . import laurent as lp


class PoleAtSample(ArithmeticError):
    """Denominator vanishes at the sampled q value."""


class IncompatibleRadicals(ValueError):
    """Surd addition with mismatched radicands."""


class ExactScalar:
    """Element of Q(w)(s), kept in canonical reduced form."""

    __slots__ = ("num", "den", "_key")

    def __init__(self, num, den=None):
        if den is None:
            den = dict(lp.ONE_POLY)
        if not den:
            raise ZeroDivisionError("zero denominator")
        num, den = _canonical(num, den)
        self.num = num
        self.den = den
        self._key = None

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_rational(r) -> "ExactScalar":
        return ExactScalar(lp.lp_const(Cyclo(Fraction(r))))

    @staticmethod
    def from_cyclo(c: Cyclo) -> "ExactScalar":
        return ExactScalar(lp.lp_const(c))

    @staticmethod
    def s_power(e: int) -> "ExactScalar":
        return ExactScalar(lp.lp_mono(CYC_ONE, e))

    @staticmethod
    def q_power(e) -> "ExactScalar":
        """q^e for a quarter-integer exponent e (int or Fraction)."""
        se = Fraction(e) * 4
        if se.denominator != 1:
            raise ValueError(f"q^{e} has no integer s-exponent")
        return ExactScalar.s_power(se.numerator)

    @staticmethod
    def coerce(x) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return ExactScalar.from_rational(x)
        if isinstance(x, Cyclo):
            return ExactScalar.from_cyclo(x)
        raise TypeError(f"cannot coerce {x!r} to ExactScalar")

    # -- ring/field structure -------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def key(self):
        if self._key is None:
            self._key = (
                tuple(sorted((e, c.c) for e, c in self.num.items())),
                tuple(sorted((e, c.c) for e, c in self.den.items())),
            )
        return self._key

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            other = ExactScalar.coerce(other)
        return isinstance(other, ExactScalar) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __add__(self, other):
        other = ExactScalar.coerce(other)
        num = lp.lp_add(lp.lp_mul(self.num, other.den), lp.lp_mul(other.num, self.den))
        return ExactScalar(num, lp.lp_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(lp.lp_neg(self.num), self.den)

    def __sub__(self, other):
        return self + (-ExactScalar.coerce(other))

    def __rsub__(self, other):
        return ExactScalar.coerce(other) - self

    def __mul__(self, other):
        other = ExactScalar.coerce(other)
        return ExactScalar(
            lp.lp_mul(self.num, other.num), lp.lp_mul(self.den, other.den)
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = ExactScalar.coerce(other)
        if not other.num:
            raise ZeroDivisionError("division by zero scalar")
        return ExactScalar(
            lp.lp_mul(self.num, other.den), lp.lp_mul(self.den, other.num)
        )

    def __rtruediv__(self, other):
        return ExactScalar.coerce(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return (ONE / self) ** (-e)
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def inverse(self) -> "ExactScalar":
        return ONE / self

    def conjugate(self) -> "ExactScalar":
        """Complex conjugation at real q: w -> w^{-1}, s fixed."""
        num = {e: c.conjugate() for e, c in self.num.items()}
        den = {e: c.conjugate() for e, c in self.den.items()}
        return ExactScalar(num, den)

    def eval_at(self, q_value: float) -> complex:
        if not 0 < q_value < 1:
            raise ValueError("numeric backend requires q in (0,1)")
        s = q_value ** 0.25
        d = lp.lp_eval(self.den, s)
        if abs(d) < 1e-300:
            raise PoleAtSample(f"denominator vanishes at q={q_value}")
        return lp.lp_eval(self.num, s) / d

    def __repr__(self):
        return f"ExactScalar({format_scalar(self)!r})"


def _canonical(num, den):
    if not num:
        return {}, dict(lp.ONE_POLY)
    g = lp.lp_gcd(num, den)
    if len(g) > 1 or (g and 0 in g and g[0] != CYC_ONE):
        num = lp.lp_divexact(num, g)
        den = lp.lp_divexact(den, g)
    # denominator: lowest term gets coefficient 1, exponent 0
    e0 = lp.lp_min_exp(den)
    c0inv = den[e0].inverse()
    den = lp.lp_scale(lp.lp_shift(den, -e0), c0inv)
    num = lp.lp_scale(lp.lp_shift(num, -e0), c0inv)
    return num, den


ZERO = ExactScalar({})
ONE = ExactScalar(dict(lp.ONE_POLY))


def omega_scalar(k: int) -> ExactScalar:
    """w^k as a scalar."""
    return ExactScalar.from_cyclo(omega_pow(k))


def minus_one_pow(k) -> ExactScalar:
    """(-1)^k for integer-valued k."""
    k = Fraction(k)
    if k.denominator != 1:
        raise ValueError(f"(-1)^{k}: non-integer exponent")
    return ONE if k.numerator % 2 == 0 else -ONE


# -- super-brackets ------------------------------------------------------


@lru_cache(maxsize=None)
def kbracket(n: int) -> ExactScalar:
    """[n] = (q^{-n/2} - (-1)^n q^{n/2}) / (q^{-1/2} + q^{1/2})."""
    sgn = -1 if n % 2 else 1
    num = ExactScalar.s_power(-2 * n) - sgn * ExactScalar.s_power(2 * n)
    den = ExactScalar.s_power(-2) + ExactScalar.s_power(2)
    return num / den


@lru_cache(maxsize=None)
def kfactorial(n: int) -> ExactScalar:
    """[n]! = [n][n-1]...[1]; empty product is 1."""
    if n < 0:
        raise ValueError("negative bracket factorial")
    if n == 0:
        return ONE
    return kfactorial(n - 1) * kbracket(n)


@lru_cache(maxsize=None)
def sq_bracket(n: int) -> ExactScalar:
    """The deformed-exponential denominator symbol (1 - (-1)^n q^n)/(1+q)."""
    if n < 0:
        raise ValueError("negative argument")
    sgn = -1 if n % 2 else 1
    return (ONE - sgn * ExactScalar.s_power(4 * n)) / (ONE + ExactScalar.s_power(4))


@lru_cache(maxsize=None)
def sq_factorial(n: int) -> ExactScalar:
    if n < 0:
        raise ValueError("negative argument")
    if n == 0:
        return ONE
    return sq_factorial(n - 1) * sq_bracket(n)


@lru_cache(maxsize=None)
def sqi_bracket(n: int) -> ExactScalar:
    """Same symbol with q -> q^{-1}."""
    if n < 0:
        raise ValueError("negative argument")
    sgn = -1 if n % 2 else 1
    return (ONE - sgn * ExactScalar.s_power(-4 * n)) / (
        ONE + ExactScalar.s_power(-4)
    )


@lru_cache(maxsize=None)
def sqi_factorial(n: int) -> ExactScalar:
    if n < 0:
        raise ValueError("negative argument")
    if n == 0:
        return ONE
    return sqi_factorial(n - 1) * sqi_bracket(n)


@lru_cache(maxsize=None)
def angle_bracket(n: int) -> ExactScalar:
    """<n>, the super-bracket with q -> q^{-1}: (q^{n/2} - (-1)^n q^{-n/2}) / (q^{1/2} + q^{-1/2})."""
    sgn = -1 if n % 2 else 1
    num = ExactScalar.s_power(2 * n) - sgn * ExactScalar.s_power(-2 * n)
    den = ExactScalar.s_power(2) + ExactScalar.s_power(-2)
    return num / den


@lru_cache(maxsize=None)
def angle_factorial(n: int) -> ExactScalar:
    if n < 0:
        raise ValueError("negative argument")
    if n == 0:
        return ONE
    return angle_factorial(n - 1) * angle_bracket(n)


def kbracket_numeric(n: int, q: float) -> float:
    sgn = -1.0 if n % 2 else 1.0
    return (q ** (-n / 2) - sgn * q ** (n / 2)) / (q ** -0.5 + q ** 0.5)


# -- Surds ---------------------------------------------------------------


class Surd:
    """coeff * sqrt(prod of super-brackets), the CGC coefficient domain."""

    __slots__ = ("coeff", "rad")

    def __init__(self, coeff: ExactScalar, rad=frozenset()):
        coeff = ExactScalar.coerce(coeff)
        rad = frozenset(n for n in rad if n > 1)
        if not coeff:
            rad = frozenset()
        self.coeff = coeff
        self.rad = rad

    @staticmethod
    def coerce(x) -> "Surd":
        if isinstance(x, Surd):
            return x
        return Surd(ExactScalar.coerce(x))

    def __bool__(self):
        return bool(self.coeff)

    def __eq__(self, other):
        other = Surd.coerce(other)
        return self.coeff == other.coeff and self.rad == other.rad

    def __hash__(self):
        return hash((self.coeff, self.rad))

    def __mul__(self, other):
        other = Surd.coerce(other)
        shared = self.rad & other.rad
        coeff = self.coeff * other.coeff
        for n in shared:
            coeff = coeff * kbracket(n)
        return Surd(coeff, self.rad ^ other.rad)

    __rmul__ = __mul__

    def __neg__(self):
        return Surd(-self.coeff, self.rad)

    def __add__(self, other):
        other = Surd.coerce(other)
        if not self:
            return other
        if not other:
            return self
        if self.rad != other.rad:
            raise IncompatibleRadicals(
                f"cannot add surds with radicands {set(self.rad)} and {set(other.rad)}"
            )
        return Surd(self.coeff + other.coeff, self.rad)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-Surd.coerce(other))

    def __truediv__(self, other):
        other = Surd.coerce(other)
        sq = other * other  # empty radicand
        return self * Surd(other.coeff / sq.coeff, other.rad)

    def conjugate(self) -> "Surd":
        return Surd(self.coeff.conjugate(), self.rad)

    def as_scalar(self) -> ExactScalar:
        if self.rad:
            raise ValueError("surd with nontrivial radicand is not a scalar")
        return self.coeff

    def squared(self) -> ExactScalar:
        return (self * self).coeff

    def eval_at(self, q_value: float) -> complex:
        v = self.coeff.eval_at(q_value)
        r = 1.0
        for n in self.rad:
            b = kbracket_numeric(n, q_value)
            if b <= 0:
                raise ValueError(f"bracket [{n}] not positive at q={q_value}")
            r *= b
        return v * math.sqrt(r)

    def __repr__(self):
        if not self.rad:
            return f"Surd({format_scalar(self.coeff)!r})"
        return f"Surd({format_scalar(self.coeff)!r}, sqrt{sorted(self.rad)})"


SURD_ZERO = Surd(ZERO)
SURD_ONE = Surd(ONE)


def surd_mul(u: Surd, v: Surd) -> Surd:
    return u * v


def surd_add(u: Surd, v: Surd) -> Surd:
    return u + v


def sqrt_bracket_ratio(nums, dens, coeff=ONE) -> Surd:
    """coeff * sqrt(prod [n] / prod [d]) as a canonical Surd.

    Inverse brackets never enter the radicand: sqrt(N/D) = sqrt(N*D)/D.
    """
    exps: dict = {}
    for n in nums:
        if n == 0:
            return SURD_ZERO
        exps[n] = exps.get(n, 0) + 1
    den_scalar = ONE
    for d in dens:
        if d == 0:
            raise ZeroDivisionError("bracket [0] in denominator")
        den_scalar = den_scalar * kbracket(d)
        exps[d] = exps.get(d, 0) + 1
    rad = set()
    c = coeff / den_scalar
    for n, e in exps.items():
        if e // 2:
            c = c * kbracket(n) ** (e // 2)
        if e % 2:
            rad.add(n)
    return Surd(c, frozenset(rad))


def sqrt_factorial_ratio(nums, dens, coeff=ONE) -> Surd:
    """coeff * sqrt(prod [n]! / prod [d]!) via bracket expansion."""
    ns, ds = [], []
    for n in nums:
        if n < 0:
            raise ValueError("negative factorial argument")
        ns.extend(range(2, n + 1))
    for d in dens:
        if d < 0:
            raise ValueError("negative factorial argument")
        ds.extend(range(2, d + 1))
    return sqrt_bracket_ratio(ns, ds, coeff)


def eval_numeric(v, q_value: float) -> complex:
    """Evaluate an ExactScalar or Surd at real q in (0,1)."""
    if isinstance(v, Surd):
        return v.eval_at(q_value)
    return ExactScalar.coerce(v).eval_at(q_value)


# -- serialization grammar ----------------------------------------------

_TERM_RE = re.compile(r"^\((?P<cyc>.*)\)\*s\^(?P<exp>-?\d+)$")
_CYC_PART_RE = re.compile(r"^\((?P<rat>-?\d+/\d+)\)(?:\*w(?:\^(?P<pow>[123]))?)?$")


def _format_poly(p) -> str:
    if not p:
        return "((0/1))*s^0"
    terms = []
    for e in sorted(p):
        terms.append(f"({p[e]})*s^{e}")
    return " + ".join(terms)


def format_scalar(v: ExactScalar) -> str:
    out = _format_poly(v.num)
    if v.den != lp.ONE_POLY:
        out += " / " + _format_poly(v.den)
    return out


def _parse_poly(text: str):
    poly: dict = {}
    for term in text.split(" + "):
        m = _TERM_RE.match(term.strip())
        if not m:
            raise ValueError(f"bad scalar term: {term!r}")
        e = int(m.group("exp"))
        comps = [Fraction(0)] * 4
        for part in m.group("cyc").split("+"):
            pm = _CYC_PART_RE.match(part.strip())
            if not pm:
                raise ValueError(f"bad cyclotomic component: {part!r}")
            power = int(pm.group("pow")) if pm.group("pow") else (
                1 if "*w" in part else 0
            )
            comps[power] += Fraction(pm.group("rat"))
        c = Cyclo(*comps)
        if c:
            poly[e] = c
    return poly


def parse_scalar(text: str) -> ExactScalar:
    if " / " in text:
        num_text, den_text = text.split(" / ")
        return ExactScalar(_parse_poly(num_text), _parse_poly(den_text))
    return ExactScalar(_parse_poly(text))


def format_surd(v: Surd) -> dict:
    return {"coeff": format_scalar(v.coeff), "radicand": sorted(v.rad)}


def parse_surd(obj: dict) -> Surd:
    return Surd(parse_scalar(obj["coeff"]), frozenset(obj.get("radicand", ())))
