"""Terminating basic hypergeometric series at symbolic arguments, plus the
two polynomial families the algebra produces: Q-Hahn and little Q-Jacobi,
both instantiated at Q = -q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import (
    ExactScalar,
    ONE,
    ZERO,
    kfactorial,
    minus_one_pow,
)


class SeriesPole(ArithmeticError):
    """A denominator shifted factorial vanished inside the summation range."""


def Qpow(a) -> ExactScalar:
    """Q^a with Q = -q, for an integer exponent a."""
    a = Fraction(a)
    if a.denominator != 1:
        raise ValueError(f"Q^{a}: non-integer exponent")
    a = a.numerator
    return minus_one_pow(a) * ExactScalar.s_power(4 * a)


Q_SCALAR = Qpow(1)


def shifted_factorial(x: ExactScalar, Q: ExactScalar, k: int) -> ExactScalar:
    """(x;Q)_k = prod_{j=0}^{k-1} (1 - x Q^j); empty product for k = 0."""
    if k < 0:
        raise ValueError("negative shifted-factorial length")
    out = ONE
    xq = ExactScalar.coerce(x)
    Q = ExactScalar.coerce(Q)
    for _ in range(k):
        out = out * (ONE - xq)
        xq = xq * Q
    return out


def bhs_terminating(numerator_params, denominator_params, Q, z, terminate_at: int) -> ExactScalar:
    """Terminating {}_{r+1}phi_r, summed for k = 0..terminate_at.

    The caller certifies that some numerator parameter is Q^{-M} with
    M = terminate_at, so the series breaks off before any denominator
    factor is consumed past a zero.
    """
    Q = ExactScalar.coerce(Q)
    z = ExactScalar.coerce(z)
    a_cur = [ExactScalar.coerce(a) for a in numerator_params]
    b_cur = [ExactScalar.coerce(b) for b in denominator_params]
    total = ONE  # k = 0 term
    term = ONE
    qq = ONE  # running value of Q^k inside (Q;Q)_k increments
    for k in range(1, terminate_at + 1):
        for a in a_cur:
            term = term * (ONE - a)
        for i, b in enumerate(b_cur):
            f = ONE - b
            if not f:
                raise SeriesPole(
                    f"denominator parameter {i} vanishes at k={k}"
                )
            term = term / f
        qq = qq * Q
        f = ONE - qq
        if not f:
            raise SeriesPole(f"(Q;Q)_k vanishes at k={k}")
        term = term / f
        term = term * z
        total = total + term
        a_cur = [a * Q for a in a_cur]
        b_cur = [b * Q for b in b_cur]
    return total


def qhahn(M: int, x: int, alpha: int, beta: int, N: int) -> ExactScalar:
    """Q-Hahn polynomial value at Q = -q, summed for k = 0..M."""
    if not 0 <= M <= N:
        raise ValueError("require 0 <= M <= N")
    return bhs_terminating(
        [Qpow(-M), Qpow(alpha + beta + M + 1), Qpow(-x)],
        [Qpow(alpha + 1), Qpow(-N)],
        Q_SCALAR,
        Q_SCALAR,
        M,
    )


@dataclass(frozen=True)
class ZetaPoly:
    """Polynomial in the formal variable zeta; index = degree."""

    coeffs: tuple

    @staticmethod
    def from_list(cs) -> "ZetaPoly":
        cs = [ExactScalar.coerce(c) for c in cs]
        while cs and not cs[-1]:
            cs.pop()
        return ZetaPoly(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int) -> ExactScalar:
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        return ZERO

    def __eq__(self, other):
        return isinstance(other, ZetaPoly) and self.coeffs == other.coeffs

    def reflected(self) -> "ZetaPoly":
        """The polynomial evaluated at the negated variable."""
        return ZetaPoly.from_list(
            [c if n % 2 == 0 else -c for n, c in enumerate(self.coeffs)]
        )

    def eval_scalar(self, z: ExactScalar) -> ExactScalar:
        out = ZERO
        for c in reversed(self.coeffs):
            out = out * z + c
        return out


def little_qjacobi(m: int, alpha: int, beta: int) -> ZetaPoly:
    """Little Q-Jacobi polynomial p^{(alpha,beta)}_m at Q = -q.

    Degree-n coefficient:
    (Q^{-m};Q)_n (Q^{a+b+m+1};Q)_n / ((Q^{a+1};Q)_n (Q;Q)_n) * Q^n.
    """
    if m < 0:
        raise ValueError("negative degree")
    coeffs = []
    for n in range(m + 1):
        num = shifted_factorial(Qpow(-m), Q_SCALAR, n) * shifted_factorial(
            Qpow(alpha + beta + m + 1), Q_SCALAR, n
        )
        d1 = shifted_factorial(Qpow(alpha + 1), Q_SCALAR, n)
        d2 = shifted_factorial(Q_SCALAR, Q_SCALAR, n)
        if not d1 or not d2:
            raise SeriesPole(f"vanishing denominator at n={n}")
        coeffs.append(num / (d1 * d2) * Qpow(n))
    return ZetaPoly.from_list(coeffs)


@dataclass(frozen=True)
class ShiftedFactorialForm:
    """prefactor * (Q^{base};Q)_k^{+-1}, the shifted-factorial image of a
    bracket-factorial ratio."""

    prefactor: ExactScalar
    base: int
    k: int
    inverted: bool

    def value(self) -> ExactScalar:
        sf = shifted_factorial(Qpow(self.base), Q_SCALAR, self.k)
        if self.inverted:
            return self.prefactor / sf
        return self.prefactor * sf


def factorial_to_shifted(A: int, k: int, direction: str) -> ShiftedFactorialForm:
    """Convert [A]!/[A+-k]! to prefactor times a shifted factorial at Q = -q.

    direction "up":   [A]!/[A+k]! = q^{k(2A+k-1)/4} (1+q)^k / (Q^{A+1};Q)_k
    direction "down": [A]!/[A-k]! = (-1)^{k(2A+3-k)/2} q^{k(2A+3-k)/4}
                                    (Q^{-A};Q)_k / (1+q)^k
    """
    if k < 0 or A < 0:
        raise ValueError("arguments must be nonnegative")
    one_plus_q = ONE + ExactScalar.s_power(4)
    if direction == "up":
        pre = ExactScalar.q_power(Fraction(k * (2 * A + k - 1), 4)) * one_plus_q ** k
        return ShiftedFactorialForm(pre, A + 1, k, inverted=True)
    if direction == "down":
        if A - k < 0:
            raise ValueError("bracket argument would go negative")
        e = Fraction(k * (2 * A + 3 - k), 2)
        pre = (
            minus_one_pow(e)
            * ExactScalar.q_power(Fraction(k * (2 * A + 3 - k), 4))
            / one_plus_q ** k
        )
        return ShiftedFactorialForm(pre, -A, k, inverted=False)
    raise ValueError(f"unknown direction {direction!r}")


def factorial_ratio(A: int, B: int) -> ExactScalar:
    """[A]!/[B]! for nonnegative A, B."""
    return kfactorial(A) / kfactorial(B)
