"""Arithmetic in the 8th-cyclotomic field Q(w), w = exp(i*pi/4).

Elements are stored on the basis {1, w, w^2, w^3} with w^4 = -1.
The imaginary unit is i = w^2.
"""

from __future__ import annotations

from fractions import Fraction


class Cyclo:
    """An element of Q(w) with w a primitive 8th root of unity."""

    __slots__ = ("c",)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        self.c = (Fraction(c0), Fraction(c1), Fraction(c2), Fraction(c3))

    @staticmethod
    def _raw(c):
        out = object.__new__(Cyclo)
        out.c = c
        return out

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclo(other)
        return isinstance(other, Cyclo) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclo(other)
        a, b = self.c, other.c
        return Cyclo._raw((a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]))

    __radd__ = __add__

    def __neg__(self):
        a = self.c
        return Cyclo._raw((-a[0], -a[1], -a[2], -a[3]))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclo(other)
        return self + (-other)

    def __rsub__(self, other):
        return Cyclo(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            a = self.c
            return Cyclo._raw((a[0] * other, a[1] * other, a[2] * other, a[3] * other))
        a, b = self.c, other.c
        # convolution with w^4 = -1 folding
        out = [Fraction(0)] * 4
        for i in range(4):
            ai = a[i]
            if not ai:
                continue
            for j in range(4):
                bj = b[j]
                if not bj:
                    continue
                k = i + j
                if k >= 4:
                    out[k - 4] -= ai * bj
                else:
                    out[k] += ai * bj
        return Cyclo._raw(tuple(out))

    __rmul__ = __mul__

    def galois(self, k: int) -> "Cyclo":
        """Apply the automorphism w -> w^k (k odd)."""
        out = [Fraction(0)] * 4
        for i, ci in enumerate(self.c):
            if not ci:
                continue
            e = (i * k) % 8
            if e >= 4:
                out[e - 4] -= ci
            else:
                out[e] += ci
        return Cyclo._raw(tuple(out))

    def conjugate(self) -> "Cyclo":
        """Complex conjugation: w -> w^{-1} = w^7."""
        return self.galois(7)

    def inverse(self) -> "Cyclo":
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic")
        # product of the three nontrivial Galois conjugates; the full norm
        # lands in Q, so division is a rational scaling.
        p = self.galois(3) * self.galois(5) * self.galois(7)
        norm = self * p
        assert not any(norm.c[1:]), "norm must be rational"
        n = norm.c[0]
        return Cyclo._raw(tuple(ci / n for ci in p.c))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            inv = Fraction(1, 1) / Fraction(other)
            return self * inv
        return self * other.inverse()

    def eval_complex(self) -> complex:
        w = complex(2 ** -0.5, 2 ** -0.5)
        return sum(complex(ci) * w ** k for k, ci in enumerate(self.c))

    @property
    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def __repr__(self):
        return f"Cyclo{self.c}"

    def __str__(self):
        parts = []
        names = ["", "*w", "*w^2", "*w^3"]
        for ci, name in zip(self.c, names):
            if ci:
                parts.append(f"({ci.numerator}/{ci.denominator}){name}")
        if not parts:
            return "(0/1)"
        return "+".join(parts)


CYC_ZERO = Cyclo(0)
CYC_ONE = Cyclo(1)
OMEGA = Cyclo(0, 1)
IMAG = Cyclo(0, 0, 1)


def omega_pow(k: int) -> Cyclo:
    """w^k for any integer k."""
    k %= 8
    sign = 1
    if k >= 4:
        k -= 4
        sign = -1
    c = [Fraction(0)] * 4
    c[k] = Fraction(sign)
    return Cyclo._raw(tuple(c))


def i_pow(k: int) -> Cyclo:
    return omega_pow(2 * k)


def sign_pow(k) -> int:
    """(-1)**k for an integer-valued argument (int or integral Fraction)."""
    if isinstance(k, Fraction):
        if k.denominator != 1:
            raise ValueError(f"(-1)^{k} is not defined here: non-integer exponent")
        k = k.numerator
    return -1 if k % 2 else 1
