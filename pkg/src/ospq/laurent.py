"""Laurent polynomials in one variable over the 8th-cyclotomic rationals.

Polynomials are plain dicts mapping integer exponents to nonzero Cyclo
coefficients; the zero polynomial is the empty dict.  These are the
numerators/denominators of the exact scalar field.
"""

from __future__ import annotations

from .cyclo import Cyclo, CYC_ONE

LPoly = dict  # {int exponent: Cyclo}


def lp_zero() -> LPoly:
    return {}


def lp_const(c: Cyclo) -> LPoly:
    return {0: c} if c else {}


def lp_mono(c: Cyclo, e: int) -> LPoly:
    return {e: c} if c else {}


ONE_POLY = {0: CYC_ONE}


def lp_add(a: LPoly, b: LPoly) -> LPoly:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = c
        else:
            s = s + c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def lp_neg(a: LPoly) -> LPoly:
    return {e: -c for e, c in a.items()}

def lp_sub(a: LPoly, b: LPoly) -> LPoly:
    return lp_add(a, lp_neg(b))


def lp_mul(a: LPoly, b: LPoly) -> LPoly:
    out: LPoly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            p = ca * cb
            s = out.get(e)
            if s is None:
                if p:
                    out[e] = p
            else:
                s = s + p
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


def lp_scale(a: LPoly, c: Cyclo) -> LPoly:
    if not c:
        return {}
    return {e: ci * c for e, ci in a.items()}


def lp_shift(a: LPoly, k: int) -> LPoly:
    return {e + k: c for e, c in a.items()}


def lp_min_exp(a: LPoly) -> int:
    return min(a)


def lp_max_exp(a: LPoly) -> int:
    return max(a)


def lp_eval(a: LPoly, s: complex) -> complex:
    return sum(c.eval_complex() * s ** e for e, c in a.items())


def _divmod_poly(a: LPoly, b: LPoly):
    """Division of ordinary polynomials (min exponent >= 0)."""
    lead_e = lp_max_exp(b)
    lead_inv = b[lead_e].inverse()
    q: LPoly = {}
    r = dict(a)
    while r and lp_max_exp(r) >= lead_e:
        e = lp_max_exp(r)
        c = r[e] * lead_inv
        q[e - lead_e] = c
        for eb, cb in b.items():
            ee = e - lead_e + eb
            s = r.get(ee)
            p = c * cb
            if s is None:
                if p:
                    r[ee] = -p
            else:
                s = s - p
                if s:
                    r[ee] = s
                else:
                    del r[ee]
    return q, r


def lp_gcd(a: LPoly, b: LPoly) -> LPoly:
    """Monic gcd, ignoring monomial (s^k) content."""
    if not a:
        return _monic_primitive(b)
    if not b:
        return _monic_primitive(a)
    a = lp_shift(a, -lp_min_exp(a))
    b = lp_shift(b, -lp_min_exp(b))
    while b:
        _, r = _divmod_poly(a, b)
        a, b = b, (lp_shift(r, -lp_min_exp(r)) if r else {})
    return _monic(a)


def _monic(a: LPoly) -> LPoly:
    if not a:
        return a
    inv = a[lp_max_exp(a)].inverse()
    return lp_scale(a, inv)


def _monic_primitive(a: LPoly) -> LPoly:
    if not a:
        return a
    return _monic(lp_shift(a, -lp_min_exp(a)))


def lp_divexact(a: LPoly, b: LPoly) -> LPoly:
    """Exact division; b must divide a up to monomial content."""
    if not a:
        return {}
    sa, sb = lp_min_exp(a), lp_min_exp(b)
    q, r = _divmod_poly(lp_shift(a, -sa), lp_shift(b, -sb))
    if r:
        raise ArithmeticError("inexact polynomial division")
    return lp_shift(q, sa - sb)
