"""Clebsch-Gordan decomposition for tensor products of irreducibles.

Covers all three case pairs (odd x odd, even x even, odd x even): the
highest-weight recurrence, the lowering-operator multiplet construction,
the closed-form coefficient expressions, and their Q-Hahn rewriting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import (
    ExactScalar,
    ONE,
    ZERO,
    Surd,
    SURD_ZERO,
    kfactorial,
    minus_one_pow,
    format_surd,
    parse_surd,
)
from .qseries import qhahn
from .reps import (
    EVEN,
    ODD,
    RepLabel,
    act,
    coproduct_matrix,
    tensor_basis,
    weight_of,
)

OO = "OO"
EE = "EE"
OE = "OE"


def case_of(label1: RepLabel, label2: RepLabel) -> str:
    fam = (label1.family, label2.family)
    if fam == (ODD, ODD):
        return OO
    if fam == (EVEN, EVEN):
        return EE
    if fam == (ODD, EVEN):
        return OE
    return "EO"


def eta_units_sum(label1: RepLabel, label2: RepLabel) -> int:
    return label1.branch_sign + label2.branch_sign


def coupled_ells(label1: RepLabel, label2: RepLabel):
    lo = abs(label1.ell - label2.ell)
    hi = label1.ell + label2.ell
    return [hi - k for k in range(int(hi - lo) + 1)]


def target_label(label1: RepLabel, label2: RepLabel, ell: Fraction) -> RepLabel:
    """Label of the coupled irreducible of highest weight ell."""
    two_ell = int(2 * ell)
    # parity of the coupled highest-weight vector inside the tensor product
    Lambda = int(label1.ell + label2.ell - ell + label1.lam + label2.lam) % 2
    eta = eta_units_sum(label1, label2)
    if two_ell % 2 == 0:
        if eta != 0:
            raise ValueError("uncancelled eta in an odd-dimensional coupling")
        return RepLabel(two_ell, Lambda)
    if eta == 1:
        return RepLabel(two_ell, Lambda, "plus")
    if eta == -1:
        return RepLabel(two_ell, Lambda, "minus")
    raise ValueError("eta units do not match a half-integer coupling")


@dataclass
class CGTable:
    """Coupling coefficients for one target ell inside label1 (x) label2."""

    label1: RepLabel
    label2: RepLabel
    ell: Fraction
    entries: dict  # (m1, m2, m) -> Surd
    convention: str = "recurrence"

    @property
    def Lambda(self) -> int:
        return int(self.label1.ell + self.label2.ell - self.ell) % 2

    def coefficient(self, m1, m2, m) -> Surd:
        return self.entries.get((Fraction(m1), Fraction(m2), Fraction(m)), SURD_ZERO)

    def row(self, m) -> dict:
        m = Fraction(m)
        return {
            (m1, m2): c for (m1, m2, mm), c in self.entries.items() if mm == m
        }

    def to_json(self) -> dict:
        return {
            "l1": str(self.label1.ell),
            "l2": str(self.label2.ell),
            "l": str(self.ell),
            "Lambda": self.Lambda,
            "entries": [
                {
                    "m1": str(m1),
                    "m2": str(m2),
                    "m": str(m),
                    **format_surd(c),
                }
                for (m1, m2, m), c in sorted(self.entries.items())
            ],
        }

    @staticmethod
    def from_json(obj: dict, label1: RepLabel, label2: RepLabel) -> "CGTable":
        entries = {}
        for e in obj["entries"]:
            key = (Fraction(e["m1"]), Fraction(e["m2"]), Fraction(e["m"]))
            entries[key] = parse_surd(e)
        return CGTable(label1, label2, Fraction(obj["l"]), entries)


def _raising_components(label1, label2, m1, m2):
    """Delta(V+)(u_{m1} x v_{m2}) = A u_{m1+1} x v_{m2} + B u_{m1} x v_{m2+1}."""
    c1, _ = act("V+", label1, m1)
    A = c1 * Surd(weight_of(label2, m2).qpow(-1)) if c1 else SURD_ZERO
    c2, _ = act("V+", label2, m2)
    if c2:
        B = Surd(weight_of(label1, m1).qpow(1)) * c2
        if label1.parity(m1):
            B = -B
    else:
        B = SURD_ZERO
    return A, B


def highest_weight(label1: RepLabel, label2: RepLabel, ell) -> dict:
    """Highest-weight slice: {(m1, m2): Surd} with m1 + m2 = ell, seeded by
    C_{l1, ell-l1} = 1, annihilated by Delta(V+)."""
    ell = Fraction(ell)
    l1, l2 = label1.ell, label2.ell
    if not (abs(l1 - l2) <= ell <= l1 + l2) or (l1 + l2 - ell).denominator != 1:
        raise ValueError(f"target ell={ell} outside the coupling range")
    m1_lo = max(-l1, ell - l2)
    coeffs = {l1: Surd(ONE)}
    m1 = l1 - 1
    while m1 >= m1_lo:
        # coefficient of u_{m1+1} x v_{ell-m1} must vanish
        A, _ = _raising_components(label1, label2, m1, ell - m1)
        _, B = _raising_components(label1, label2, m1 + 1, ell - m1 - 1)
        coeffs[m1] = -(coeffs[m1 + 1] * B) / A
        m1 -= 1
    out = {(m1, ell - m1): c for m1, c in coeffs.items() if c}
    _assert_highest(label1, label2, out)
    return out


def _assert_highest(label1, label2, coeffs):
    acc: dict = {}
    for (m1, m2), c in coeffs.items():
        A, B = _raising_components(label1, label2, m1, m2)
        if A:
            key = (m1 + 1, m2)
            acc[key] = acc.get(key, SURD_ZERO) + c * A
        if B:
            key = (m1, m2 + 1)
            acc[key] = acc.get(key, SURD_ZERO) + c * B
    bad = {k: v for k, v in acc.items() if v}
    if bad:
        raise AssertionError(f"highest-weight state not annihilated: {bad}")


def multiplet(label1: RepLabel, label2: RepLabel, ell) -> CGTable:
    """Full table from repeated Delta(V-) on the highest-weight state."""
    ell = Fraction(ell)
    top = highest_weight(label1, label2, ell)
    basis = tensor_basis(label1, label2)
    index = {b: i for i, b in enumerate(basis)}
    lower = coproduct_matrix("V-", label1, label2)
    vec = [SURD_ZERO] * len(basis)
    for key, c in top.items():
        vec[index[key]] = c
    entries = {}
    m = ell
    while True:
        for i, c in enumerate(vec):
            if c:
                m1, m2 = basis[i]
                entries[(m1, m2, m)] = c
        if m == -ell:
            break
        new = [SURD_ZERO] * len(basis)
        for j, c in enumerate(vec):
            if not c:
                continue
            for i in range(len(basis)):
                a = lower.rows[i][j]
                if a:
                    new[i] = new[i] + a * c
        vec = new
        m -= 1
    return CGTable(label1, label2, ell, entries)


def q_super_binomial(n: int, k: int) -> ExactScalar:
    """Expansion coefficient q^{k(n-k)/2} [n]!/([k]![n-k]!) of (A+B)^n for
    qAB + BA = 0."""
    if not 0 <= k <= n:
        return ZERO
    return (
        ExactScalar.q_power(Fraction(k * (n - k), 2))
        * kfactorial(n)
        / (kfactorial(k) * kfactorial(n - k))
    )


# -- closed forms ----------------------------------------------------------


def _sqrt_factorial_ratio_surd(nums, dens):
    from .scalars import sqrt_factorial_ratio

    return sqrt_factorial_ratio(nums, dens)


def cgc_ksum(case: str, l1, l2, ell, m, m2) -> ExactScalar:
    """The inner k-sum of the closed-form coefficient (case-dependent sign)."""
    l1, l2, ell, m, m2 = map(Fraction, (l1, l2, ell, m, m2))
    k_lo = max(0, -int(l1 - ell + m2))
    k_hi = min(int(l1 + ell - m2), int(l2 - m2), int(ell - m))
    eps = -1 if case == EE else 1  # k(k+1)/2 for EE, k(k-1)/2 otherwise
    total = ZERO
    for k in range(k_lo, k_hi + 1):
        sgn = k * int(l1 + l2 - m) + (k * (k - eps)) // 2
        term = (
            minus_one_pow(sgn)
            * ExactScalar.q_power(Fraction(k, 2) * (ell + m + 1))
            * kfactorial(int(l1 + ell - m2) - k)
            * kfactorial(int(l2 + m2) + k)
            / (
                kfactorial(int(l1 - ell + m2) + k)
                * kfactorial(int(l2 - m2) - k)
                * kfactorial(int(ell - m) - k)
                * kfactorial(k)
            )
        )
        total = total + term
    return total


def cgc_closed_form(
    label1: RepLabel, label2: RepLabel, ell, m1, m2, branch_sign: int | None = None
) -> Surd:
    """Closed-form coefficient (up to the free global normalization).

    branch_sign selects the +-eta convention in the OE case; defaults to
    the even factor's branch.
    """
    case = case_of(label1, label2)
    if case not in (OO, EE, OE):
        raise ValueError(f"no closed form for case {case}")
    if label1.lam != label2.lam:
        raise ValueError("mixed-parity labels are not coupled here")
    lam = label1.lam
    l1, l2 = label1.ell, label2.ell
    m1, m2 = Fraction(m1), Fraction(m2)
    m = m1 + m2
    if abs(m1) > l1 or abs(m2) > l2 or abs(m) > Fraction(ell):
        return SURD_ZERO
    d = int(l1 - m1)
    # sign exponent d(d+eps)/2: +1 for OO, -1 for EE; the OE case follows
    # the even factor's branch (the plus branch picks up an extra (-1)^d)
    if case == OO:
        eps = 1
    elif case == EE:
        eps = -1
    else:
        pm = label2.branch_sign if branch_sign is None else branch_sign
        eps = pm
    sign = minus_one_pow(d * lam + (d * (d + eps)) // 2)
    qfac = ExactScalar.q_power(Fraction(-m1 * (m + 1), 2))
    if case == OE:
        from .scalars import omega_scalar

        # q^{-m1 * (+-eta)/2} = w^{-pm*m1}; m1 is an integer here
        qfac = qfac * omega_scalar(-pm * int(m1))
    root = _sqrt_factorial_ratio_surd(
        [int(l1 - m1), int(l2 - m2)], [int(l1 + m1), int(l2 + m2)]
    )
    ksum = cgc_ksum(case, l1, l2, Fraction(ell), m, m2)
    return root * Surd(sign * qfac * ksum)


@dataclass(frozen=True)
class HahnParams:
    alpha: int
    beta: int
    N: int
    x: int
    M: int


def hahn_params(l1, l2, ell, m, m2) -> HahnParams:
    l1, ell, m, m2 = map(Fraction, (l1, ell, m, m2))
    return HahnParams(
        alpha=int(-ell + l1 + m2),
        beta=int(ell - l1 + m2),
        N=int(ell + l1 - m2),
        x=int(ell - m),
        M=int(Fraction(l2) - m2),
    )


def ksum_as_qhahn(case: str, l1, l2, ell, m, m2):
    """Rewrite the closed-form k-sum as prefactor x Q-Hahn at Q = -q.

    Returns (prefactor, HahnParams); the exact identity
    cgc_ksum(...) == prefactor * qhahn(M, x, alpha, beta, N) holds on the
    admissible domain (all prefactor factorial arguments nonnegative).
    """
    l1, l2, ell, m, m2 = map(Fraction, (l1, l2, ell, m, m2))
    p = hahn_params(l1, l2, ell, m, m2)
    pre = (
        kfactorial(int(l1 + ell - m2))
        * kfactorial(int(l2 + m2))
        / (
            kfactorial(int(l1 - ell + m2))
            * kfactorial(int(l2 - m2))
            * kfactorial(int(ell - m))
        )
    )
    return pre, p


def ksum_qhahn_check(case: str, l1, l2, ell, m, m2) -> bool:
    """Exact identity check: k-sum == prefactor * Q-Hahn value."""
    pre, p = ksum_as_qhahn(case, l1, l2, ell, m, m2)
    lhs = cgc_ksum(case, l1, l2, ell, m, m2)
    rhs = pre * qhahn(p.M, p.x, p.alpha, p.beta, p.N)
    return lhs == rhs


def hahn_admissible(l1, l2, ell, m, m2) -> bool:
    l1, l2, ell, m, m2 = map(Fraction, (l1, l2, ell, m, m2))
    args = [l1 + ell - m2, l2 + m2, l1 - ell + m2, l2 - m2, ell - m]
    return all(a >= 0 and a.denominator == 1 for a in args)


# -- cross validation ------------------------------------------------------


def ratio_consistent(closed: dict, constructed: dict, q_sample: float = 0.55) -> bool:
    """True when the two coefficient maps agree up to one global ratio.

    Squared cross-products are compared exactly; the square-root sign is
    pinned numerically at one q sample.
    """
    keys = [k for k, v in constructed.items() if v]
    if set(keys) != {k for k, v in closed.items() if v}:
        return False
    if not keys:
        return True
    ref = keys[0]
    for other in keys[1:]:
        a = closed[other] * constructed[ref]
        b = closed[ref] * constructed[other]
        if (a * a).coeff != (b * b).coeff:
            return False
        va, vb = a.eval_at(q_sample), b.eval_at(q_sample)
        scale = max(abs(va), abs(vb), 1e-30)
        if abs(va - vb) / scale > 1e-9:
            return False
    return True


def row_normalization(label1: RepLabel, label2: RepLabel, ell, n: int) -> Surd:
    """m-dependent part of the free normalization, row n = ell - m.

    The closed form equals this factor times the raw Delta(V-)^n multiplet
    row, up to one constant per (l1, l2, ell):
    phi^n q^{n*ell - n(n-1)/2} [2]^{n/2} / [n]! with the case phase
    phi = (-1)^lam for OO, (-1)^lam (-i) w^{-b1} for EE, (-1)^lam i for OE.
    """
    from .scalars import omega_scalar, sqrt_bracket_ratio

    case = case_of(label1, label2)
    lam = label1.lam
    if case == OO:
        w_exp = 4 * lam
    elif case == EE:
        w_exp = 4 * lam - 2 - label1.branch_sign
    else:
        w_exp = 4 * lam + 2
    phase = omega_scalar(w_exp * n)
    qpow = ExactScalar.q_power(Fraction(n) * Fraction(ell) - Fraction(n * (n - 1), 2))
    return sqrt_bracket_ratio([2] * n, [], phase * qpow / kfactorial(n))


def closed_form_table(
    label1: RepLabel, label2: RepLabel, ell, normalize: bool = False
) -> dict:
    """Closed-form coefficients for every (m1, m2, m) of the multiplet.

    With normalize=True each row is divided by row_normalization, which
    makes the whole table proportional to the multiplet construction with
    a single global ratio.
    """
    ell = Fraction(ell)
    out = {}
    norms = {}
    for m1 in label1.m_values():
        for m2 in label2.m_values():
            m = m1 + m2
            if abs(m) > ell:
                continue
            c = cgc_closed_form(label1, label2, ell, m1, m2)
            if c and normalize:
                n = int(ell - m)
                if n not in norms:
                    norms[n] = row_normalization(label1, label2, ell, n)
                c = c / norms[n]
            if c:
                out[(m1, m2, m)] = c
    return out


# -- block diagonalization (numeric backend) -------------------------------


def block_diagonalize_check(
    label1: RepLabel, label2: RepLabel, q_samples=(0.3, 0.55, 0.8), tol: float = 1e-9
):
    """Numerically certify the multiplicity-free decomposition.

    The CG matrix (columns = coupled vectors, normalized per multiplet so
    the lowering action matches the target convention, unit-norm highest
    vector with positive-real leading coefficient) conjugates each
    coproduct generator into a direct sum of the target irreducibles.
    """
    import numpy as np

    from .reps import rep_matrix

    basis = tensor_basis(label1, label2)
    n = len(basis)
    ells = coupled_ells(label1, label2)
    dim_sum = sum(int(2 * e) + 1 for e in ells)
    report = {"ok": True, "max_dev": 0.0, "failures": [], "dims": dim_sum == n}
    if not report["dims"]:
        report["ok"] = False
        report["failures"].append(("dimension-count", dim_sum, n))
    tables = {e: multiplet(label1, label2, e) for e in ells}
    targets = {e: target_label(label1, label2, e) for e in ells}
    for q in q_samples:
        dvp = np.array(coproduct_matrix("V+", label1, label2).eval_at(q))
        dvm = np.array(coproduct_matrix("V-", label1, label2).eval_at(q))
        dh = np.diag([w.eval_at(q) for w in coproduct_matrix("H", label1, label2)])
        cols = []
        col_labels = []
        for e in ells:
            tab = tables[e]
            tgt = targets[e]
            tgt_vm = np.array(rep_matrix("V-", tgt).eval_at(q))
            ms = tgt.m_values()
            vecs = []
            for m in ms:
                v = np.zeros(n, dtype=complex)
                for (m1, m2), c in tab.row(m).items():
                    v[basis.index((m1, m2))] = c.eval_at(q)
                vecs.append(v)
            # normalize: unit top vector with positive-real leading entry,
            # then calibrate each lower vector by the target V- coefficient
            top = vecs[0]
            lead = top[np.argmax(np.abs(top))]
            top = top / np.linalg.norm(top)
            top = top * (abs(lead) / lead)
            out_vecs = [top]
            for i in range(1, len(ms)):
                t = tgt_vm[i, i - 1]
                out_vecs.append(dvm @ out_vecs[-1] / t)
            cols.extend(out_vecs)
            col_labels.extend((e, m) for m in ms)
        G = np.array(cols).T
        Ginv = np.linalg.inv(G)
        for name, D in (("H", dh), ("V+", dvp), ("V-", dvm)):
            B = Ginv @ D @ G
            pos = 0
            expect = np.zeros_like(B)
            for e in ells:
                tgt = targets[e]
                d = tgt.dim
                if name == "H":
                    blk = np.diag([w.eval_at(q) for w in
                                   [weight_of(tgt, m) for m in tgt.m_values()]])
                else:
                    blk = np.array(rep_matrix(name, tgt).eval_at(q))
                expect[pos : pos + d, pos : pos + d] = blk
                pos += d
            dev = np.max(np.abs(B - expect)) / max(1.0, np.max(np.abs(expect)))
            report["max_dev"] = max(report["max_dev"], float(dev))
            if dev > tol:
                report["ok"] = False
                report["failures"].append((q, name, float(dev)))
    return report
