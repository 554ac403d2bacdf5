"""Finite dimensional representations of the q-deformed osp(1|2) algebra.

Both families are covered: the odd dimensional one (integer highest
weight, classical counterpart) and the even dimensional one (half-integer
highest weight, two phase branches).  Weights of the even family carry the
constant eta = pi*i/(2 ln q) symbolically; only q-powers of weights are
ever materialized, and q^{eta/2} = w keeps everything inside Q(w)(s).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import (
    ExactScalar,
    ONE,
    Surd,
    SURD_ZERO,
    omega_scalar,
    sqrt_bracket_ratio,
)

ODD = "odd"
EVEN = "even"
PLUS = "plus"
MINUS = "minus"


@dataclass(frozen=True)
class RepLabel:
    """Irreducible representation: highest weight l = two_ell/2, highest
    weight vector parity lam, and (even family only) the phase branch."""

    two_ell: int
    lam: int = 0
    branch: str | None = None

    def __post_init__(self):
        if self.two_ell < 0:
            raise ValueError("negative highest weight")
        if self.lam not in (0, 1):
            raise ValueError("lam must be 0 or 1")
        if self.family == EVEN:
            if self.branch not in (PLUS, MINUS):
                raise ValueError("even family needs branch 'plus' or 'minus'")
        elif self.branch is not None:
            raise ValueError("odd family carries no branch")

    @property
    def family(self) -> str:
        return ODD if self.two_ell % 2 == 0 else EVEN

    @property
    def ell(self) -> Fraction:
        return Fraction(self.two_ell, 2)

    @property
    def dim(self) -> int:
        return self.two_ell + 1

    @property
    def branch_sign(self) -> int:
        return 0 if self.branch is None else (1 if self.branch == PLUS else -1)

    def m_values(self):
        """Basis weights m = l, l-1, ..., -l."""
        return [self.ell - k for k in range(self.dim)]

    def parity(self, m: Fraction) -> int:
        return int(self.ell - m + self.lam) % 2

    def parities(self):
        return [self.parity(m) for m in self.m_values()]


@dataclass(frozen=True)
class Weight:
    """Exact weight value: rational_part + eta_units * (eta/2)."""

    rational_part: Fraction
    eta_units: int = 0

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(
            self.rational_part + other.rational_part,
            self.eta_units + other.eta_units,
        )

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(
            self.rational_part - other.rational_part,
            self.eta_units - other.eta_units,
        )

    def conjugate(self) -> "Weight":
        # eta is purely imaginary for real q
        return Weight(self.rational_part, -self.eta_units)

    def shifted_eta(self, half_units: int) -> "Weight":
        return Weight(self.rational_part, self.eta_units + half_units)

    def qpow(self, t=1) -> ExactScalar:
        """q^{t * weight}, exact: q^{eta/2} = w."""
        t = Fraction(t)
        s_exp = 4 * t * self.rational_part
        w_exp = t * self.eta_units
        if s_exp.denominator != 1 or w_exp.denominator != 1:
            raise ValueError(f"q^({t}*weight) is not in the scalar field")
        return ExactScalar.s_power(s_exp.numerator) * omega_scalar(w_exp.numerator)

    def eval_at(self, q_value: float) -> complex:
        import math

        eta = complex(0, math.pi / (2 * math.log(q_value)))
        return float(self.rational_part) + self.eta_units * eta / 2


def weight_of(label: RepLabel, m: Fraction) -> Weight:
    """Eigenvalue of H on e_m: m/2 (odd family), (m +- eta)/2 (even)."""
    return Weight(Fraction(m) / 2, label.branch_sign)


def act(gen: str, label: RepLabel, m: Fraction):
    """Action of a generator on the basis vector of weight index m.

    Returns (Surd coefficient, new m) for V+/V-, or a Weight for H.
    """
    m = Fraction(m)
    ell = label.ell
    if gen == "H":
        return weight_of(label, m)
    if gen == "V+":
        if m >= ell:
            return SURD_ZERO, m + 1
        coeff = sqrt_bracket_ratio([int(ell - m), int(ell + m + 1)], [2])
        if label.family == EVEN and label.branch_sign < 0:
            coeff = -coeff
        return coeff, m + 1
    if gen == "V-":
        if m <= -ell:
            return SURD_ZERO, m - 1
        coeff = sqrt_bracket_ratio([int(ell + m), int(ell - m + 1)], [2])
        if label.family == ODD:
            if int(ell - m - 1) % 2:
                coeff = -coeff
        else:
            phase = omega_scalar(2)  # i
            if int(ell - m) % 2:
                phase = -phase
            coeff = coeff * Surd(phase)
        return coeff, m - 1
    raise ValueError(f"unknown generator {gen!r}")


def _fact_brackets(n: int):
    if n < 0:
        raise ValueError("negative factorial argument")
    return list(range(2, n + 1))


def act_power(gen: str, a: int, label: RepLabel, m: Fraction):
    """Closed form for V+^a / V-^a on the even family."""
    if label.family != EVEN:
        raise ValueError("closed power form is for the even family")
    if a < 0:
        raise ValueError("negative power")
    m = Fraction(m)
    ell = label.ell
    if a == 0:
        return Surd(ONE), m
    if gen == "V+":
        if m + a > ell:
            return SURD_ZERO, m + a
        nums = _fact_brackets(int(ell - m)) + _fact_brackets(int(ell + m + a))
        dens = _fact_brackets(int(ell + m)) + _fact_brackets(int(ell - m - a))
        coeff = sqrt_bracket_ratio(nums, dens + [2] * a)
        if label.branch_sign < 0 and a % 2:
            coeff = -coeff
        return coeff, m + a
    if gen == "V-":
        c = a
        if m - c < -ell:
            return SURD_ZERO, m - c
        nums = _fact_brackets(int(ell + m)) + _fact_brackets(int(ell - m + c))
        dens = _fact_brackets(int(ell - m)) + _fact_brackets(int(ell + m - c))
        coeff = sqrt_bracket_ratio(nums, dens + [2] * c)
        phase = omega_scalar(2 * c)  # i^c
        if (c * int(ell - m) + c * (c - 1) // 2) % 2:
            phase = -phase
        return coeff * Surd(phase), m - c
    raise ValueError(f"unknown generator {gen!r}")


class SurdMatrix:
    """Dense square matrix of Surd entries."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(Surd.coerce(e) for e in row) for row in rows)

    @staticmethod
    def zero(n: int) -> "SurdMatrix":
        return SurdMatrix([[SURD_ZERO] * n for _ in range(n)])

    @staticmethod
    def diagonal(entries) -> "SurdMatrix":
        entries = [Surd.coerce(e) for e in entries]
        n = len(entries)
        return SurdMatrix(
            [[entries[i] if i == j else SURD_ZERO for j in range(n)] for i in range(n)]
        )

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, idx):
        return self.rows[idx]

    def __eq__(self, other):
        return isinstance(other, SurdMatrix) and self.rows == other.rows

    def __add__(self, other):
        n = self.size
        return SurdMatrix(
            [[self.rows[i][j] + other.rows[i][j] for j in range(n)] for i in range(n)]
        )

    def __sub__(self, other):
        n = self.size
        return SurdMatrix(
            [[self.rows[i][j] - other.rows[i][j] for j in range(n)] for i in range(n)]
        )

    def __neg__(self):
        return SurdMatrix([[-e for e in row] for row in self.rows])

    def scaled(self, c) -> "SurdMatrix":
        c = Surd.coerce(c)
        return SurdMatrix([[c * e for e in row] for row in self.rows])

    def __matmul__(self, other):
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = SURD_ZERO
                for k in range(n):
                    a = self.rows[i][k]
                    b = other.rows[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return SurdMatrix(out)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.rows)

    def eval_at(self, q_value: float):
        return [[e.eval_at(q_value) for e in row] for row in self.rows]


def rep_matrix(word, label: RepLabel) -> SurdMatrix:
    """Matrix of a word in V+/V- on the basis e_l, ..., e_{-l}.

    `word` is a generator name or a sequence of names, applied left to
    right as operators (the leftmost acts last).
    """
    if isinstance(word, str):
        word = [word]
    ms = label.m_values()
    index = {m: i for i, m in enumerate(ms)}
    n = label.dim
    out = SurdMatrix.zero(n)
    rows = [list(r) for r in out.rows]
    for j, m in enumerate(ms):
        coeff = Surd(ONE)
        cur = m
        ok = True
        for gen in reversed(word):
            c, cur = act(gen, label, cur)
            coeff = coeff * c
            if not coeff:
                ok = False
                break
        if ok and cur in index:
            i = index[cur]
            rows[i][j] = rows[i][j] + coeff
    return SurdMatrix(rows)


def weight_diag(label: RepLabel):
    """Diagonal of H as exact Weight values."""
    return [weight_of(label, m) for m in label.m_values()]


def anticommutator_rhs(label: RepLabel) -> SurdMatrix:
    """-(q^{2H} - q^{-2H})/(q - q^{-1}) as an exact diagonal matrix."""
    qm = ExactScalar.s_power(4) - ExactScalar.s_power(-4)
    entries = []
    for w in weight_diag(label):
        entries.append(Surd(-(w.qpow(2) - w.qpow(-2)) / qm))
    return SurdMatrix.diagonal(entries)


# -- tensor products -----------------------------------------------------


def tensor_basis(label1: RepLabel, label2: RepLabel):
    return [(m1, m2) for m1 in label1.m_values() for m2 in label2.m_values()]


def tensor_weights(label1: RepLabel, label2: RepLabel):
    return [
        weight_of(label1, m1) + weight_of(label2, m2)
        for (m1, m2) in tensor_basis(label1, label2)
    ]


def coproduct_matrix(gen: str, label1: RepLabel, label2: RepLabel):
    """Delta(V+-) = V+- (x) q^{-H} + q^H (x) V+- on the tensor basis, with
    the super sign (A (x) B)(u (x) v) = (-1)^{|B||u|} Au (x) Bv.

    For H, returns the list of tensor Weights (Delta(H) is diagonal).
    """
    if gen == "H":
        return tensor_weights(label1, label2)
    basis = tensor_basis(label1, label2)
    index = {b: i for i, b in enumerate(basis)}
    n = len(basis)
    rows = [[SURD_ZERO] * n for _ in range(n)]
    for j, (m1, m2) in enumerate(basis):
        # V (x) q^{-H}: q^{-H} is even, no sign
        c1, m1p = act(gen, label1, m1)
        if c1:
            coeff = c1 * Surd(weight_of(label2, m2).qpow(-1))
            i = index[(m1p, m2)]
            rows[i][j] = rows[i][j] + coeff
        # q^H (x) V: sign (-1)^{|V| * |u|}
        c2, m2p = act(gen, label2, m2)
        if c2:
            coeff = Surd(weight_of(label1, m1).qpow(1)) * c2
            if label1.parity(m1):
                coeff = -coeff
            i = index[(m1, m2p)]
            rows[i][j] = rows[i][j] + coeff
    return SurdMatrix(rows)


def super_adjoint(mat: SurdMatrix, parities, gen_parity: int) -> SurdMatrix:
    """Superhermitian conjugate with parity-dependent signs."""
    n = mat.size
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            e = mat.rows[j][i].conjugate()
            if ((parities[i] + gen_parity) * (parities[i] + parities[j])) % 2:
                e = -e
            row.append(e)
        out.append(row)
    return SurdMatrix(out)


# -- verification reports ------------------------------------------------


@dataclass
class CheckReport:
    name: str
    ok: bool
    failures: list

    def __bool__(self):
        return self.ok


def check_defining_relations(label: RepLabel) -> CheckReport:
    """[H, V+-] = +-V+-/2 and {V+, V-} = -(q^{2H}-q^{-2H})/(q-q^{-1})."""
    failures = []
    ms = label.m_values()
    for gen, step in (("V+", Fraction(1, 2)), ("V-", Fraction(-1, 2))):
        for m in ms:
            c, mp = act(gen, label, m)
            if not c:
                continue
            diff = weight_of(label, mp) - weight_of(label, m)
            if diff.eta_units != 0 or diff.rational_part != step:
                failures.append((label, gen, m, "weight step", diff))
    vp = rep_matrix("V+", label)
    vm = rep_matrix("V-", label)
    lhs = (vp @ vm) + (vm @ vp)
    rhs = anticommutator_rhs(label)
    if lhs != rhs:
        failures.append((label, "{V+,V-}", "matrix mismatch"))
    return CheckReport(f"defining-relations {label}", not failures, failures)


def grade_star_check(label: RepLabel) -> CheckReport:
    """rho(X^*) = rho(X)^* for X in {H, V+, V-}."""
    failures = []
    parities = label.parities()
    eps = (label.lam + 1) % 2
    sgn_eps = -1 if eps % 2 else 1
    vp = rep_matrix("V+", label)
    vm = rep_matrix("V-", label)
    # H: diagonal of weights; superhermitian conjugate = entrywise conjugate
    for m in label.m_values():
        w = weight_of(label, m)
        star = w.conjugate()
        if label.family == ODD:
            expected = w
        else:
            expected = w.shifted_eta(-2 * label.branch_sign)
        if star != expected:
            failures.append((label, "H", m, star, expected))
    if label.family == ODD:
        exp_vp_star = vm.scaled(Surd.coerce(sgn_eps))  # V+^* = +(-1)^eps V-
        exp_vm_star = vp.scaled(Surd.coerce(-sgn_eps))  # V-^* = -(-1)^eps V+
    else:
        pm = label.branch_sign
        i_scal = Surd(omega_scalar(2))
        exp_vp_star = vm.scaled(i_scal * (sgn_eps * pm))
        exp_vm_star = vp.scaled(i_scal * (-sgn_eps * pm))
    got_vp_star = super_adjoint(vp, parities, gen_parity=1)
    got_vm_star = super_adjoint(vm, parities, gen_parity=1)
    if got_vp_star != exp_vp_star:
        failures.append((label, "V+ star", _first_mismatch(got_vp_star, exp_vp_star)))
    if got_vm_star != exp_vm_star:
        failures.append((label, "V- star", _first_mismatch(got_vm_star, exp_vm_star)))
    return CheckReport(f"grade-star {label}", not failures, failures)


def _first_mismatch(a: SurdMatrix, b: SurdMatrix):
    for i in range(a.size):
        for j in range(a.size):
            if a.rows[i][j] != b.rows[i][j]:
                return (i, j, a.rows[i][j], b.rows[i][j])
    return None


def all_labels(max_two_ell: int, branches=(PLUS, MINUS)):
    """Every RepLabel with 2l <= max_two_ell, both parities, both branches."""
    out = []
    for two_ell in range(max_two_ell + 1):
        for lam in (0, 1):
            if two_ell % 2 == 0:
                out.append(RepLabel(two_ell, lam))
            else:
                for br in branches:
                    out.append(RepLabel(two_ell, lam, br))
    return out
