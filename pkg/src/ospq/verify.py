"""Verification suites bundling the package-wide consistency checks.

Each suite sweeps a family of exact identities (or, for the block
diagonalization suite, a numeric certification) and returns a small
report dict.  The suites are shared between the test suite and the
command line front end.
"""

from __future__ import annotations

import time
from fractions import Fraction

from .cgc import (
    EE,
    OE,
    OO,
    case_of,
    closed_form_table,
    block_diagonalize_check,
    coupled_ells,
    hahn_admissible,
    ksum_qhahn_check,
    multiplet,
    ratio_consistent,
    target_label,
)
from .covspace import (
    FreeElement,
    coaction_covariance_check,
    composite,
    confluence_check,
    four_dim_presystem,
    four_dim_system,
    reduce,
    two_dim_system,
    unacceptable_relations,
)
from .groupalg import (
    fundamental_relations_check,
    t_element_closed,
    t_element_duality,
    t_element_exponential,
    t_polynomial_check,
)
from .reps import (
    MINUS,
    PLUS,
    RepLabel,
    all_labels,
    check_defining_relations,
    grade_star_check,
)
from .scalars import ExactScalar, ONE, Surd


def _report(name, ok, count, detail=""):
    return {"name": name, "ok": bool(ok), "count": count, "detail": detail}


def _timed(fn):
    def wrapped(*args, **kwargs):
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep["elapsed"] = time.perf_counter() - t0
        return rep

    return wrapped


def coupling_pairs(max_two_ell: int, same_lam: bool = False):
    """Label pairs whose tensor product decomposes into valid targets."""
    labels = all_labels(max_two_ell)
    pairs = []
    for l1 in labels:
        for l2 in labels:
            if same_lam and l1.lam != l2.lam:
                continue
            try:
                for ell in coupled_ells(l1, l2):
                    target_label(l1, l2, ell)
            except ValueError:
                continue
            pairs.append((l1, l2))
    return pairs


@_timed
def suite_algebra_relations(max_two_ell: int = 7):
    failures = []
    labels = all_labels(max_two_ell)
    for label in labels:
        rep = check_defining_relations(label)
        if not rep.ok:
            failures.append(rep.name)
    return _report(
        "algebra-relations", not failures, len(labels), "; ".join(failures)
    )


@_timed
def suite_grade_star(max_two_ell: int = 5):
    failures = []
    labels = all_labels(max_two_ell)
    for label in labels:
        rep = grade_star_check(label)
        if not rep.ok:
            failures.append(rep.name)
    return _report("grade-star", not failures, len(labels), "; ".join(failures))


@_timed
def suite_cgc_cross_validation(max_two_ell: int = 4):
    failures = []
    count = 0
    for l1, l2 in coupling_pairs(max_two_ell, same_lam=True):
        if case_of(l1, l2) not in (OO, EE, OE):
            continue
        for ell in coupled_ells(l1, l2):
            count += 1
            tab = multiplet(l1, l2, ell)
            closed = closed_form_table(l1, l2, ell, normalize=True)
            if not ratio_consistent(closed, tab.entries):
                failures.append(f"{l1} (x) {l2} -> {ell}")
    return _report(
        "cgc-cross-validation", not failures, count, "; ".join(failures)
    )


def _hahn_ells(case):
    if case == OO:
        return [Fraction(k) for k in range(0, 3)]
    return [Fraction(k, 2) for k in (1, 3)]


@_timed
def suite_qhahn_identification(max_two_ell: int = 4):
    failures = []
    count = 0
    for case in (OO, EE, OE):
        l1s = _hahn_ells(OO if case in (OO, OE) else EE)
        l2s = _hahn_ells(OO if case == OO else EE)
        for l1 in l1s:
            for l2 in l2s:
                lo, hi = abs(l1 - l2), l1 + l2
                ells = [lo + k for k in range(int(hi - lo) + 1)]
                for ell in ells:
                    for m2 in [-l2 + k for k in range(int(2 * l2) + 1)]:
                        for m in [-ell + k for k in range(int(2 * ell) + 1)]:
                            if not hahn_admissible(l1, l2, ell, m, m2):
                                continue
                            count += 1
                            if not ksum_qhahn_check(case, l1, l2, ell, m, m2):
                                failures.append(
                                    f"{case} {l1},{l2},{ell},{m},{m2}"
                                )
    return _report(
        "qhahn-identification", not failures, count, "; ".join(failures)
    )


@_timed
def suite_block_diagonalization(max_two_ell: int = 3, tol: float = 1e-9):
    failures = []
    max_dev = 0.0
    pairs = coupling_pairs(max_two_ell)
    for l1, l2 in pairs:
        rep = block_diagonalize_check(l1, l2, tol=tol)
        max_dev = max(max_dev, rep["max_dev"])
        if not rep["ok"]:
            failures.append(f"{l1} (x) {l2}: {rep['failures'][:2]}")
    return _report(
        "block-diagonalization",
        not failures,
        len(pairs),
        "; ".join(failures) or f"max relative deviation {max_dev:.2e}",
    )


def _even_entries(max_two_ell):
    for two_ell in range(1, max_two_ell + 1, 2):
        ell = Fraction(two_ell, 2)
        ms = [ell - k for k in range(two_ell + 1)]
        for lam in (0, 1):
            for branch in (PLUS, MINUS):
                for mp in ms:
                    for m in ms:
                        yield ell, mp, m, lam, branch


@_timed
def suite_tmatrix_dual_routes(max_two_ell: int = 3):
    failures = []
    count = 0
    for ell, mp, m, lam, branch in _even_entries(max_two_ell):
        count += 1
        closed = t_element_closed(ell, mp, m, lam, branch)
        if closed != t_element_duality(ell, mp, m, lam, branch):
            failures.append(f"duality {ell},{mp},{m},{lam},{branch}")
        if closed != t_element_exponential(ell, mp, m, lam, branch):
            failures.append(f"exponential {ell},{mp},{m},{lam},{branch}")
    return _report(
        "tmatrix-dual-routes", not failures, count, "; ".join(failures)
    )


@_timed
def suite_qjacobi_identification(max_two_ell: int = 3):
    failures = []
    count = 0
    for ell, mp, m, lam, branch in _even_entries(max_two_ell):
        count += 1
        if not t_polynomial_check(ell, mp, m, lam, branch):
            failures.append(f"{ell},{mp},{m},{lam},{branch}")
    return _report(
        "qjacobi-identification", not failures, count, "; ".join(failures)
    )


@_timed
def suite_fundamental_block():
    rep = fundamental_relations_check()
    detail = "; ".join(
        f"{f['branch']}:{f['relation']}" for f in rep.get("failures", [])
    )
    return _report("fundamental-block", rep["ok"], 20, detail)


def _qs(e) -> Surd:
    return Surd(ExactScalar.q_power(Fraction(e)), frozenset())


def _reduces_to_zero(sys, el) -> bool:
    return not reduce(el, sys)


@_timed
def suite_covariant_spaces():
    failures = []
    half, three_half = Fraction(1, 2), Fraction(3, 2)

    # two-dimensional relations, xy -+ q^{1/2} yx = r, both lambda
    for lam, sgn in ((0, 1), (1, -1)):
        sys2 = two_dim_system(lam)
        rel = (
            FreeElement.word((0, 1))
            + FreeElement.word((1, 0), _qs("1/2")).scaled(Surd.coerce(sgn))
            - FreeElement.word((), r_pow=1)
        )
        if not _reduces_to_zero(sys2, rel):
            failures.append(f"two-dim relation lam={lam}")
        if not confluence_check(sys2)["ok"]:
            failures.append(f"two-dim confluence lam={lam}")

    # pre-constraint four-dimensional system diverges on xyz
    pre = four_dim_presystem()
    rep = confluence_check(pre)
    if rep["ok"] or not any(f["word"] == "xyz" for f in rep["failures"]):
        failures.append("pre-constraint system should diverge on xyz")

    # final four-dimensional system: confluent, quoted relations hold
    final = four_dim_system()
    if not confluence_check(final)["ok"]:
        failures.append("final system not confluent")
    x, y, z, w = 0, 1, 2, 3
    sqrt3 = Surd(ONE, frozenset({3}))
    bracket3 = sqrt3 * sqrt3
    relations = [
        ("xy+q^{3/2}yx", FreeElement.word((x, y)) + FreeElement.word((y, x), _qs("3/2"))),
        ("xz-q^3zx", FreeElement.word((x, z)) - FreeElement.word((z, x), _qs(3))),
        ("xw+q^{9/2}wx", FreeElement.word((x, w)) + FreeElement.word((w, x), _qs("9/2"))),
        ("yz+q^{3/2}zy", FreeElement.word((y, z)) + FreeElement.word((z, y), _qs("3/2"))),
        ("yw-q^3wy", FreeElement.word((y, w)) - FreeElement.word((w, y), _qs(3))),
        ("zw+q^{3/2}wz", FreeElement.word((z, w)) + FreeElement.word((w, z), _qs("3/2"))),
        ("y^2-q^{-3/2}sqrt[3]xz",
         FreeElement.word((y, y)) - FreeElement.word((x, z), _qs("-3/2") * sqrt3)),
        ("z^2-q^{-3/2}sqrt[3]yw",
         FreeElement.word((z, z)) - FreeElement.word((y, w), _qs("-3/2") * sqrt3)),
        ("yz+q^{-3/2}[3]xw",
         FreeElement.word((y, z)) + FreeElement.word((x, w), _qs("-3/2") * bracket3)),
    ]
    for name, rel in relations:
        if not _reduces_to_zero(final, rel):
            failures.append(f"four-dim relation {name}")

    # the L = 2 ell relations force an even generator nilpotent
    for ell in (half, three_half):
        for lam in (0, 1):
            table = composite(ell, lam)
            flagged = unacceptable_relations(table, levels={int(2 * ell)})
            if not flagged:
                failures.append(f"detector silent for ell={ell}, lam={lam}")

    return _report("covariant-spaces", not failures, 19, "; ".join(failures))


@_timed
def suite_coaction_covariance():
    failures = []
    for lam in (0, 1):
        for branch in (PLUS, MINUS):
            rep = coaction_covariance_check(lam, branch)
            if not rep["ok"]:
                failures.append(f"lam={lam} {branch}: {rep['failures']}")
    return _report("coaction-covariance", not failures, 4, "; ".join(failures))


SUITES = {
    "algebra-relations": suite_algebra_relations,
    "grade-star": suite_grade_star,
    "cgc-cross-validation": suite_cgc_cross_validation,
    "qhahn-identification": suite_qhahn_identification,
    "block-diagonalization": suite_block_diagonalization,
    "tmatrix-dual-routes": suite_tmatrix_dual_routes,
    "qjacobi-identification": suite_qjacobi_identification,
    "fundamental-block": suite_fundamental_block,
    "covariant-spaces": suite_covariant_spaces,
    "coaction-covariance": suite_coaction_covariance,
}


def run_suite(name: str) -> dict:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[name]()


def run_all():
    return [fn() for fn in SUITES.values()]
