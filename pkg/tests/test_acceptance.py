"""Acceptance gate: one test per top-level guarantee of the package.

Each test runs the corresponding verification suite over the full stated
sweep, prints a single PASS/FAIL line, and enforces the time budget.
"""

from ospq.verify import run_suite

BUDGETS = {
    "algebra-relations": 10.0,
    "grade-star": 10.0,
    "cgc-cross-validation": 60.0,
    "qhahn-identification": 60.0,
    "block-diagonalization": 30.0,
    "tmatrix-dual-routes": 60.0,
    "qjacobi-identification": 30.0,
    "fundamental-block": 5.0,
    "covariant-spaces": 30.0,
    "coaction-covariance": 30.0,
}


def _run(name):
    rep = run_suite(name)
    status = "PASS" if rep["ok"] else "FAIL"
    print(
        f"\n[{status}] {name}: {rep['count']} cases in {rep['elapsed']:.2f}s"
        + (f" -- {rep['detail']}" if rep["detail"] and not rep["ok"] else "")
    )
    assert rep["ok"], rep["detail"]
    assert rep["elapsed"] < BUDGETS[name]
    return rep


def test_defining_relations_hold_exactly_up_to_dimension_eight():
    rep = _run("algebra-relations")
    assert rep["count"] == 24  # all labels with 2l <= 7


def test_grade_star_structure_is_exact_up_to_dimension_six():
    rep = _run("grade-star")
    assert rep["count"] == 18


def test_closed_form_cgc_matches_recurrence_up_to_one_global_ratio():
    rep = _run("cgc-cross-validation")
    assert rep["count"] == 130


def test_coupling_k_sums_are_qhahn_values():
    _run("qhahn-identification")


def test_cg_matrices_block_diagonalize_the_coproduct():
    rep = _run("block-diagonalization")
    assert rep["count"] == 112


def test_t_matrix_closed_form_agrees_with_dual_routes():
    _run("tmatrix-dual-routes")


def test_t_matrix_polynomial_part_is_little_qjacobi():
    _run("qjacobi-identification")


def test_fundamental_corepresentation_block_relations():
    _run("fundamental-block")


def test_covariant_space_presentations_and_confluence():
    _run("covariant-spaces")


def test_coaction_leaves_the_quadratic_relation_invariant():
    _run("coaction-covariance")
