"""Covariant noncommutative spaces and the rewrite machinery."""

from fractions import Fraction

import pytest

from ospq.covspace import (
    FreeElement,
    NonSolvableLeadingTerm,
    RewriteSystem,
    SurdSum,
    coaction_covariance_check,
    composite,
    confluence_check,
    centrality_check,
    extract_relations,
    four_dim_presystem,
    four_dim_system,
    reduce,
    two_dim_system,
    unacceptable_relations,
    word_key,
)
from ospq.reps import MINUS, PLUS
from ospq.scalars import ExactScalar, ONE, Surd

QH = ExactScalar.q_power(Fraction(1, 2))
Q1 = ExactScalar.q_power(1)


def test_surdsum_groups_by_radicand():
    a = SurdSum.from_surd(Surd(ONE, frozenset({2})))
    b = SurdSum.from_surd(Surd(ONE, frozenset({3})))
    s = a + b
    assert len(s.parts) == 2
    assert (s - a) == b
    with pytest.raises(NonSolvableLeadingTerm):
        s.as_surd()
    # scaling by sqrt([2]) merges the {2} part back into the rational sector
    t = s.scaled(Surd(ONE, frozenset({2})))
    assert set(t.parts) == {frozenset(), frozenset({2, 3})}


def test_word_key_is_deglex_with_x_greatest():
    assert word_key((0, 1)) > word_key((1, 0))
    assert word_key((1, 1, 1)) > word_key((0, 0))


def test_free_element_arithmetic():
    xy = FreeElement.word((0, 1))
    yx = FreeElement.word((1, 0), QH)
    s = xy + yx
    assert s.coefficient((0, 1)).as_surd() == Surd.coerce(1)
    assert (s - xy) == yx
    assert not (s - s)
    assert s.degree == 2
    assert s.words() == [(0, 1), (1, 0)]


def test_two_dim_relation_reduces_to_zero():
    for lam, sgn in ((0, 1), (1, -1)):
        sys = two_dim_system(lam)
        rel = (
            FreeElement.word((0, 1))
            + FreeElement.word((1, 0), QH).scaled(Surd.coerce(sgn))
            - FreeElement.word((), r_pow=1)
        )
        assert not reduce(rel, sys)


def test_reduce_cubic_word_frozen_oracle():
    # lam = 0: xyy -> q yyx + (1 - q^{1/2}) y r
    sys = two_dim_system(0)
    out = reduce(FreeElement.word((0, 1, 1)), sys)
    expect = FreeElement.word((1, 1, 0), Q1) + FreeElement.word(
        (1,), ONE - QH, r_pow=1
    )
    assert out == expect


def test_two_dim_system_is_confluent():
    for lam in (0, 1):
        rep = confluence_check(two_dim_system(lam), degree=3)
        assert rep["ok"], rep["failures"]
        assert centrality_check(two_dim_system(lam))["ok"]


def test_four_dim_presystem_diverges_then_full_system_closes():
    pre = confluence_check(four_dim_presystem(0), degree=3)
    assert not pre["ok"]
    assert "xyz" in {f["word"] for f in pre["failures"]}
    final = confluence_check(four_dim_system(0), degree=3)
    assert final["ok"], final["failures"]


def test_central_parameter_obstruction_at_ell_three_half():
    table = composite(Fraction(3, 2), 0)
    sys = extract_relations(table, {0, 1, 2}, r_at_zero=True)
    rep = centrality_check(sys, degree=3)
    assert not rep["ok"]
    assert rep["r_conflicts"]


def test_nilpotency_detector_fires_at_top_level():
    for ell in (Fraction(1, 2), Fraction(3, 2)):
        for lam in (0, 1):
            table = composite(ell, lam)
            flagged = unacceptable_relations(table, levels={int(2 * ell)})
            assert flagged, (ell, lam)
            assert all(f["L"] == int(2 * ell) for f in flagged)


def test_rewrite_system_json_roundtrip():
    for sys in (two_dim_system(1), four_dim_system(0)):
        back = RewriteSystem.from_json(sys.to_json())
        assert back.names == sys.names
        assert back.parities == sys.parities
        assert back.rules == sys.rules


def test_coaction_covariance_fundamental():
    for lam in (0, 1):
        for branch in (PLUS, MINUS):
            rep = coaction_covariance_check(lam, branch)
            assert rep["ok"], (lam, branch, rep["failures"])
            assert rep["cofactor"]
