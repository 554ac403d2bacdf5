"""Command line front end: exit codes, JSON payloads, determinism."""

import json

import pytest

from ospq.cli import main


def run_json(capsys, argv):
    code = main(argv + ["--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_bracket_text_and_numeric(capsys):
    assert main(["bracket", "--kind", "super", "--n", "3", "--q", "0.5"]) == 0
    out = capsys.readouterr().out
    assert "super(3)" in out
    assert "q=0.5" in out


def test_bracket_rejects_q_outside_unit_interval(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bracket", "--n", "2", "--q", "1.5"])
    assert exc.value.code == 2


def test_qhahn_json_payload(capsys):
    code, data = run_json(
        capsys, ["qhahn", "--M", "1", "--x", "1", "--alpha", "0",
                 "--beta", "0", "--N", "2"]
    )
    assert code == 0
    assert data["M"] == 1 and "value" in data


def test_jacobi_constant_coefficient(capsys):
    code, data = run_json(
        capsys, ["jacobi", "--degree", "2", "--alpha", "1", "--beta", "0"]
    )
    assert code == 0
    assert len(data["coefficients"]) == 3


def test_rep_family_mismatch_exits_2(capsys):
    assert main(["rep", "--l", "1", "--family", "even"]) == 2
    assert "error:" in capsys.readouterr().err
    assert main(["rep", "--l", "1/2", "--family", "even"]) == 0
    capsys.readouterr()


def test_cgc_even_even_opposite_branches(capsys):
    code, data = run_json(
        capsys,
        ["cgc", "--l1", "1/2", "--l2", "1/2", "--fam1", "even",
         "--fam2", "even"],
    )
    assert code == 0
    ells = {b["l"] for b in data["blocks"]}
    assert ells == {"0", "1"}


def test_cgc_same_branch_coupling_is_rejected(capsys):
    code = main(
        ["cgc", "--l1", "1/2", "--l2", "1/2", "--fam1", "even",
         "--fam2", "even", "--branch2", "plus"]
    )
    assert code == 2
    capsys.readouterr()


def test_tmat_json_structure(capsys):
    code, data = run_json(capsys, ["tmat", "--l", "1/2", "--lambda", "1"])
    assert code == 0
    assert len(data["entries"]) == 4
    for e in data["entries"]:
        assert "terms" in e["element"]


def test_tmat_rejects_odd_family(capsys):
    assert main(["tmat", "--l", "1"]) == 2
    capsys.readouterr()


def test_covspace_presystem_reports_divergence(capsys):
    code, data = run_json(capsys, ["covspace", "--l", "3/2", "--pre"])
    assert code == 0
    assert data["confluent"] is False
    assert "xyz" in data["divergent_words"]
    code, data = run_json(capsys, ["covspace", "--l", "3/2"])
    assert code == 0
    assert data["confluent"] is True


def test_output_is_deterministic(capsys):
    argv = ["cgc", "--l1", "1", "--l2", "1/2", "--format", "json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_verify_single_suite_exit_code(capsys):
    assert main(["verify", "fundamental-block"]) == 0
    out = capsys.readouterr().out
    assert "fundamental-block: PASS" in out


def test_output_file(tmp_path, capsys):
    target = tmp_path / "res.json"
    code = main(
        ["bracket", "--n", "2", "--format", "json", "--output", str(target)]
    )
    assert code == 0
    assert json.loads(target.read_text())["n"] == 2
    capsys.readouterr()
