import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from corrfact import matio
from corrfact.cli import run
from corrfact.errors import MatrixFormatError

from conftest import CHSH, CHSH_COLS, CHSH_ROWS, E3


def _write(tmp_path, name, matrix):
    path = tmp_path / name
    matio.write_matrix(path, matrix)
    return str(path)


def _details(capsys):
    report = json.loads(capsys.readouterr().out)
    return report, {d["name"]: d for d in report["details"]}


def test_matrix_io_real_bit_exact(tmp_path, rng):
    m = rng.standard_normal((4, 3)) * 10.0 ** rng.integers(-8, 8, size=(4, 3))
    path = tmp_path / "m.json"
    matio.write_matrix(path, m)
    back = matio.read_matrix(path)
    assert back.dtype == m.dtype
    assert np.array_equal(back, m)


def test_matrix_io_complex_bit_exact(tmp_path, rng):
    m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    path = tmp_path / "m.json"
    matio.write_matrix(path, m)
    back = matio.read_matrix(path)
    assert np.iscomplexobj(back)
    assert np.array_equal(back, m)


def test_matrix_io_rejects_malformed():
    with pytest.raises(MatrixFormatError):
        matio.matrix_from_obj({"rows": 2, "cols": 2, "complex": False, "data": [1.0, 2.0]})
    with pytest.raises(MatrixFormatError):
        matio.matrix_from_obj({"rows": 1, "cols": 1, "complex": True, "data": [1.0]})
    with pytest.raises(MatrixFormatError):
        matio.matrix_to_obj(np.array([[np.inf]]))


def test_gen_extreme_then_check_extreme(tmp_path, capsys):
    epath = str(tmp_path / "E.json")
    assert run(["elliptope", "gen-extreme", "-r", "2", "-o", epath]) == 0
    capsys.readouterr()
    assert run(["elliptope", "check-extreme", epath]) == 0
    report, details = _details(capsys)
    assert report["pass"] is True
    assert details["rank"]["value"] == 2
    assert details["required_rank"]["value"] == 3


def test_check_extreme_fails_on_identity(tmp_path, capsys):
    path = _write(tmp_path, "I3.json", np.eye(3))
    assert run(["elliptope", "check-extreme", path]) == 1
    report, _ = _details(capsys)
    assert report["pass"] is False


def test_rmax_prints_value(capsys):
    assert run(["elliptope", "rmax", "-n", "10"]) == 0
    assert capsys.readouterr().out.strip() == "4"


def test_clifford_gen_verify_roundtrip(tmp_path, capsys):
    gdir = str(tmp_path / "gens")
    assert run(["clifford", "gen", "-r", "5", "-o", gdir]) == 0
    capsys.readouterr()
    assert run(["clifford", "verify", gdir]) == 0
    report, _ = _details(capsys)
    assert report["max_deviation"] < 1e-12


def test_clifford_verify_detects_tampering(tmp_path, capsys):
    gdir = tmp_path / "gens"
    assert run(["clifford", "gen", "-r", "4", "-o", str(gdir)]) == 0
    # overwrite the second generator with a copy of the first
    first = matio.read_matrix(gdir / "generator_01.json")
    matio.write_matrix(gdir / "generator_02.json", first)
    capsys.readouterr()
    assert run(["clifford", "verify", str(gdir)]) == 1


def test_factorize_build_sugar_and_verify(tmp_path, capsys):
    epath = _write(tmp_path, "E.json", E3)
    fdir = str(tmp_path / "fact")
    assert run(["factorize", epath, "-o", fdir]) == 0
    capsys.readouterr()
    assert run(["factorize", "verify", epath, fdir]) == 0
    report, _ = _details(capsys)
    assert report["max_deviation"] < 1e-10
    assert run(["factorize", "verify", epath, fdir, "--mode", "i-prime"]) == 0


def test_factorize_b_form_pipeline(tmp_path, capsys):
    epath = _write(tmp_path, "E.json", E3)
    fdir = str(tmp_path / "formb")
    assert run(["factorize", "build", epath, "-o", fdir, "--form", "b"]) == 0
    capsys.readouterr()
    assert run(["factorize", "verify", epath, fdir, "--mode", "b-form"]) == 0


def test_factorize_verify_wrong_target_fails(tmp_path, capsys):
    epath = _write(tmp_path, "E.json", E3)
    other = _write(tmp_path, "I3.json", np.eye(3))
    fdir = str(tmp_path / "fact")
    assert run(["factorize", epath, "-o", fdir]) == 0
    capsys.readouterr()
    assert run(["factorize", "verify", other, fdir]) == 1


def test_clifford_identity_requires_seed(tmp_path, capsys):
    epath = _write(tmp_path, "E.json", E3)
    fdir = str(tmp_path / "fact")
    assert run(["factorize", epath, "-o", fdir]) == 0
    apath = _write(tmp_path, "A.json", E3[:2, :2])
    assert run(["factorize", "clifford-identity", apath, fdir, "--trials", "5"]) == 2


def test_clifford_identity_seeded_byte_reproducible(tmp_path, capsys):
    epath = _write(tmp_path, "E.json", E3)
    fdir = str(tmp_path / "fact")
    assert run(["factorize", epath, "-o", fdir]) == 0
    apath = _write(tmp_path, "A.json", E3[:2, :2])
    capsys.readouterr()
    argv = ["--seed", "17", "factorize", "clifford-identity", apath, fdir, "--trials", "25"]
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    assert json.loads(first)["seed"] == 17


def test_cpsd_pipeline(tmp_path, capsys):
    epath = str(tmp_path / "E.json")
    pc_path = str(tmp_path / "PC.json")
    fdir = str(tmp_path / "factors")
    assert run(["elliptope", "gen-extreme", "-r", "3", "-o", epath]) == 0
    assert run(["cpsd", "build-pc", epath, "-o", pc_path, "--factors", fdir]) == 0
    capsys.readouterr()
    assert run(["cpsd", "verify", pc_path, fdir]) == 0
    report, _ = _details(capsys)
    assert report["max_deviation"] < 1e-10
    assert run(["cpsd", "certify", epath]) == 0
    report, details = _details(capsys)
    assert details["cpsd_rank_lower_bound"]["value"] == 2
    assert details["construction_dim"]["value"] == 2


def test_cpsd_certify_non_extreme_exits_one(tmp_path, capsys):
    path = _write(tmp_path, "I3.json", np.eye(3))
    assert run(["cpsd", "certify", path]) == 1


def test_cpsd_extract_then_verify_doubled(tmp_path, capsys):
    epath = _write(tmp_path, "E.json", E3)
    pc_path = str(tmp_path / "PC.json")
    fdir = str(tmp_path / "factors")
    out = str(tmp_path / "extracted")
    doubled = _write(tmp_path, "doubled.json", np.block([[E3, E3], [E3, E3]]))
    assert run(["cpsd", "build-pc", epath, "-o", pc_path, "--factors", fdir]) == 0
    capsys.readouterr()
    assert run(["cpsd", "extract", fdir, "-o", out]) == 0
    capsys.readouterr()
    assert run(["factorize", "verify", doubled, out]) == 0


def test_quantum_pipeline(tmp_path, capsys):
    cpath = _write(tmp_path, "C.json", CHSH)
    upath = _write(tmp_path, "U.json", CHSH_ROWS)
    vpath = _write(tmp_path, "V.json", CHSH_COLS)
    rdir = str(tmp_path / "rep")
    rdir2 = str(tmp_path / "rep2")
    assert run(["quantum", "rep", cpath, "--gram", upath, vpath, "-o", rdir]) == 0
    capsys.readouterr()
    assert run(["quantum", "eval", rdir]) == 0
    block = matio.matrix_from_obj(json.loads(capsys.readouterr().out))
    assert_allclose(block, CHSH, atol=1e-12)
    assert run(["quantum", "reduce", rdir, "-o", rdir2]) == 0
    capsys.readouterr()
    assert run(["quantum", "eval", rdir2]) == 0
    block2 = matio.matrix_from_obj(json.loads(capsys.readouterr().out))
    assert_allclose(block2, CHSH, atol=1e-10)


def test_unknown_command_exits_two(capsys):
    assert run(["bogus"]) == 2


def test_malformed_matrix_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"rows": 2, "cols": 2, "complex": false, "data": [1splat')
    assert run(["elliptope", "check-extreme", str(bad)]) == 2


def test_missing_file_exits_two(tmp_path):
    assert run(["elliptope", "check-extreme", str(tmp_path / "nope.json")]) == 2


def test_precondition_violation_exits_three(tmp_path):
    path = _write(tmp_path, "bad.json", np.array([[1.0, 2.0], [2.0, 1.0]]))
    assert run(["factorize", path, "-o", str(tmp_path / "out")]) == 3


def test_quiet_summaries(tmp_path, capsys):
    epath = _write(tmp_path, "E.json", E3)
    fdir = str(tmp_path / "fact")
    assert run(["factorize", epath, "-o", fdir]) == 0
    capsys.readouterr()
    assert run(["--quiet", "factorize", "verify", epath, fdir]) == 0
    out = capsys.readouterr().out
    assert out.startswith("PASS factorize verify")
    assert "\n" == out[-1] and out.count("\n") == 1


def test_tolerance_flags_are_honored(tmp_path, capsys):
    # A slightly perturbed extreme point fails at default eq_tol for the
    # witness entries but passes with a loose tolerance.
    e = E3.copy()
    e[0, 1] = e[1, 0] = 1e-7
    epath = _write(tmp_path, "E.json", e)
    fdir = str(tmp_path / "fact")
    assert run(["factorize", epath, "-o", fdir]) == 0
    capsys.readouterr()
    other = _write(tmp_path, "E0.json", E3)
    assert run(["factorize", "verify", other, fdir]) == 1
    capsys.readouterr()
    assert run(["--eq-tol", "1e-5", "factorize", "verify", other, fdir]) == 0
