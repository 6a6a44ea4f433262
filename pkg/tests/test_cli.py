import json
import subprocess
import sys

import pytest

from phigamma.cli import EXIT_BUDGET, EXIT_CHECK, EXIT_INPUT, EXIT_OK, EXIT_PRECISION, main
from phigamma.serialize import module_from_json, module_to_json, dumps


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def module_file(tmp_path, capsys):
    path = tmp_path / "m.json"
    code, _, _ = run(capsys, "construct", "--p", "3", "--n", "2", "--h", "1", "--Lambda", "2", "--out", str(path))
    assert code == EXIT_OK
    return path


def test_construct_round_trips(module_file):
    obj = json.loads(module_file.read_text())
    assert dumps(module_to_json(module_from_json(obj))) == module_file.read_text()


def test_construct_rank1(capsys):
    code, out, _ = run(capsys, "construct", "--p", "5", "--field-deg", "1", "--rank1", "2", "--omega", "3")
    assert code == EXIT_OK
    assert json.loads(out)["d"] == 1


def test_recover(module_file, capsys):
    code, out, _ = run(capsys, "recover", "--in", str(module_file))
    rep = json.loads(out)
    assert code == EXIT_OK and rep["ok"]
    assert rep["params"] == {"n": 2, "h": 1, "Lambda": [2, 0]}
    assert rep["certificate_replays"]


def test_slope(module_file, capsys):
    code, out, _ = run(capsys, "slope", "--in", str(module_file))
    assert code == EXIT_OK
    assert json.loads(out)["isoclinic"]


def test_simulate(module_file, capsys):
    code, out, _ = run(capsys, "simulate", "--module", str(module_file), "--word", "u(1/p);d(p);a(2)", "--top", "4")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["matches_product_action"]["equal"]
    assert rep["output"]["top"] == 5


def test_verify_psi_lists_identities(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "psi", "--trials", "3")
    rep = json.loads(out)
    assert code == EXIT_OK
    checks = rep["suites"]["psi"]["checks"]
    assert {"psi_monomial", "psi_phi_is_identity", "gamma_multiplicative"} <= set(checks)
    assert all(c["failed"] == 0 and c["passed"] > 0 for c in checks.values())


def test_roundtrip_table(capsys):
    code, out, _ = run(capsys, "roundtrip", "--p", "2", "--n-max", "2", "--seeds", "1", "--lambdas", "2")
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["totals"]["passed"] == rep["totals"]["runs"] > 0


def test_induction_verify(tmp_path, capsys):
    sigma = {
        "field_deg": 2,
        "sigma1": {"at_p": [0, 1], "conductor": 1, "unit_values": [[2, 0]]},
        "sigma2": {"at_p": [1, 0]},
    }
    path = tmp_path / "sigma.json"
    path.write_text(json.dumps(sigma))
    code, out, _ = run(capsys, "induction", "verify", "--p", "3", "--sigma", str(path), "--trials", "10", "--seed", "7")
    assert code == EXIT_OK and json.loads(out)["ok"]


def test_reports_are_deterministic(tmp_path, capsys):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        assert run(capsys, "verify", "--suite", "borel", "--suite", "slopes", "--trials", "4", "--seed", "9", "--out", str(path))[0] == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_check_failure_exit_code(tmp_path, capsys):
    # a reducible module is not induced from a primitive character
    from phigamma.field import field_of_degree
    from phigamma.pgmod import direct_sum, rank1_from_character
    from phigamma.weil import SmoothCharacter

    triv = rank1_from_character(SmoothCharacter.trivial(field_of_degree(3, 2)), 40)
    path = tmp_path / "sum.json"
    path.write_text(dumps(module_to_json(direct_sum(triv, triv))))
    code, _, err = run(capsys, "recover", "--in", str(path))
    assert code == EXIT_CHECK
    assert json.loads(err)["error"] == "NotIrreducible"


def test_non_primitive_h_is_an_input_error(capsys):
    code, _, err = run(capsys, "construct", "--p", "3", "--n", "2", "--h", "4", "--Lambda", "1")
    assert code == EXIT_INPUT and json.loads(err)["error"] == "NonPrimitiveH"


@pytest.mark.parametrize(
    "args,code",
    [
        (["recover", "--in", "/nonexistent.json"], EXIT_INPUT),
        (["bogus"], EXIT_INPUT),
        (["construct", "--p", "4", "--n", "1", "--h", "0", "--Lambda", "1"], EXIT_INPUT),
        (["construct", "--p", "3", "--prec", "100", "--padic-prec", "2", "--rank1", "1"], EXIT_INPUT),
        (["verify", "--suite", "psi", "--trials", "0"], EXIT_INPUT),
    ],
)
def test_input_errors(capsys, args, code):
    got, _, err = run(capsys, *args)
    assert got == code
    assert json.loads(err)["exit_code"] == code


def test_malformed_json(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run(capsys, "slope", "--in", str(path))[0] == EXIT_INPUT


def test_precision_exit_code(module_file, capsys):
    code, _, err = run(capsys, "simulate", "--module", str(module_file), "--word", "u(1/p^5)", "--top", "2")
    assert code == EXIT_PRECISION
    assert json.loads(err)["error"] == "InsufficientDepth"


def test_budget_exit_code(tmp_path, capsys):
    path = tmp_path / "d.json"
    run(capsys, "construct", "--p", "3", "--n", "2", "--h", "1", "--Lambda", "2", "--disguise", "0", "--out", str(path))
    code, _, err = run(capsys, "slope", "--in", str(path), "--budget", "1")
    assert code == EXIT_BUDGET
    assert json.loads(err)["error"] == "NoConvergence"


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "phigamma.cli", "verify", "--suite", "rank1", "--trials", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ok"]
