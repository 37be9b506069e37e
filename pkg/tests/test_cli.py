import json
import subprocess
import sys

import pytest

from swcext.cli import main, run


def report(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip().startswith("{") else out), err


def write(path, data):
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture
def construction_file(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert main(["construct", "--q", "2", "--out", str(out)]) == 0
    capsys.readouterr()
    return str(out)


@pytest.fixture
def trivial_group_file(tmp_path):
    return write(tmp_path / "e.json", {"p": 2, "k": 1, "modulus": [0, 1], "n": 2, "generators": []})


@pytest.fixture
def gl_group_file(tmp_path):
    gens = [[[0, 1], [1, 0]], [[1, 1], [0, 1]]]
    return write(tmp_path / "gl.json", {"q": 2, "n": 2, "generators": gens})


def test_verify_q2(capsys):
    code, rep, _ = report(capsys, ["verify", "--q", "2"])
    assert code == 0
    assert rep["schema"] == 1 and rep["passed"]
    assert rep["field"] == {"p": 2, "k": 1, "q": 2, "modulus": [0, 1]}
    assert all(v is True for k, v in rep["report"]["checks"].items() if k != "min_distance")


def test_bound_check_q2_n2(capsys):
    code, rep, _ = report(capsys, ["bound-check", "--q", "2", "--ell", "2", "--n", "2"])
    assert code == 0 and rep["report"]["all_extend"]


def test_psinj_f23(capsys):
    code, rep, _ = report(capsys, ["psinj-f23"])
    assert code == 0 and rep["report"]["result"]
    assert rep["field"]["q"] == 2


def test_deterministic_json(capsys):
    outs = []
    for _ in range(2):
        assert main(["subcode", "--q", "3", "--seed", "7"]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_construct_output(construction_file):
    data = json.load(open(construction_file))
    r = data["report"]
    assert r["gen"][0] == [0, 1, 1, 1, 0, 0]
    assert len(r["lambda"]) == 3 and len(r["M"]) == 3
    assert r["chi"] == {"alpha": 1, "beta": 1}


def test_construct_padded(capsys):
    code, rep, _ = report(capsys, ["construct", "--q", "2", "--ell", "3", "--n", "4"])
    assert code == 0
    assert len(rep["report"]["padded"]["gen"][0]) == 12


def test_check_isometry_and_extension(capsys, construction_file, trivial_group_file, gl_group_file):
    code, rep, _ = report(capsys, ["check-isometry", "--map", construction_file, "--group", trivial_group_file])
    assert code == 0 and rep["report"]["is_isometry"]
    code, rep, _ = report(capsys, ["check-extension", "--map", construction_file, "--group", gl_group_file])
    assert code == 1
    assert rep["failed_checks"] == ["extends"]
    assert 0 in rep["report"]["failing_orbits"]


def test_check_extension_success(capsys, tmp_path, trivial_group_file):
    # mu permutes the two coordinates
    path = write(tmp_path / "m.json", {"q": 2, "ell": 2, "n": 2, "gen": [[1, 0, 0, 1]], "mu": [[0, 1, 1, 0]]})
    code, rep, _ = report(capsys, ["check-extension", "--map", path, "--group", trivial_group_file])
    assert code == 0
    assert rep["report"]["monomial"]["perm"] == [1, 0]


def test_swc_word(capsys, construction_file, trivial_group_file):
    code, rep, _ = report(capsys, ["swc", "--code", construction_file, "--group", trivial_group_file,
                                   "--word", "0,1,1,1,0,0"])
    assert code == 0
    assert rep["report"]["swc"] == [[0, 1], [1, 1], [3, 1]]


def test_swc_all_codewords(capsys, construction_file, gl_group_file):
    code, rep, _ = report(capsys, ["swc", "--code", construction_file, "--group", gl_group_file])
    assert code == 0 and len(rep["report"]["codewords"]) == 16


def test_orbits_and_closure(capsys, tmp_path):
    g = write(tmp_path / "c3.json", {"q": 2, "n": 2, "generators": [[[0, 1], [1, 1]]]})
    code, rep, _ = report(capsys, ["orbits", "--group", g])
    assert rep["report"]["orbits"]["orbit_id"] == [0, 1, 1, 1]
    code, rep, _ = report(capsys, ["closure", "--group", g])
    assert rep["report"]["closure"]["element_count"] == 6
    assert rep["report"]["closed"] is False


def test_closed_subgroups(capsys):
    code, rep, _ = report(capsys, ["closed-subgroups", "--n", "3", "--q", "2", "--fixing", "1,0,0"])
    assert code == 0 and rep["report"]["count"] == 22


@pytest.mark.parametrize("argv", [
    ["psinj", "--n", "4", "--q", "2", "--group", "builtin:T"],
    ["psinj", "--n", "5", "--q", "2", "--group", "builtin:Tprime"],
    ["psinj", "--n", "3", "--q", "3", "--group", "builtin:X"],
    ["psinj", "--n", "2", "--q", "3", "--group", "all-closed"],
])
def test_psinj_builtins(capsys, argv):
    code, rep, _ = report(capsys, argv)
    assert code == 0 and rep["passed"]


def test_psinj_group_file(capsys, gl_group_file):
    code, rep, _ = report(capsys, ["psinj", "--n", "2", "--q", "2", "--group", gl_group_file])
    assert code == 0 and rep["report"]["pseudo_injective"] is True


def test_classify(capsys):
    code, rep, _ = report(capsys, ["classify", "--n", "3", "--q", "3", "--compute"])
    assert code == 0
    assert rep["report"]["pseudo_injective_for_all_groups"] is False
    assert rep["report"]["computed"] is False


def test_text_format(capsys):
    code, out, _ = report(capsys, ["verify", "--q", "2", "--format", "text"])
    assert code == 0
    assert out.startswith("verify: PASS")
    assert "is_isometry: true" in out


def test_selftest_subset(capsys):
    code, out, _ = report(capsys, ["selftest", "--only", "1,8f", "--format", "text"])
    assert code == 0
    assert "[PASS] 1." in out and "[PASS] 8f." in out


@pytest.mark.parametrize("argv", [
    ["verify", "--q", "6"],
    ["verify"],
    ["psinj", "--n", "3", "--q", "2", "--group", "builtin:T"],
    ["psinj", "--n", "3", "--q", "2", "--group", "builtin:nope"],
    ["check-extension", "--map", "/nonexistent.json", "--group", "/nonexistent.json"],
    ["bound-check", "--q", "2", "--ell", "2", "--n", "3", "--guard", "10"],
    ["closed-subgroups", "--n", "3", "--q", "2", "--fixing", "1,0"],
    ["selftest", "--only", "99"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert main(argv) == 2
    capsys.readouterr()


def test_run_returns_triple():
    code, text, out = run(["classify", "--n", "2", "--q", "2"])
    assert code == 0 and out is None and json.loads(text)["passed"]


def test_console_script_module():
    proc = subprocess.run([sys.executable, "-m", "swcext.cli", "classify", "--n", "4", "--q", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["report"]["pseudo_injective_for_all_groups"] is False
