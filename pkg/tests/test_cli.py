import json

import pytest

from chordalg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_cable_display(capsys, tmp_path):
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path),
                       "cable", "-n", "2", "cd[0-2,1-3]")
    assert code == 0
    assert out == "8*cd[0-2,1-3] + 8*cd[0-1,2-3]"


def test_cable_json(capsys, tmp_path):
    code, out, _ = run(capsys, "--json", "--cache-dir", str(tmp_path),
                       "cable", "-n", "2", "cd[0-2,1-3]")
    assert code == 0
    assert json.loads(out) == {"terms": {"cd[0-2,1-3]": "8",
                                         "cd[0-1,2-3]": "8"}}


def test_dim(capsys, tmp_path):
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path), "dim", "3")
    assert code == 0 and out == "3"
    assert (tmp_path / "basis_3.4tbasis").exists()


def test_reduce_relation_is_zero(capsys, tmp_path):
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path), "reduce",
                       "cd[0-2,1-3] - cd[0-2,1-3]")
    assert code == 0
    assert out.split() == ["0", "0"]


def test_equal_exit_codes(capsys, tmp_path):
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path), "equal",
                       "cd[0-2,1-3]", "cd[0-2,1-3]")
    assert code == 0 and out == "true"
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path), "equal",
                       "cd[0-2,1-3]", "cd[0-1,2-3]")
    assert code == 1 and out == "false"


def test_parse_error_exit_code(capsys, tmp_path):
    code, _, err = run(capsys, "--cache-dir", str(tmp_path),
                       "resolve", "cd[0-0]")
    assert code == 2
    assert "paired with itself" in err


def test_usage_error_exit_code(capsys):
    assert main(["no-such-command"]) == 2


def test_im_matrix(capsys, tmp_path):
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path),
                       "im", "cd[0-5,1-4,2-6,3-7]")
    assert code == 0
    rows = [line.split() for line in out.splitlines()]
    assert rows == [["0", "0", "-1", "-1"], ["0", "0", "-1", "-1"],
                    ["1", "1", "0", "-1"], ["1", "1", "1", "0"]]


def test_immanent(capsys, tmp_path):
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path),
                       "immanent", "cd[0-5,1-4,2-6,3-7]")
    assert code == 0 and out == "2[4] + 2[2,2]"
    code, out, _ = run(capsys, "--json", "--cache-dir", str(tmp_path),
                       "immanent", "cd[0-5,1-4,2-6,3-7]")
    assert json.loads(out) == {"[4]": 2, "[2,2]": 2}


def test_operators(capsys, tmp_path):
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path),
                       "deframe", "cd[0-2,1-3]")
    assert code == 0 and out == "cd[0-2,1-3] - cd[0-1,2-3]"
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path), "s",
                       "cd[0-2,1-3]")
    assert code == 0 and out == "2*cd[0-1]"
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path), "theta", "cd[]")
    assert code == 0 and out == "cd[0-1]"
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path), "d", "cd[0-1]")
    assert code == 0 and out == "-cd[0-2,1-3] + cd[0-1,2-3]"


def test_alexander_permanent_alpha(capsys, tmp_path):
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path),
                       "alexander", "cd[0-2,1-3]")
    assert code == 0 and out == "1"
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path),
                       "permanent", "cd[0-2,1-3]")
    assert code == 0 and out == "-1"
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path),
                       "alpha", "[2]", "cd[0-2,1-3]")
    assert code == 0 and out == "-1"


def test_tau_and_sym(capsys, tmp_path):
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path), "tau", "[2]")
    assert code == 0 and out == "-4*cd[0-2,1-3] + 4*cd[0-1,2-3]"
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path), "sym",
                       "fd{legs=2; v0=(L0,v1.2,v1.1); v1=(L1,v0.2,v0.1)}")
    assert code == 0 and out == "-4*cd[0-2,1-3] + 4*cd[0-1,2-3]"


def test_tau_bad_partition(capsys, tmp_path):
    code, _, err = run(capsys, "--cache-dir", str(tmp_path), "tau", "[1]")
    assert code == 2


def test_resolve_fd(capsys, tmp_path):
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path), "resolve",
                       "fd{legs=4; v0=(L0,L1,v1.0); v1=(v0.2,L2,L3)}")
    assert code == 0
    assert out == ("cd[0-3,1-4,2-5] - cd[0-2,1-4,3-5] "
                   "+ cd[0-1,2-5,3-4] - cd[0-1,2-4,3-5]")


def test_kcoeffs(capsys, tmp_path):
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path),
                       "kcoeffs", "--degree", "2", "--weight", "alpha:[2]")
    assert code == 0 and out == "[2] 1"


def test_cablepoly(capsys, tmp_path):
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path),
                       "cablepoly", "--degree", "2", "--weight", "alpha:[2]",
                       "cd[0-2,1-3]")
    assert code == 0 and out == "0 + 0*n - 1*n^2"


def test_cablepoly_json(capsys, tmp_path):
    code, out, _ = run(capsys, "--json", "--cache-dir", str(tmp_path),
                       "cablepoly", "--degree", "2", "--weight", "alpha:[2]",
                       "cd[0-2,1-3]")
    assert json.loads(out) == {"coeffs": ["0", "0", "-1"]}


def test_bad_weight_spec(capsys, tmp_path):
    code, _, err = run(capsys, "--cache-dir", str(tmp_path),
                       "kcoeffs", "--degree", "2", "--weight", "nonsense")
    assert code == 2 and "weight spec" in err


def test_verify_paper_examples(capsys, tmp_path):
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path),
                       "verify", "paper-examples")
    assert code == 0
    lines = out.splitlines()
    assert all(l.startswith("PASS") for l in lines[:-1])
    assert lines[-1].endswith("0 failed")


def test_cache_build(capsys, tmp_path):
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path),
                       "cache", "build", "4")
    assert code == 0
    assert "dim 6" in out
    assert (tmp_path / "basis_4.4tbasis").exists()


def test_byte_identical_reruns(capsys, tmp_path):
    _, out1, _ = run(capsys, "--cache-dir", str(tmp_path), "cable", "-n", "3",
                     "cd[0-2,1-3]")
    _, out2, _ = run(capsys, "--cache-dir", str(tmp_path), "cable", "-n", "3",
                     "cd[0-2,1-3]")
    assert out1 == out2
