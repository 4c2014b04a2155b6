import json
import subprocess
import sys

from hopf_toprec.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--trees", "2")
    assert code == 0 and out.splitlines() == ["(|,(|,|))", "((|,|),|)"]
    code, out, _ = run(capsys, "enumerate", "--graphs", "3", "2")
    assert code == 0 and len(out.splitlines()) == 5


def test_star_and_coproduct(capsys):
    assert run(capsys, "star", "1", "1")[1] == "(12) + (21)"
    assert run(capsys, "coproduct", "1")[1] == "e (x) (1) + (1) (x) e"
    assert run(capsys, "coproduct", "(|,|)", "--reduced")[1] == "0"
    assert run(capsys, "coproduct", "((|,|),|)", "--iterate", "1")[1] == "(|,|) (x) (|,|)"


def test_formats(capsys):
    code, out, _ = run(capsys, "--format", "json", "antipode", "(|,|)")
    assert json.loads(out) == {"terms": [{"basis": {"left": {"leaf": True}, "right": {"leaf": True}}, "coef": "-1"}]}
    code, out, _ = run(capsys, "expand", "--genus", "0", "--order", "2", "--step", "--format", "latex")
    assert out == r"K_p(q,\bar q)(W^0_3(q,p_1,p_2)W^0_2(\bar q,p_3)+W^0_2(q,p_1)W^0_3(\bar q,p_2,p_3))"


def test_other_commands(capsys):
    assert run(capsys, "product", "W[g=0,k=3](p,p1,p2)", "W[g=0,k=3](p,p2,p3)")[1] == "W[g=0,k=4](p,p1,p2,p3)"
    assert run(capsys, "phi", "• •")[1] == "(|,(|,|))"
    assert run(capsys, "phi", "--inverse", "((|,|),|)")[1] == "•[•]"
    assert run(capsys, "exp-series", "2")[1].splitlines()[-1] == "2: •[•] + • •"
    assert run(capsys, "quantize", "(|,|)")[1] == "(|,|);loops=[(0,1)]"
    assert run(capsys, "expand", "--genus", "1", "--order", "1")[1] == "K[p;q1,qb1](W2(q1,qb1))"


def test_wseries_summary(capsys):
    assert run(capsys, "wseries", "1")[1] == "W3^0 + h*W1^1"
    assert run(capsys, "wseries", "2")[1] == "W4^0 + h*W2^1"


def test_exit_codes(capsys, monkeypatch):
    assert run(capsys, "antipode", "(|,(")[0] == 2
    assert run(capsys, "enumerate", "--graphs", "1", "2")[0] == 3
    assert run(capsys, "enumerate", "--trees", "9")[0] == 3
    monkeypatch.setenv("HOPF_TOPREC_MAX_ORDER", "10")
    assert run(capsys, "enumerate", "--trees", "9")[0] == 0
    assert run(capsys, "check", "nosuch")[0] == 3
    assert run(capsys, "star", "1", "(|,|)")[0] == 3


def test_out_file(capsys, tmp_path):
    target = tmp_path / "o.txt"
    assert run(capsys, "--out", str(target), "star", "(|,|)", "(|,|)")[1] == ""
    assert target.read_text() == "(|,(|,|)) + ((|,|),|)\n"


def test_check_io(capsys):
    code, out, _ = run(capsys, "check", "io")
    assert code == 0 and "all passed" in out


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "hopf_toprec.cli", "check", "3"], capture_output=True, text=True)
    assert res.returncode == 0, res.stdout + res.stderr
