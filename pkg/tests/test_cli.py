import json
import subprocess
import sys

import pytest

from segrecm.cli import main


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "segrecm", *args], capture_output=True)
    return proc.returncode, proc.stdout.decode(), proc.stderr.decode()


def test_segre3_json():
    code, out, _ = run("segre3", "--m", "2", "--n", "2", "--p", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["counts"]["cm"] == 13 and data["counts"]["conic"] == 7


def test_segre3_csv():
    code, out, _ = run("segre3", "--m", "2", "--n", "3", "--p", "4", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "i,j,cm,conic,pairing,a1,r1,a2,r2"
    assert sum(",CM," in l for l in lines) == 38
    assert sum(",true," in l for l in lines) == 18


def test_segre3_bad_params():
    code, _, err = run("segre3", "--m", "1", "--n", "2", "--p", "2")
    assert code == 2 and "m, n, p >= 2" in err


def test_veronese2_outputs():
    code, out, _ = run("veronese2", "--m", "2", "--n", "2", "--c", "1", "--d", "1")
    assert code == 0
    assert "CM set:    {-1, 0, 1}" in out and "conic set: {-1, 0, 1}" in out and "= 3, agree" in out
    code, out, _ = run("veronese2", "--m", "3", "--n", "2", "--c", "2", "--d", "3")
    assert code == 0 and "guaranteed CM range: [-8, 3]" in out
    assert "CM outside guaranteed range: -10, 5" in out
    assert run("veronese2", "--m", "2", "--n", "2", "--c", "2", "--d", "2")[0] == 2


def test_hilbert():
    code, out, _ = run("hilbert", "segre(poly(2), poly(2))")
    assert code == 0
    assert "series: (1+t)/(1-t)^3" in out and "a = -2" in out and "r = 0" in out and "e = 2" in out
    code, out, _ = run("hilbert", "shift(poly(3), -2)", "--coeffs=-3:0", "--format", "json")
    data = json.loads(out)
    assert data["series"] == "t^-2/(1-t)^3" and (data["a"], data["r"]) == (-5, -2)
    assert data["coefficients"] == {"-3": 0, "-2": 1, "-1": 3, "0": 6}
    code, _, err = run("hilbert", "veronese(poly(2)")
    assert code == 2 and "position 16" in err


def test_window_and_svg(tmp_path):
    code, out, _ = run("segre3", "--m", "2", "--n", "2", "--p", "2", "--window=-1:1", "--format", "csv")
    assert code == 0 and len(out.splitlines()) == 10
    svg_a, svg_b = tmp_path / "a.svg", tmp_path / "b.svg"
    for path, threads in ((svg_a, "1"), (svg_b, "4")):
        assert run("veronese2", "--m", "2", "--n", "3", "--c", "2", "--d", "1", "--format", "svg",
                   "--out", str(path), "--threads", threads)[0] == 0
    assert svg_a.read_bytes() == svg_b.read_bytes()
    fig = tmp_path / "map.png"
    assert run("segre3", "--m", "2", "--n", "2", "--p", "3", "--figure", str(fig))[0] == 0
    assert fig.read_bytes().startswith(b"\x89PNG")


def test_usage_errors():
    assert run("segre3", "--m", "2")[0] == 2
    assert run("verify", "--families", "nonsense")[0] == 2


def test_verify_small_and_fault(tmp_path):
    code, out, _ = run("verify", "--max-param", "2", "--format", "json", "--figures", str(tmp_path))
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert (tmp_path / "verify_summary.svg").exists()
    assert run("verify", "--max-param", "2", "--inject-fault", "segre3-cm-formula")[0] == 1


def test_main_in_process(capsys):
    assert main(["hilbert", "poly(2)", "--coeffs", "0:2"]) == 0
    assert "coefficients: 0:1 1:2 2:3" in capsys.readouterr().out


def test_verify_output_independent_of_threads():
    one = run("verify", "--max-param", "3", "--threads", "1")
    two = run("verify", "--max-param", "3", "--threads", "2")
    assert one[0] == two[0] == 0 and one[1] == two[1]
