import io
import json
import subprocess
import sys

import pytest

from cpnmahowald.burnside import BurnsideElement
from cpnmahowald.cli import main, parse_element, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_marks(capsys):
    code, out, _ = run(capsys, "marks", "--p", "2", "--n", "3", "--elem", "t:[0,1,0,0]")
    assert code == 0 and out.strip() == "[4, 4, 0, 0]"
    code, out, _ = run(capsys, "marks", "--p", "2", "--n", "2", "--elem", "z:[0,1,0]")
    assert code == 0 and out.strip() == "[0, 4, 0]"


def test_marks_json_roundtrip(capsys):
    code, out, _ = run(capsys, "marks", "--p", "3", "--n", "2", "--elem", "2+[C_9/C_3]-[C_9]", "--json")
    data = json.loads(out)
    assert code == 0
    x = BurnsideElement.from_json(data)
    assert BurnsideElement.from_json(data["element"]) == x
    assert parse_element(json.dumps(data), 3, 2) == x


@pytest.mark.parametrize("elem", ["t:[1,2", "t:[1,2,3]", "q:[1]", "[C_5]", "{bad json"])
def test_parse_errors_exit_2(capsys, elem):
    code, _, err = run(capsys, "marks", "--p", "2", "--n", "1", "--elem", elem)
    assert code == 2 and err


def test_marks_not_in_image_is_domain_error(capsys):
    code, _, err = run(capsys, "marks", "--p", "2", "--n", "1", "--elem", "marks:[1,0]")
    assert code == 3 and "NotInBurnsideImage" in err


def test_non_prime_is_usage_error(capsys):
    code, _, _ = run(capsys, "marks", "--p", "4", "--n", "1", "--elem", "1")
    assert code == 2


def test_mahowald_free_orbits_at_c4(capsys):
    code, out, _ = run(capsys, "mahowald", "--p", "2", "--n", "2", "--elem", "t:[2,0]", "--json")
    data = json.loads(out)
    assert code == 0 and data["degree"] == 1 and data["display"] == "η"


def test_mahowald_vector_order(capsys):
    # index i of a t-vector is the orbit C_{p^m}/C_{p^i}; t:[0,2] is the integer 2
    code, out, _ = run(capsys, "mahowald", "--p", "2", "--n", "2", "--elem", "t:[0,2]", "--json")
    data = json.loads(out)
    assert code == 0 and data["degree"] == 0 and data["residue"] == "2"


def test_mahowald_integer(capsys):
    code, out, _ = run(capsys, "mahowald", "--p", "2", "--n", "1", "--elem", "2")
    assert code == 0 and "degree 1" in out and "η" in out


def test_mahowald_odd_prime(capsys):
    code, out, _ = run(capsys, "mahowald", "--p", "3", "--n", "1", "--elem", "3", "--json")
    data = json.loads(out)
    assert code == 0 and data["degree"] == 3 and data["j"]["modulus"] == "3"
    code, out, _ = run(capsys, "mahowald", "--p", "3", "--n", "1", "--elem", "9", "--json")
    data = json.loads(out)
    assert data["degree"] == 7 and data["j"]["stem"] == 7


def test_mahowald_zero(capsys):
    code, _, err = run(capsys, "mahowald", "--p", "2", "--n", "2", "--elem", "0")
    assert code == 3 and "ZeroElement" in err


def test_mahowald_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("4[C_4/C_2] + 2[C_4]\n"))
    code, out, _ = run(capsys, "mahowald", "--p", "2", "--n", "3", "--elem", "-")
    assert code == 0 and "2ν" in out


def test_mahowald_file(capsys, tmp_path):
    f = tmp_path / "x.json"
    f.write_text(json.dumps(BurnsideElement(2, 2, (3, 1, 2)).to_json("marks")))
    code, out, _ = run(capsys, "mahowald", "--p", "2", "--n", "3", "--elem", f"@{f}", "--json")
    assert code == 0 and json.loads(out)["display"] == "2σ"
    code, _, _ = run(capsys, "mahowald", "--p", "2", "--n", "3", "--elem", f"@{tmp_path}/missing")
    assert code == 2


def test_mk_modes(capsys):
    code, out, _ = run(capsys, "mk", "--p", "2", "--n", "1", "--k", "2", "--json")
    assert code == 0 and json.loads(out)["basis"] == [["1", "-1"]]
    _, oracle, _ = run(capsys, "mk", "--p", "3", "--n", "2", "--k", "7", "--json")
    _, closed, _ = run(capsys, "mk", "--p", "3", "--n", "2", "--k", "7", "--mode", "closed", "--json")
    assert json.loads(oracle)["basis"] == json.loads(closed)["basis"]
    code, out, _ = run(capsys, "mk", "--p", "2", "--n", "2", "--k", "3", "--mode", "real", "--json")
    assert code == 0 and len(json.loads(out)["basis"]) == 2


def test_mk_bad_mode_and_degree(capsys):
    assert run(capsys, "mk", "--p", "2", "--n", "1", "--k", "2", "--mode", "fancy")[0] == 3
    assert run(capsys, "mk", "--p", "2", "--n", "1", "--k", "0")[0] == 3


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "examples", "--json")
    data = json.loads(out)
    assert code == 0 and data["ok"] and data["suites"][0]["suite"] == "examples"
    code, out, _ = run(capsys, "verify", "--suite", "burnside", "--max-n", "1", "--samples", "20")
    assert code == 0 and out.startswith("PASS")


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit) as err:
        main(["verify", "--suite", "nope"])
    assert err.value.code == 2


def test_parse_element_forms():
    assert parse_element("5", 2, 2) == BurnsideElement.scalar(2, 2, 5)
    assert parse_element("marks:[4,2]", 2, 1) == BurnsideElement(2, 1, (1, 2))
    with pytest.raises(UsageError):
        parse_element(json.dumps(BurnsideElement.scalar(3, 1, 1).to_json()), 2, 1)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cpnmahowald", "marks", "--p", "2", "--n", "1", "--elem", "t:[1,1]"],
        capture_output=True, text=True, env={"NO_COLOR": "1", "PATH": ""},
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "[3, 1]"
