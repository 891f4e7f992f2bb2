import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from chevparab.cli import main

sys.path.insert(0, str(Path(__file__).parent))
from regen_goldens import GOLDEN, cases  # noqa: E402


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name,argv", list(cases()))
def test_goldens(name, argv, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_roots_A2(capsys):
    code, out, _ = run(["roots", "--type", "A2"], capsys)
    d = json.loads(out)
    assert code == 0 and d["count"] == 6 and len(d["roots"]) == 6 and d["schema_version"] == 1


def test_structconsts_G2_all(capsys):
    code, out, _ = run(["structconsts", "--type", "G2", "--all"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows
    assert {abs(int(r["C"])) for r in rows} <= {1, 2, 3}
    assert any(abs(int(r["C"])) == 3 for r in rows)
    code, out, _ = run(["structconsts", "--type", "G2", "--format", "json"], capsys)
    assert all(r["a"][0] != "-" for r in json.loads(out)["constants"])


def test_classify_exit_codes(capsys):
    code, out, _ = run(["classify", "--type", "A11", "--blocks", "5,1,1,5", "--ring", "Z_laurent"], capsys)
    assert code == 1 and json.loads(out)["verdict"] == "not_finitely_presented"
    code, out, _ = run(
        ["classify", "--type", "A11", "--blocks", "1,5,1,5", "--ring", "Z_laurent", "--le-status", "yes"], capsys
    )
    assert code == 0 and json.loads(out)["verdict"] == "finitely_presented"
    code, out, _ = run(["classify", "--type", "G2", "--I", "long", "--ring", "Fq_laurent", "--S", "2"], capsys)
    d = json.loads(out)
    assert code == 1 and d["reasons"] and d["S_size"] == 2
    code, out, _ = run(["classify", "--type", "G2", "--I", "long", "--ring", "Fq_laurent", "--S", "3"], capsys)
    assert code == 0
    code, out, _ = run(
        ["classify", "--type", "G2", "--I", "long", "--ring", "F5_laurent", "--le-status", "yes"], capsys
    )
    d = json.loads(out)
    assert code == 2 and d["verdict"] == "unknown" and d["reasons"][0]["rule"] == "exceptional_g2_long_root"
    code, out, _ = run(["classify", "--type", "A3", "--I", "2", "--ring", "OS", "--char", "5", "--S", "1"], capsys)
    assert code == 2 and json.loads(out)["refused"]


def test_present_and_verify(capsys):
    code, out, _ = run(["present", "--type", "A2", "--I", "1", "--ring", "Z", "--truncate", "T=1,exp=0",
                        "--format", "text"], capsys)
    assert code == 0 and out == (GOLDEN / "present_A2_I1_Z_T1.txt").read_text()
    code, out, _ = run(["present", "--type", "A2", "--I", "1", "--ring", "F5_laurent", "--builder", "nvb"], capsys)
    d = json.loads(out)
    assert code == 0 and d["finite"] and d["relators"]
    code, out, _ = run(["verify", "--type", "A3", "--I", "1", "--ring", "F5_laurent", "--builder", "nvb",
                        "--sample", "100", "--seed", "3"], capsys)
    d = json.loads(out)
    assert code == 0 and d["ok"] and d["presentation"]["total"] == 100
    code, out, _ = run(["verify", "--type", "A2", "--ring", "Z_laurent", "--builder", "borel", "--template",
                        "--model", "sln"], capsys)
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(["verify", "--type", "B2", "--I", "2", "--ring", "Z_laurent", "--retract", "--filtration"],
                       capsys)
    d = json.loads(out)
    assert code == 0 and d["retract"]["ok"] and d["filtration"]["ok"]


def test_refusals_exit_2(capsys):
    code, out, err = run(["present", "--type", "G2", "--I", "long", "--ring", "F5_laurent", "--builder", "nvb"],
                         capsys)
    assert code == 2 and json.loads(out)["refused"] and "refused" in err
    code, out, _ = run(["present", "--type", "A2", "--ring", "Z_laurent", "--builder", "borel"], capsys)
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["roots"],
        ["roots", "--type", "Q7"],
        ["parabolic-info", "--type", "A3", "--I", "1", "--blocks", "2,2"],
        ["parabolic-info", "--type", "A3", "--I", "9"],
        ["parabolic-info", "--type", "A3", "--I", "long"],
        ["parabolic-info", "--type", "A3", "--I", "1", "--n", "1"],
        ["toral", "--type", "A2", "--a", "a1"],
        ["classify", "--type", "A2", "--ring", "nowhere"],
        ["present", "--type", "A2", "--truncate", "T=x"],
    ],
)
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 64 and err


def test_toral_and_example(capsys):
    code, out, _ = run(["toral", "--type", "A2", "--a", "a1", "--b", "a2"], capsys)
    d = json.loads(out)
    assert code == 0 and d["toral_constant"] == 3 and abs(d["pairs"][0]["n"]) == 3
    code, out, _ = run(["example-1-2"], capsys)
    d = json.loads(out)
    assert d["P1"]["verdict"] == "finitely_presented" and d["P2"]["verdict"] == "not_finitely_presented"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "chevparab", "roots", "--type", "B2"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["count"] == 8
