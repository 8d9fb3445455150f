import json
from fractions import Fraction
import subprocess
import sys

import pytest

from superkoszul.cli import main, parse_point
from superkoszul.description import bundled, section_from_data
from superkoszul.koszul import delta_sections, mu_pullback

GL11 = str(bundled("gl11.shcp"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "--file", GL11)
    assert code == 0 and out.rstrip().endswith("valid")
    code, out, _ = run(capsys, "validate", "--file", str(bundled("empty.shcp")))
    assert code == 0
    code, out, _ = run(capsys, "validate", "--file", str(bundled("mutations/gl11_bracket.shcp")))
    assert code == 1
    assert "  - jacobi: (T1,T1,T2)" in out.splitlines()


def test_validate_machine_report(capsys):
    code, out, _ = run(capsys, "validate", "--file", str(bundled("mutations/gl11_sigma_identity.shcp")),
                       "--format", "machine")
    data = json.loads(out)
    assert code == 1 and data["valid"] is False
    assert "infinitesimal compatibility fails for X1 at [T1,T1]" in data["report"]["pair"]


def test_mul_table_torus(capsys):
    code, out, _ = run(capsys, "mul-table", "--file", str(bundled("torus.shcp")), "--section", "y1")
    assert code == 0
    assert "| 1     | x1*y1 |" in out.splitlines()


def test_mul_table_first_odd_coordinate(capsys):
    """Frozen after the Grassmann-oracle comparison."""
    code, out, _ = run(capsys, "mul-table", "--file", GL11, "--section", "T1")
    assert code == 0
    assert out == (
        "mu^*(T1)\n"
        "| X \\ Y | 1        | T1 | T2 | T1∧T2 |\n"
        "|-------|----------|----|----|-------|\n"
        "| 1     | 0        | 1  | 0  | 0     |\n"
        "| T1    | y1^-1*y2 | 0  | 0  | 0     |\n"
        "| T2    | 0        | 0  | 0  | 0     |\n"
        "| T1∧T2 | 0        | 0  | 0  | 0     |\n")


def test_mul_table_machine_dump_round_trips(gl11, capsys):
    for name, s in delta_sections(gl11).items():
        _, out, _ = run(capsys, "mul-table", "--file", GL11, "--section", name, "--format", "machine")
        assert section_from_data(gl11, json.loads(out)["table"]) == mu_pullback(s)


def test_gamma_table_small_cases(capsys):
    _, out, _ = run(capsys, "gamma-table", "--file", str(bundled("torus.shcp")))
    assert out.splitlines()[1:] == ["| X \\ Y | 1 |", "|-------|---|", "| 1     | 1 |"]
    _, out, _ = run(capsys, "gamma-table", "--file", str(bundled("odd_line.shcp")))
    assert out.splitlines()[-2:] == ["| 1     | 1 | T |", "| T     | T | 0 |"]


def test_gamma_table_nilpotent(capsys):
    code, out, _ = run(capsys, "gamma-table", "--file", str(bundled("nilpotent_q3.shcp")), "--format", "machine")
    cells = {(tuple(c["row"]), tuple(c["col"])): c["text"] for c in json.loads(out)["cells"]}
    assert code == 0 and len(cells) == 64
    assert cells[(("T1",), ("T1",))] == "1/2*Z"
    assert cells[(("T1", "T2", "T3"), ("T1", "T2", "T3"))] == "-1/8*Z^3"
    assert cells[(("T2",), ("T1",))] == "-T1∧T2"


def test_action_left_in_coordinates(capsys):
    code, out, _ = run(capsys, "action", "--file", GL11, "--action", "left")
    assert code == 0
    assert "action axioms: ok" in out
    lines = [ln.strip() for ln in out.splitlines()]
    assert "a^*(y1) = y1*x1 - x1*xi2*Phi_T1 + 1/2*y1*x1*Phi_T1*Phi_T2" in lines
    assert "a^*(xi2) = x2*xi2 + y1*x2*Phi_T2 - 1/2*x2*xi2*Phi_T1*Phi_T2" in lines


def test_stabilizer_and_transitivity(capsys):
    _, out, _ = run(capsys, "stabilizer", "--file", GL11, "--action", "left")
    assert out.startswith("stabilizer at y1=1,y2=1: trivial (0|0)")
    _, out, _ = run(capsys, "stabilizer", "--file", GL11, "--action", "std")
    assert out.splitlines() == ["stabilizer at y=1: span{X2, T1} (1|1)", "bracket-closed: yes"]
    _, out, _ = run(capsys, "stabilizer", "--file", GL11, "--action", "conj")
    assert "(2|2)" in out
    _, out, _ = run(capsys, "transitive", "--file", GL11, "--action", "left")
    assert out.startswith("transitive: differential rank 2|2 onto 2|2")
    _, out, _ = run(capsys, "transitive", "--file", GL11, "--action", "std", "--point", "y=0")
    assert out.startswith("not transitive: differential rank 0|0")
    _, out, _ = run(capsys, "transitive", "--file", GL11, "--action", "left", "--no-reduced-transitive")
    assert out.startswith("not transitive")


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", "--file", GL11, "--subpair", "borel")
    assert code == 0
    assert out.splitlines() == ["2 invariant sections for G/H (borel, degree 2):", "[0] 1: 1", "[1] T2: y1^-1*y2"]
    code, out, _ = run(capsys, "invariants", "--file", GL11, "--subpair", "borel", "--side", "H\\G")
    assert out.splitlines()[-1] == "[1] T2: 1"


def test_oracle_sweep(capsys):
    code, out, _ = run(capsys, "oracle", "--file", GL11, "--seed", "1", "--count", "50")
    assert code == 0 and out.startswith("50/50 exact matches")
    code, out, _ = run(capsys, "oracle", "--file", str(bundled("mutations/gl11_sigma_identity.shcp")),
                       "--seed", "1", "--count", "5")
    assert code == 1 and out.startswith("0/5 exact matches")


@pytest.mark.parametrize("argv, fragment", [
    (["mul-table", "--file", GL11], "--section is required"),
    (["mul-table", "--file", GL11, "--section", "q"], "unknown section 'q'"),
    (["stabilizer", "--file", GL11], "several action blocks"),
    (["stabilizer", "--file", GL11, "--action", "nope"], "unknown action 'nope'"),
    (["stabilizer", "--file", GL11, "--action", "std", "--point", "y"], "--point expects k=v"),
    (["stabilizer", "--file", GL11, "--action", "std", "--point", "z=1"], "not an even generator"),
    (["stabilizer", "--file", GL11, "--action", "left", "--point", "y1=0"], "evaluated to zero"),
    (["oracle", "--file", str(bundled("torus.shcp"))], "has no model block"),
    (["invariants", "--file", str(bundled("torus.shcp"))], "has no subpair block"),
    (["validate", "--file", "/nonexistent.shcp"], "error: "),
])
def test_usage_errors_exit_2(capsys, argv, fragment):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert err.startswith("error: ") and fragment in err


def test_parse_error_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.shcp"
    bad.write_text("name: x\nalgebra:\n  even: [A]\n  odd: []\nreduced-group:\n  torus: [y]\n  tangent:\n    A: {y: 0.5}\n")
    code, _, err = run(capsys, "validate", "--file", str(bad))
    assert code == 2 and f"{bad}:8: inexact literal" in err


def test_argparse_errors_exit_2(capsys):
    assert main(["frobnicate"]) == 2
    assert main(["validate"]) == 2


def test_out_file_and_determinism(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert main(["action", "--file", GL11, "--action", "std", "--format", "machine", "--out", str(p)]) == 0
    assert capsys.readouterr().out == ""
    assert paths[0].read_bytes() == paths[1].read_bytes()
    code, out, _ = run(capsys, "oracle", "--file", GL11, "--seed", "3", "--count", "4", "--format", "machine")
    code2, out2, _ = run(capsys, "oracle", "--file", GL11, "--seed", "3", "--count", "4", "--format", "machine")
    assert out == out2 and json.loads(out)["matches"] == 4


def test_parse_point():
    assert parse_point(None) == {}
    assert parse_point("y1=2, y2=-1/3") == {"y1": 2, "y2": Fraction(-1, 3)}


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "superkoszul", "validate", "--file", GL11],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.rstrip().endswith("valid")
