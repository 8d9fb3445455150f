"""Numbered acceptance criteria.

Each test prints one ``criterion N: PASS|FAIL`` line and then asserts.  The
expected values of criteria 1-3 are transcribed literally from the published
worked example; where our exact computation disagrees with the published
value the criterion fails and the assertion message shows the differing cells.
"""
import json
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest
import sympy

from superkoszul import grassmann as gm
from superkoszul.actions import (differential_at_identity, is_subalgebra, is_transitive_at,
                                 reconstruct_action, stabilizer_subalgebra, two_leg_from_action)
from superkoszul.cli import main
from superkoszul.description import bundled, gamma_cell_from_data, section_from_data
from superkoszul.homogeneous import (SIDES, check_by_fields, check_by_tensor_identity, coset_trivialize,
                                     coset_untrivialize, invariant_section_solve, is_invariant_section,
                                     laurent_ansatz, quotient_action_check)
from superkoszul.koszul import delta_sections, hopf_axiom_suite, inv_pullback, mu_pullback
from superkoszul.poly import SPoly
from superkoszul.shcp import validate_shcp

from oracles import same_span, sympy_differential

pytestmark = pytest.mark.acceptance

GL11 = str(bundled("gl11.shcp"))
T1, T2 = 2, 3
TT = (T1, T2)
WEDGES = [(), (T1,), (T2,), TT]
half, quarter = Fraction(1, 2), Fraction(1, 4)


def report(capsys, n, ok, elapsed, limit, detail=""):
    ok = ok and elapsed < limit
    with capsys.disabled():
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s, limit {limit}s)"
        print("\n" + line + (f" {detail}" if detail else ""))
    return ok


def run_machine(capsys, *argv):
    code = main(list(argv) + ["--format", "machine"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def diff_cells(got, expected):
    return {k: (got.get(k), expected.get(k)) for k in set(got) | set(expected) if got.get(k) != expected.get(k)}


# -- 1. twisted product table ------------------------------------------------------------

def published_gamma_table():
    """The 16 cells of the published table.  Cells are {(X exponents, wedge): coeff}
    with the coefficient a function of the second group argument."""
    y1, y2 = SPoly.var("y1@2"), SPoly.var("y2@2")
    r = y1 ** -1 * y2          # y1^-1 y2
    s = y2 ** -1 * y1          # y2^-1 y1
    one = SPoly.const(1)
    X1, X2, none = (1, 0), (0, 1), (0, 0)

    def sum_x(c, wedge=()):
        # c * (X1 + X2) * wedge
        return {(X1, wedge): c, (X2, wedge): c}

    return {
        ((), ()): {(none, ()): one},
        ((), (T1,)): {(none, (T1,)): one},
        ((), (T2,)): {(none, (T2,)): one},
        ((), TT): {(none, TT): one},
        ((T1,), ()): {(none, (T1,)): r},
        ((T1,), (T1,)): {},
        ((T1,), (T2,)): {(none, TT): s, **sum_x(-half * s)},
        ((T1,), TT): sum_x(half * r, (T1,)),
        ((T2,), ()): {(none, (T2,)): s},
        ((T2,), (T1,)): {(none, TT): -s, **sum_x(-half * s)},
        ((T2,), (T2,)): {},
        ((T2,), TT): sum_x(-half * s, (T2,)),
        (TT, ()): {(none, TT): one},
        (TT, (T1,)): sum_x(-half * one, (T1,)),
        (TT, (T2,)): sum_x(half * one, (T2,)),
        (TT, TT): {((2, 0), ()): quarter * one, ((1, 1), ()): half * one, ((0, 2), ()): quarter * one},
    }


def test_criterion_1_gamma_table(gl11, capsys):
    start = time.perf_counter()
    code, data = run_machine(capsys, "gamma-table", "--file", GL11)
    idx = {n: i for i, n in enumerate(gl11.sla.names)}
    got = {(tuple(idx[n] for n in c["row"]), tuple(idx[n] for n in c["col"])): gamma_cell_from_data(gl11, c["value"])
           for c in data["cells"]}
    elapsed = time.perf_counter() - start
    expected = published_gamma_table()
    bad = {k: diff_cells(got[k], expected[k]) for k in expected if got[k] != expected[k]}
    ok = report(capsys, 1, code == 0 and len(got) == 16 and not bad, elapsed, 1,
                f"{16 - len(bad)}/16 cells match")
    assert ok, bad


# -- 2. pullback table of the first even coordinate ------------------------------------------

def published_mu_phi1():
    x1 = SPoly.var("y1@1")
    y1, y2 = SPoly.var("y1@2"), SPoly.var("y2@2")
    return {
        ((), ()): x1 * y1,
        ((T1,), (T2,)): -half * x1 * y1,
        ((T2,), (T1,)): -half * y2 ** -1 * x1 * y1 ** 2,
        (TT, TT): quarter * x1 * y1,
    }


def test_criterion_2_mu_pullback_table(gl11, capsys):
    start = time.perf_counter()
    code, data = run_machine(capsys, "mul-table", "--file", GL11, "--section", "y1")
    T = section_from_data(gl11, data["table"])
    elapsed = time.perf_counter() - start
    expected = published_mu_phi1()
    got = {(P, Q): T[(P, Q)] for P in WEDGES for Q in WEDGES}
    bad = {k: (got[k], expected.get(k, SPoly())) for k in got if got[k] != expected.get(k, SPoly())}
    ok = report(capsys, 2, code == 0 and not bad, elapsed, 1, f"{16 - len(bad)}/16 cells match")
    assert ok, bad


# -- 3. reconstructed left multiplication in coordinates ------------------------------------

def published_action_formulas():
    """The four published formulas.  Group coordinates: x_i is phi_i and
    theta_i is Phi_i; y_i, xi_i are the coordinates of the acted-on copy."""
    x1, x2 = SPoly.var("y1"), SPoly.var("y2")
    th1, th2 = SPoly.var("coord.T1", odd=True), SPoly.var("coord.T2", odd=True)
    y1, y2 = SPoly.var("M.y1"), SPoly.var("M.y2")
    xi1, xi2 = SPoly.var("M.xi1", odd=True), SPoly.var("M.xi2", odd=True)
    return {
        "y1": x1 * y1 * (1 + th1 * th2) + x1 * xi2 * th1,
        "y2": x2 * y2 * (1 + th1 * th2) + x2 * xi1 * th2,
        "xi1": x1 * xi1 * (1 + th1 * th2) + x1 * y2 * th1,
        "xi2": x2 * xi2 * (1 - th1 * th2) + x2 * y1 * th2,
    }


def test_criterion_3_action_formulas(capsys):
    start = time.perf_counter()
    code, data = run_machine(capsys, "action", "--file", GL11, "--action", "left")
    got = {g: SPoly.from_data(f) for g, f in data["coordinates"].items()}
    elapsed = time.perf_counter() - start
    expected = published_action_formulas()
    bad = {g: (str(got[g]), str(expected[g])) for g in expected if got[g] != expected[g]}
    ok = report(capsys, 3, code == 0 and not bad, elapsed, 1, f"{4 - len(bad)}/4 formulas match")
    assert ok, bad


# -- 4. action reconstruction agrees with the group law -------------------------------------

def test_criterion_4_two_routes_agree(gl11_desc, capsys):
    start = time.perf_counter()
    action = gl11_desc.actions["left"]
    dic = gl11_desc.model.dictionary
    # the acted-on copy of G uses (y1, y2, xi1, xi2) for the model's (x1, x2, th1, th2)
    rename = {"y1": "x1", "y2": "x2", "xi1": "th1", "xi2": "th2"}
    two_leg = two_leg_from_action(action, reconstruct_action(action), {m: dic[c] for m, c in rename.items()})
    bad = [m for m, c in rename.items() if two_leg[m] != mu_pullback(dic[c])]
    elapsed = time.perf_counter() - start
    ok = report(capsys, 4, not bad, elapsed, 2)
    assert ok, bad


# -- 5. Grassmann-point oracle ------------------------------------------------------------

def test_criterion_5_grassmann_oracle(capsys):
    start = time.perf_counter()
    code, data = run_machine(capsys, "oracle", "--file", GL11, "--seed", "0", "--count", "50", "--aux", "4")
    elapsed = time.perf_counter() - start
    ok = report(capsys, 5, code == 0 and data["aux"] == 4 and data["matches"] == 50, elapsed, 5,
                f"{data['matches']}/50 exact")
    assert ok, data["failures"]


# -- 6. group axioms and mutation fixtures --------------------------------------------------

def test_criterion_6_axiom_suite(gl11, torus, nil3, bracket_mutant, sigma_mutant, capsys):
    start = time.perf_counter()
    problems = []
    for pair in (gl11, torus, nil3):
        problems += [f"{pair.name}: {w}" for w in hopf_axiom_suite(pair)]
        ds = delta_sections(pair)
        tables = {k: mu_pullback(s) for k, s in ds.items()}
        invs = {k: inv_pullback(s) for k, s in ds.items()}
        rng = random.Random(6)
        for _ in range(5):
            psi, chi, omega = (gm.random_point(pair, rng, 2 * pair.sla.q) for _ in range(3))
            if not gm.associativity_probe(pair, psi, chi, omega, tables):
                problems.append(f"{pair.name}: associativity probe")
            if not gm.unit_inverse_probe(pair, psi, tables, invs):
                problems.append(f"{pair.name}: unit/inverse probe")
    bracket = validate_shcp(bracket_mutant.pair) + hopf_axiom_suite(bracket_mutant.pair)
    sigma = validate_shcp(sigma_mutant.pair) + hopf_axiom_suite(sigma_mutant.pair)
    if "jacobi: (T1,T1,T2)" not in bracket or "associativity fails for y1 at (T2,T1,T1^T2)" not in bracket:
        problems.append(f"bracket mutant witnesses: {bracket}")
    if ("infinitesimal compatibility fails for X1 at [T1,T1]" not in sigma
            or "second-leg U(g0)-linearity fails for y1 under X1 at (T1,T2)" not in sigma):
        problems.append(f"sigma mutant witnesses: {sigma}")
    elapsed = time.perf_counter() - start
    ok = report(capsys, 6, not problems, elapsed, 30)
    assert ok, problems


# -- 7. stabilizers and transitivity ------------------------------------------------------

def test_criterion_7_stabilizer_and_transitivity(gl11_desc, capsys):
    import yaml
    raw = yaml.safe_load(Path(GL11).read_text())["action"]["std"]
    start = time.perf_counter()
    acts = gl11_desc.actions
    e = {"y1": 1, "y2": 1}
    problems = []
    if stabilizer_subalgebra(acts["left"], e) != []:
        problems.append("left stabilizer is not trivial")
    if not is_transitive_at(acts["left"], e, True).transitive:
        problems.append("left multiplication is not transitive")
    conj = stabilizer_subalgebra(acts["conj"], e)
    if not same_span([[v.get(i, 0) for i in range(4)] for v in conj], sympy.eye(4).tolist()):
        problems.append("conjugation stabilizer at e is not the whole algebra")
    point = {"y": 1}
    std = stabilizer_subalgebra(acts["std"], point)
    oracle = sympy_differential(raw["rho"], point, raw["even"] + raw.get("odd", []), gl11_desc.pair.sla.names)
    if sympy.Matrix(differential_at_identity(acts["std"], point)) != oracle:
        problems.append("std differential disagrees with the oracle")
    if not same_span([[v.get(i, 0) for i in range(4)] for v in std], [list(v) for v in oracle.nullspace()]):
        problems.append("std stabilizer is not the oracle nullspace")
    if not is_subalgebra(gl11_desc.pair, std):
        problems.append("std stabilizer is not bracket-closed")
    elapsed = time.perf_counter() - start
    ok = report(capsys, 7, not problems, elapsed, 1)
    assert ok, problems


# -- 8. homogeneous space of the Borel sub-pair -----------------------------------------------

def test_criterion_8_homogeneous_suite(gl11_desc, capsys):
    start = time.perf_counter()
    spec = gl11_desc.subpairs["borel"]
    ansatz = laurent_ansatz(list(spec.pair.group.gens), gl11_desc.ansatz_degree["borel"])
    problems = []
    solved = {side: invariant_section_solve(spec, ansatz, side) for side in SIDES}
    other = {"G/H": "H\\G", "H\\G": "G/H"}
    for side, basis in solved.items():
        if not basis:
            problems.append(f"{side}: no invariants")
        for s in basis:
            if not (check_by_fields(s, spec, side) and check_by_tensor_identity(s, spec, side)):
                problems.append(f"{side}: {s} fails a membership route")
            if coset_untrivialize(coset_trivialize(s, spec, side), spec, side) != s:
                problems.append(f"{side}: {s} does not round-trip")
            if not quotient_action_check(s, spec, side):
                problems.append(f"{side}: {s} has no quotient action")
            if not is_invariant_section(inv_pullback(s), spec, other[side]):
                problems.append(f"{side}: i^* of {s} is not {other[side]}-invariant")
    elapsed = time.perf_counter() - start
    ok = report(capsys, 8, not problems, elapsed, 5)
    assert ok, problems


# -- 9. core property suites ----------------------------------------------------------------

CORE_PROPERTIES = [
    "test_algebra.py::test_straightening_is_multiplicative_gl11",
    "test_algebra.py::test_straightening_matches_rewriting_oracle_nil3",
    "test_algebra.py::test_coassociativity_up_to_degree_4",
    "test_algebra.py::test_antipode_axiom_up_to_degree_4",
    "test_algebra.py::test_gamma_is_a_coalgebra_morphism",
    "test_algebra.py::test_gamma_hat_roundtrip_from_uea",
    "test_algebra.py::test_gamma_hat_roundtrip_from_tensor",
    "test_hopf.py::test_hopf_axioms_on_random_elements",
    "test_koszul.py::test_evaluation_is_even_linear",
]


def test_criterion_9_core_property_suites(capsys):
    here = Path(__file__).parent
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider"]
                          + [str(here / t) for t in CORE_PROPERTIES],
                          capture_output=True, text=True, cwd=here.parent)
    elapsed = time.perf_counter() - start
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr
    ok = report(capsys, 9, proc.returncode == 0, elapsed, 60, tail)
    assert ok, proc.stdout[-3000:]
