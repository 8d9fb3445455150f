import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superkoszul.actions import orbit_map_pullback
from superkoszul.hopf import CoordHopf
from superkoszul.homogeneous import (SIDES, SubPairSpec, check_by_fields, check_by_tensor_identity,
                                     coset_trivialize, coset_untrivialize, invariant_section_solve,
                                     is_invariant_section, laurent_ansatz, quotient_action_check,
                                     trivialized_mul, validate_subpair)
from superkoszul.koszul import Section, delta_sections, inv_pullback, section_mul, unit_section
from superkoszul.poly import SPoly

X1, X2, T1, T2 = 0, 1, 2, 3


def v(name):
    return SPoly.var(name)


@pytest.fixture(scope="module")
def subpairs(gl11_desc):
    return gl11_desc.subpairs


@pytest.fixture(scope="module")
def solved(gl11_desc):
    out = {}
    for name, spec in gl11_desc.subpairs.items():
        ansatz = laurent_ansatz(list(spec.pair.group.gens), gl11_desc.ansatz_degree[name])
        for side in SIDES:
            out[(name, side)] = invariant_section_solve(spec, ansatz, side)
    return out


def whole_group(pair):
    return SubPairSpec(pair, [{i: Fraction(1)} for i in range(pair.n)], pair.group,
                       {g: v(g) for g in pair.group.gens}, [])


def trivial_subgroup(pair):
    return SubPairSpec(pair, [], CoordHopf.torus([]), {g: SPoly.const(1) for g in pair.group.gens},
                       [{i: Fraction(1)} for i in range(pair.n)])


# -- sub-pair data ---------------------------------------------------------------------

def test_bundled_subpairs_validate(subpairs):
    for spec in subpairs.values():
        assert validate_subpair(spec) == []


def test_extreme_subpairs_validate(gl11):
    assert validate_subpair(whole_group(gl11)) == []
    assert validate_subpair(trivial_subgroup(gl11)) == []


def test_non_closed_subspace_is_rejected(gl11, subpairs):
    spec = subpairs["borel"]
    bad = SubPairSpec(gl11, [{X1: 1}, {T1: 1}, {T2: 1}], spec.h_group, spec.quotient, [{X2: 1}])
    assert "h is not closed under the bracket" in validate_subpair(bad)


def test_bad_quotient_map_is_rejected(gl11, subpairs):
    spec = subpairs["diagonal"]
    bad = SubPairSpec(gl11, spec.h_basis, spec.h_group, {"y1": v("s"), "y2": v("s") + 1}, spec.complement)
    report = validate_subpair(bad)
    assert "quotient map does not respect the coproduct on y2" in report
    assert "quotient map does not respect the counit on y2" in report


def test_inhomogeneous_vector_is_rejected(gl11, subpairs):
    spec = subpairs["borel"]
    bad = SubPairSpec(gl11, [{X1: 1, T1: 1}], spec.h_group, spec.quotient)
    assert validate_subpair(bad) == ["a basis vector is not homogeneous"]


# -- membership ------------------------------------------------------------------------

@pytest.mark.parametrize("side", SIDES)
def test_unit_is_always_invariant(gl11, subpairs, side):
    for spec in list(subpairs.values()) + [whole_group(gl11), trivial_subgroup(gl11)]:
        assert is_invariant_section(unit_section(gl11), spec, side)


def test_first_coordinate_is_not_borel_invariant(gl11, subpairs):
    phi1 = delta_sections(gl11)["y1"]
    verdict = check_by_fields(phi1, subpairs["borel"])
    assert not verdict
    assert verdict.witnesses[0] == "translation invariance fails at 1"
    assert not check_by_tensor_identity(phi1, subpairs["borel"])


def test_unknown_side_is_rejected(gl11, subpairs):
    with pytest.raises(ValueError):
        is_invariant_section(unit_section(gl11), subpairs["borel"], "sideways")


# -- solver ----------------------------------------------------------------------------

def test_borel_invariants(solved):
    assert [s.table for s in solved[("borel", "G/H")]] == [{(): SPoly.const(1)}, {(T2,): v("y1") ** -1 * v("y2")}]
    assert [s.table for s in solved[("borel", "H\\G")]] == [{(): SPoly.const(1)}, {(T2,): SPoly.const(1)}]


def test_diagonal_invariants_are_functions_of_the_ratio(solved):
    """Frozen: three invariants, spanning (y2/y1)^k for |k| <= 1."""
    for side in SIDES:
        got = solved[("diagonal", side)]
        assert len(got) == 3
        tables = {frozenset(s.table.items()) for s in got}
        ratio = v("y1") * v("y2") ** -1
        assert tables == {frozenset({((), r)}) for r in (ratio, SPoly.const(1), ratio ** -1)}


def test_stab_std_invariant_dimensions(solved):
    assert len(solved[("stab-std", "G/H")]) == 4
    assert len(solved[("stab-std", "H\\G")]) == 6


def test_whole_group_invariants_are_constants(gl11):
    got = invariant_section_solve(whole_group(gl11), laurent_ansatz(["y1", "y2"], 1))
    assert [s.table for s in got] == [{(): SPoly.const(1)}]


def test_trivial_subgroup_leaves_everything_invariant(gl11):
    ansatz = laurent_ansatz(["y1", "y2"], 1)
    for side in SIDES:
        assert len(invariant_section_solve(trivial_subgroup(gl11), ansatz, side)) == 4 * len(ansatz)


def test_solver_outputs_pass_both_routes(solved, subpairs):
    for (name, side), basis in solved.items():
        for s in basis:
            assert check_by_fields(s, subpairs[name], side), (name, side, s)
            assert check_by_tensor_identity(s, subpairs[name], side), (name, side, s)


def test_invariants_form_a_subalgebra(solved, subpairs):
    for (name, side), basis in solved.items():
        for a in basis:
            for b in basis:
                assert is_invariant_section(section_mul(a, b), subpairs[name], side)


@pytest.mark.parametrize("name", ["borel", "diagonal", "stab-std"])
def test_inverse_exchanges_the_two_sides(solved, subpairs, name):
    for side, other in (("G/H", "H\\G"), ("H\\G", "G/H")):
        for s in solved[(name, side)]:
            assert is_invariant_section(inv_pullback(s), subpairs[name], other)


def random_combination(rng, basis, extras):
    coeffs = [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in basis]
    out = Section(basis[0].pair, {})
    for c, b in zip(coeffs, basis):
        out = out + b.scale(c)
    if rng.random() < 0.5:
        P, f = rng.choice(extras)
        out = out + Section(out.pair, {P: f * Fraction(rng.randint(1, 3))})
    return out


@pytest.mark.parametrize("side", SIDES)
def test_two_routes_agree_on_random_ansatz_sections(gl11, solved, subpairs, side):
    """Half the samples are invariant combinations, half are perturbed."""
    rng = random.Random(2024)
    spec = subpairs["borel"]
    extras = [(P, a) for P in gl11.uea.wedges() for a in laurent_ansatz(["y1", "y2"], 2)]
    seen = set()
    for _ in range(250):
        phi = random_combination(rng, solved[("borel", side)], extras)
        a = bool(check_by_fields(phi, spec, side))
        assert a == bool(check_by_tensor_identity(phi, spec, side))
        seen.add(a)
    assert seen == {True, False}


# -- trivialization ----------------------------------------------------------------------

def test_unit_trivializes_to_unit_table(gl11, subpairs):
    assert coset_trivialize(unit_section(gl11), subpairs["borel"]) == {(): SPoly.const(1)}


def test_borel_invariant_has_two_entry_table(solved, subpairs):
    a, b = solved[("borel", "G/H")]
    table = coset_trivialize(a + b, subpairs["borel"])
    assert table == {(): SPoly.const(1), (0,): v("y1") ** -1 * v("y2")}
    assert coset_untrivialize(table, subpairs["borel"]) == a + b


def test_trivial_subgroup_trivialization_is_the_table(gl11):
    spec = trivial_subgroup(gl11)
    phi = Section(gl11, {(): v("y1"), (T1,): v("y2"), (T1, T2): SPoly.const(3)})
    assert coset_trivialize(phi, spec) == {(): v("y1"), (0,): v("y2"), (0, 1): SPoly.const(3)}
    assert coset_untrivialize(coset_trivialize(phi, spec), spec) == phi


def test_trivialization_rejects_non_invariant_input(gl11, subpairs):
    with pytest.raises(ValueError, match="not invariant"):
        coset_trivialize(delta_sections(gl11)["y1"], subpairs["borel"])


def test_trivialization_requires_a_complement(gl11, subpairs):
    spec = subpairs["borel"]
    bare = SubPairSpec(gl11, spec.h_basis, spec.h_group, spec.quotient)
    with pytest.raises(ValueError, match="complement"):
        coset_trivialize(unit_section(gl11), bare)


@pytest.mark.parametrize("name", ["borel", "diagonal", "stab-std"])
def test_trivialization_round_trips(solved, subpairs, name):
    spec = subpairs[name]
    for side in SIDES:
        for s in solved[(name, side)]:
            assert coset_untrivialize(coset_trivialize(s, spec, side), spec, side) == s


@settings(max_examples=50)
@given(st.data())
def test_trivialization_is_multiplicative(solved, subpairs, data):
    name = data.draw(st.sampled_from(["borel", "stab-std"]))
    side = data.draw(st.sampled_from(SIDES))
    basis = solved[(name, side)]
    a, b = data.draw(st.sampled_from(basis)), data.draw(st.sampled_from(basis))
    spec = subpairs[name]
    lhs = coset_trivialize(section_mul(a, b), spec, side)
    assert lhs == trivialized_mul(coset_trivialize(a, spec, side), coset_trivialize(b, spec, side))


# -- quotient action ----------------------------------------------------------------------

@pytest.mark.parametrize("name", ["borel", "diagonal", "stab-std"])
def test_quotient_action_exists_on_invariants(gl11, solved, subpairs, name):
    assert quotient_action_check(unit_section(gl11), subpairs[name])
    for side in SIDES:
        for s in solved[(name, side)]:
            assert quotient_action_check(s, subpairs[name], side), (side, s)


def test_quotient_action_fails_on_non_invariant_section(gl11, subpairs):
    verdict = quotient_action_check(delta_sections(gl11)["y1"], subpairs["borel"])
    assert not verdict
    assert verdict.witnesses[0].startswith("layer 1: ")


# -- orbit maps land in the invariants ----------------------------------------------------

def test_orbit_sections_are_stabilizer_invariant(gl11_desc):
    spec = gl11_desc.subpairs["stab-std"]
    orbit = orbit_map_pullback(gl11_desc.actions["std"], {"y": 1})
    for g, sec in orbit.items():
        assert is_invariant_section(sec, spec, "G/H"), g
