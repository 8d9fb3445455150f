from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from superkoszul.algebra import SuperLieAlgebra
from superkoszul.hopf import CoordHopf, TangentFunctional
from superkoszul.poly import SPoly
from superkoszul.shcp import SHCP, PairMorphism, validate_morphism, validate_shcp

X1, X2, T1, T2 = 0, 1, 2, 3
words = st.lists(st.integers(0, 3), max_size=3)


def test_gl11_pair_validates(gl11):
    assert validate_shcp(gl11) == []


def test_purely_even_pair_validates(torus):
    assert validate_shcp(torus) == []


def test_identity_sigma_breaks_infinitesimal_compatibility(sigma_mutant):
    report = validate_shcp(sigma_mutant.pair)
    assert report
    assert all(r.startswith("infinitesimal compatibility fails") for r in report)
    assert "infinitesimal compatibility fails for X1 at [T1,T1]" in report


def test_off_block_sigma_is_reported():
    sla = SuperLieAlgebra(["X"], ["T"])
    G = CoordHopf.torus(["y"])
    pair = SHCP(sla, G, [[1, SPoly.var("y") - 1], [0, 1]], [TangentFunctional({"y": 1})])
    report = validate_shcp(pair)
    assert "parity: sigma[X,T] must vanish" in report


def test_sigma_examples(gl11):
    U = gl11.uea
    y1, y2 = SPoly.var("y1"), SPoly.var("y2")
    assert gl11.sigma_apply(U.one(), None, True) == U.one()
    assert gl11.sigma_apply(U.gen("T1"), None, True) == U.gen("T1") * (y1 ** -1 * y2)
    t12 = U.pbw_normalize([T1, T2])
    assert gl11.sigma_apply(t12, None, True) == t12


def test_sigma_slot_placement(gl11):
    U = gl11.uea
    got = gl11.sigma_apply(U.gen("T2"), 2, False)
    assert got == U.gen("T2") * (SPoly.var("y2@2") * SPoly.var("y1@2") ** -1)


@settings(max_examples=200)
@given(words, words)
def test_sigma_is_multiplicative(gl11, w1, w2):
    U = gl11.uea
    u, v = U.pbw_normalize(w1), U.pbw_normalize(w2)
    for inverse in (False, True):
        assert gl11.sigma_apply(u * v, None, inverse) == \
            gl11.sigma_apply(u, None, inverse) * gl11.sigma_apply(v, None, inverse)


@settings(max_examples=200)
@given(words, st.fractions(max_denominator=4))
def test_sigma_inverse_undoes_sigma(gl11, w, c):
    U = gl11.uea
    u = U.pbw_normalize(w) * c + U.gen("T1")
    assert gl11.sigma_apply(gl11.sigma_apply(u, None, True), None, False) == u
    assert gl11.sigma_apply(gl11.sigma_apply(u, None, False), None, True) == u


@settings(max_examples=100)
@given(words)
def test_sigma_at_identity_is_identity(gl11, w):
    G = gl11.group
    e = G.identity()
    u = gl11.uea.pbw_normalize(w)
    image = gl11.sigma_apply(u, None, True)
    evaluated = {m: Fraction(G.evaluate(SPoly.coerce(c), e)) for m, c in image.terms.items()}
    assert {m: c for m, c in evaluated.items() if c} == {m: Fraction(c) for m, c in u.terms.items()}
    assert gl11.sigma_at(e) == [[Fraction(int(i == j)) for j in range(4)] for i in range(4)]


def test_sigma_at_point(gl11):
    h = gl11.group.point({"y1": 2, "y2": 3})
    M = gl11.sigma_at(h, inverse=True)
    assert M[T1][T1] == Fraction(3, 2) and M[T2][T2] == Fraction(2, 3)


def test_identity_morphism_is_valid(gl11):
    eye = [[int(i == j) for j in range(4)] for i in range(4)]
    mor = PairMorphism(gl11, gl11, {g: SPoly.var(g) for g in gl11.group.gens}, eye)
    assert validate_morphism(mor) == []


def test_swapping_the_odd_basis_is_not_a_morphism(gl11):
    # T1 <-> T2 alone does not intertwine sigma (characters y1/y2 and y2/y1 swap)
    swap = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    mor = PairMorphism(gl11, gl11, {g: SPoly.var(g) for g in gl11.group.gens}, swap)
    report = validate_morphism(mor)
    assert any(r.startswith("sigma equivariance fails") for r in report)


def test_exchange_automorphism_is_a_morphism(gl11):
    # X1 <-> X2, T1 <-> T2 with y1 <-> y2 is an automorphism of the pair
    L = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    mor = PairMorphism(gl11, gl11, {"y1": SPoly.var("y2"), "y2": SPoly.var("y1")}, L)
    assert validate_morphism(mor) == []
