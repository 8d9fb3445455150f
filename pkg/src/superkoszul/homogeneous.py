"""Invariant sections for a closed sub-pair H of G.

Two sheaves of invariants live inside O(G):

* ``"G/H"``: r_h^* phi = phi for h in H~ and D^L_X phi = 0 for X in h;
* ``"H\\G"``: l_h^* phi = phi for h in H~ and D^R_X phi = 0 for X in h.

Each is also characterized by a tensor identity: pulling mu^*(phi) back to
G x H (second slot pushed through the quotient map O(G~) -> O(H~)) gives
pr_1^*(phi), and symmetrically for the other side.  Both routes are
implemented and compared in the tests.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .actions import is_subalgebra
from .algebra import wedge_coproduct, wedge_of_vectors
from .hopf import CoordHopf
from .koszul import (Section, _leg_section, evaluate_on_uea, left_inv_vf,
                     mu_eval, mu_pullback, right_inv_vf)
from .poly import SPoly, slot_var
from .shcp import SHCP

SIDES = ("G/H", "H\\G")


@dataclass
class SubPairSpec:
    pair: SHCP
    h_basis: List[Dict[int, Fraction]]
    h_group: CoordHopf
    quotient: Dict[str, SPoly]
    complement: Optional[List[Dict[int, Fraction]]] = None
    connected: bool = True
    name: str = ""

    def parity_of(self, v: Mapping[int, Fraction]) -> int:
        p = self.pair.sla.vector_parity(v)
        if p is None:
            raise ValueError("basis vectors must be homogeneous")
        return p

    def odd_h(self) -> List[Dict[int, Fraction]]:
        return [v for v in self.h_basis if self.parity_of(v) == 1]

    def even_h(self) -> List[Dict[int, Fraction]]:
        return [v for v in self.h_basis if self.parity_of(v) == 0]

    def odd_p(self) -> List[Dict[int, Fraction]]:
        return [v for v in (self.complement or []) if self.parity_of(v) == 1]

    def push(self, f: SPoly, slot) -> SPoly:
        """Restrict the reduced variables of ``slot`` to H~."""
        G, H = self.pair.group, self.h_group
        return f.subs({slot_var(g, slot): H.to_slot(self.quotient[g], None, slot) for g in G.gens})

    def h_element(self, Q: Tuple[int, ...]):
        """gamma applied to the wedge of the odd h-basis vectors indexed by Q."""
        odd = self.odd_h()
        w = wedge_of_vectors([odd[i] for i in Q])
        return self.pair.uea.gamma(w)


def validate_subpair(spec: SubPairSpec) -> List[str]:
    pair = spec.pair
    report = []
    for v in spec.h_basis + (spec.complement or []):
        if pair.sla.vector_parity(v) is None:
            report.append("a basis vector is not homogeneous")
    if report:
        return report
    if not is_subalgebra(pair, spec.h_basis):
        report.append("h is not closed under the bracket")
    n = pair.n
    rows = [[Fraction(v.get(i, 0)) for i in range(n)] for v in spec.h_basis]
    if linalg.rank(rows, n) != len(rows):
        report.append("h basis is linearly dependent")
    if spec.complement is not None:
        both = rows + [[Fraction(v.get(i, 0)) for i in range(n)] for v in spec.complement]
        if len(both) != n or linalg.rank(both, n) != n:
            report.append("complement is not complementary to h")
    G, H = pair.group, spec.h_group
    for g in G.gens:
        q = spec.quotient[g]
        lhs = H.coproduct(q)
        rhs = spec.push(spec.push(G.delta[g], 1), 2)
        if lhs != rhs:
            report.append(f"quotient map does not respect the coproduct on {g}")
        if H.counit(q) != G.eps[g]:
            report.append(f"quotient map does not respect the counit on {g}")
    report += [f"H~: {r}" for r in H.validate()]
    return report


@dataclass
class InvarianceVerdict:
    invariant: bool
    witnesses: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def __bool__(self):
        return self.invariant


def _side(side: str) -> str:
    aliases = {"G/H": "G/H", "right": "G/H", "gh": "G/H",
               "H\\G": "H\\G", "left": "H\\G", "hg": "H\\G"}
    if side not in aliases:
        raise ValueError(f"unknown side {side!r}; use one of {SIDES}")
    return aliases[side]


def _vector_uea(pair, v):
    return pair.uea.vector(v)


def check_by_fields(phi: Section, spec: SubPairSpec, side: str = "G/H") -> InvarianceVerdict:
    """Translation invariance for symbolic h in H~ plus vanishing of the
    invariant vector fields along h."""
    side = _side(side)
    pair = phi.pair
    U = pair.uea
    names = pair.sla.names
    wit = []
    one = U.one()
    for P in U.wedges():
        gP = U.gamma_mono(P)
        if side == "G/H":
            # r_h^* phi (P) = phi(h^{-1}.gamma P)(gh) = mu^*(phi)(gamma P, 1)
            moved = spec.push(mu_eval(phi, gP, one), 2)
            target = pair.group.to_slot(phi[P], None, 1)
        else:
            # l_h^* phi (P) = phi(gamma P)(hg) = mu^*(phi)(1, gamma P)
            moved = spec.push(mu_eval(phi, one, gP), 1)
            target = pair.group.to_slot(phi[P], None, 2)
        if moved != target:
            wit.append(f"translation invariance fails at {_label(P, names)}")
            break
    field_op = left_inv_vf if side == "G/H" else right_inv_vf
    for v in spec.h_basis:
        if not field_op(_vector_uea(pair, v), phi).is_zero():
            wit.append(f"invariant field along {_vec_label(v, names)} does not annihilate the section")
            break
    notes = [] if spec.connected else ["H~ is disconnected: invariance under its component group is not checked"]
    return InvarianceVerdict(not wit, wit, notes)


def check_by_tensor_identity(phi: Section, spec: SubPairSpec, side: str = "G/H") -> InvarianceVerdict:
    """mu^*(phi) restricted to G x H equals pr_1^*(phi) (or the mirror
    identity on H x G), checked on gamma(P) (x) gamma_h(Q)."""
    side = _side(side)
    pair = phi.pair
    U = pair.uea
    names = pair.sla.names
    k = len(spec.odd_h())
    wit = []
    for r in range(k + 1):
        for Q in itertools.combinations(range(k), r):
            hQ = spec.h_element(Q)
            for P in U.wedges():
                gP = U.gamma_mono(P)
                if side == "G/H":
                    val = spec.push(mu_eval(phi, gP, hQ), 2)
                    target = pair.group.to_slot(phi[P], None, 1) if not Q else SPoly()
                else:
                    val = spec.push(mu_eval(phi, hQ, gP), 1)
                    target = pair.group.to_slot(phi[P], None, 2) if not Q else SPoly()
                if val != target:
                    wit.append(f"tensor identity fails at ({_label(P, names)}, h-wedge {list(Q)})")
                    return InvarianceVerdict(False, wit)
    notes = [] if spec.connected else ["H~ is disconnected: invariance under its component group is not checked"]
    return InvarianceVerdict(True, wit, notes)


def is_invariant_section(phi: Section, spec: SubPairSpec, side: str = "G/H") -> InvarianceVerdict:
    a = check_by_fields(phi, spec, side)
    b = check_by_tensor_identity(phi, spec, side)
    return InvarianceVerdict(a.invariant and b.invariant, a.witnesses + b.witnesses, a.notes)


def _label(P, names):
    return "^".join(names[i] for i in P) if P else "1"


def _vec_label(v, names):
    return " + ".join(f"{c}*{names[i]}" if c != 1 else names[i] for i, c in sorted(v.items()))


# -- solver -------------------------------------------------------------------------

def _conditions(phi: Section, spec: SubPairSpec, side: str) -> List[SPoly]:
    """All linear conditions of the tensor identity and the field conditions,
    as a list of polynomials that must vanish."""
    side = _side(side)
    pair = phi.pair
    U = pair.uea
    out = []
    k = len(spec.odd_h())
    for r in range(k + 1):
        for Q in itertools.combinations(range(k), r):
            hQ = spec.h_element(Q)
            for P in U.wedges():
                gP = U.gamma_mono(P)
                if side == "G/H":
                    val = spec.push(mu_eval(phi, gP, hQ), 2)
                    target = pair.group.to_slot(phi[P], None, 1) if not Q else SPoly()
                else:
                    val = spec.push(mu_eval(phi, hQ, gP), 1)
                    target = pair.group.to_slot(phi[P], None, 2) if not Q else SPoly()
                out.append(val - target)
    field_op = left_inv_vf if side == "G/H" else right_inv_vf
    for v in spec.h_basis:
        out.extend(field_op(_vector_uea(pair, v), phi).table.values())
    return out


def invariant_section_solve(spec: SubPairSpec, ansatz: Sequence[SPoly], side: str = "G/H") -> List[Section]:
    """Basis of the invariant sections whose entries lie in span(ansatz)."""
    pair = spec.pair
    wedges = pair.uea.wedges()
    unknowns = [(P, a) for P in wedges for a in ansatz]
    columns: List[Dict[tuple, Fraction]] = []
    for P, a in unknowns:
        conds = _conditions(Section(pair, {P: a}), spec, side)
        col: Dict[tuple, Fraction] = {}
        for idx, c in enumerate(conds):
            for mono, coeff in c.terms.items():
                col[(idx, mono)] = coeff
        columns.append(col)
    keys = sorted({k for col in columns for k in col}, key=repr)
    rows = [[col.get(k, Fraction(0)) for col in columns] for k in keys]
    basis = linalg.nullspace(rows, len(unknowns))
    out = []
    for vec in basis:
        tab: Dict[tuple, SPoly] = {}
        for (P, a), c in zip(unknowns, vec):
            if c:
                tab[P] = tab.get(P, SPoly()) + a * c
        out.append(Section(pair, tab))
    return out


def laurent_ansatz(gens: Sequence[str], degree: int) -> List[SPoly]:
    """Laurent monomials with sum of absolute exponents at most ``degree``."""
    out = []
    rng = range(-degree, degree + 1)
    for exps in itertools.product(rng, repeat=len(gens)):
        if sum(abs(e) for e in exps) <= degree:
            m = SPoly.const(1)
            for g, e in zip(gens, exps):
                if e:
                    m = m * SPoly.var(g, power=e)
            out.append(m)
    return out


# -- trivialization ---------------------------------------------------------------

def _p_wedges(spec: SubPairSpec):
    k = len(spec.odd_p())
    return [R for r in range(k + 1) for R in itertools.combinations(range(k), r)]


def coset_trivialize(phi: Section, spec: SubPairSpec, side: str = "G/H", check: bool = True) -> Dict[tuple, SPoly]:
    """P in Lambda(p_1) -> phi(gamma(P)), with the identity section over the
    identity coset.  Keys index subsets of the odd complement vectors."""
    if spec.complement is None:
        raise ValueError("a complement is required for the trivialization")
    if check:
        v = is_invariant_section(phi, spec, side)
        if not v:
            raise ValueError("section is not invariant: " + "; ".join(v.witnesses))
    odd = spec.odd_p()
    U = phi.pair.uea
    out = {}
    for R in _p_wedges(spec):
        val = evaluate_on_uea(phi, U.gamma(wedge_of_vectors([odd[i] for i in R])))
        if val:
            out[R] = val
    return out


def coset_untrivialize(table: Mapping[tuple, SPoly], spec: SubPairSpec, side: str = "G/H") -> Section:
    """Rebuild the invariant section from its Lambda(p_1) table.

    Works up the odd degree: for P in Lambda(p_1) and H in Lambda(h_1) the
    value phi(gamma(P) gamma_h(H)) is prescribed (the table for H empty,
    zero otherwise since phi is killed by the fields along h), and its top
    odd-degree part involves only unknown entries of that degree.
    """
    side = _side(side)
    pair = spec.pair
    U = pair.uea
    odd_p, odd_h = spec.odd_p(), spec.odd_h()
    phi = Section(pair, {})
    q = pair.sla.q
    for k in range(q + 1):
        targets = [R for R in U.wedges() if len(R) == k]
        eqs = []
        rhs = []
        for a in range(k + 1):
            for Pp in itertools.combinations(range(len(odd_p)), a):
                for Hh in itertools.combinations(range(len(odd_h)), k - a):
                    gp = U.gamma(wedge_of_vectors([odd_p[i] for i in Pp]))
                    gh = spec.h_element(Hh)
                    u = gp * gh if side == "G/H" else gh * gp
                    dec = U.gamma_hat_inverse(u)
                    top = {R: c for (ex, R), c in dec.items() if len(R) == k and not any(ex)}
                    rest = {key: c for key, c in dec.items() if len(key[1]) < k}
                    known = _eval_decomposition(phi, rest)
                    want = SPoly.coerce(table.get(Pp, SPoly())) if not Hh else SPoly()
                    eqs.append([Fraction(top.get(R, 0)) for R in targets])
                    rhs.append(want - known)
        sol = linalg.solve(eqs, rhs, len(targets), SPoly())
        tab = dict(phi.table)
        for R, v in zip(targets, sol):
            if v:
                tab[R] = v
        phi = Section(pair, tab)
    return phi


def _eval_decomposition(phi: Section, dec) -> SPoly:
    from .koszul import evaluate_decomposed

    return evaluate_decomposed(phi, dec)


def trivialized_mul(a: Mapping[tuple, SPoly], b: Mapping[tuple, SPoly]) -> Dict[tuple, SPoly]:
    """Product of Lambda(p_1) tables (same sign rule as section products)."""
    from .koszul import multi_mul

    A = {(P,): v for P, v in a.items()}
    B = {(P,): v for P, v in b.items()}
    return {k[0]: v for k, v in multi_mul(A, B, 1).items()}


def quotient_action_check(phi: Section, spec: SubPairSpec, side: str = "G/H") -> InvarianceVerdict:
    """mu^* must send invariant sections to O(G) (x) invariants (for G/H)
    or invariants (x) O(G) (for H\\G): every layer of the other leg must
    itself be invariant."""
    side = _side(side)
    T = mu_pullback(phi)
    pair = phi.pair
    wedges = pair.uea.wedges()
    wit = []
    for P in wedges:
        if side == "G/H":
            layer = _leg_section(pair, T, 0, P, "_g")
        else:
            layer = _leg_section(pair, T, 1, P, "_g")
        if layer.is_zero():
            continue
        v = is_invariant_section(layer, spec, side)
        if not v:
            wit.append(f"layer {_label(P, pair.sla.names)}: " + "; ".join(v.witnesses))
            break
    return InvarianceVerdict(not wit, wit)
