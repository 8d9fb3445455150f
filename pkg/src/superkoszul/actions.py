"""Actions of a Koszul group on polynomial superdomains.

An action is given by the reduced coaction (a Laurent-polynomial action of
the reduced group) and a representation rho of g by vector fields on M.
The full pullback is reconstructed as the table

    a^*(f)(P) = (-1)^{|P|(|f|+1)} (id (x) rho(gamma P)) abar^*(f).

Variables of M are stored as ``M.<name>`` so they never collide with the
reduced group's coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

from . import linalg
from .algebra import Wedge
from .koszul import (Section, _rename_slots, kappa, mu_pullback, section_mul,
                     unit_section, wedge_label)
from .poly import SPoly, slot_var
from .shcp import SHCP

PREFIX = "M."


def mvar(name: str) -> str:
    return PREFIX + name


class SuperDomain:
    """Polynomial superdomain: even generators (optionally invertible) and
    odd generators."""

    def __init__(self, even: Sequence[str], odd: Sequence[str] = (), invertible: Sequence[bool] | None = None):
        self.even = list(even)
        self.odd = list(odd)
        self.invertible = dict(zip(self.even, invertible or [False] * len(self.even)))

    @property
    def gens(self) -> List[str]:
        return self.even + self.odd

    def is_odd(self, name: str) -> bool:
        return name in self.odd

    def var(self, name: str) -> SPoly:
        return SPoly.var(mvar(name), odd=self.is_odd(name))

    def internal(self) -> List[Tuple[str, bool]]:
        return [(mvar(g), self.is_odd(g)) for g in self.gens]

    def split(self, f: SPoly) -> Dict[tuple, SPoly]:
        """Write ``f = sum_m c_m * m`` with ``m`` a monomial in M's variables
        and ``c_m`` free of them."""
        out: Dict[tuple, dict] = {}
        for (ev, od), c in f.terms.items():
            mev = tuple((k, e) for k, e in ev if k.startswith(PREFIX))
            rest = tuple((k, e) for k, e in ev if not k.startswith(PREFIX))
            mod = tuple(k for k in od if k.startswith(PREFIX))
            rod = tuple(k for k in od if not k.startswith(PREFIX))
            if rod:
                raise ValueError("coefficients must be even")
            out.setdefault((mev, mod), {})[(rest, ())] = c
        return {m: SPoly(t) for m, t in out.items()}


@dataclass
class SuperDerivation:
    parity: int
    images: Dict[str, SPoly] = field(default_factory=dict)

    def apply(self, f: SPoly, domain: SuperDomain) -> SPoly:
        total = SPoly()
        for name, odd in domain.internal():
            img = self.images.get(name)
            if img:
                d = f.diff(name, odd)
                if d:
                    total = total + img * d
        return total


@dataclass
class ActionData:
    pair: SHCP
    domain: SuperDomain
    coaction: Dict[str, SPoly]
    rho: List[SuperDerivation]
    name: str = ""

    def rho_apply(self, i: int, f: SPoly) -> SPoly:
        return self.rho[i].apply(f, self.domain)

    def rho_word(self, word: Sequence[int], f: SPoly) -> SPoly:
        """rho(g_1 ... g_k) f = (-1)^{o(o-1)/2} rho(g_k) ... rho(g_1) f."""
        for i in word:
            if not f:
                return f
            f = self.rho_apply(i, f)
        o = sum(1 for i in word if self.pair.sla.parity(i))
        return -f if (o * (o - 1) // 2) % 2 else f

    def rho_uea(self, u, f: SPoly) -> SPoly:
        total = SPoly()
        for mono, c in u.terms.items():
            total = total + self.rho_word(self.pair.uea.mono_word(mono), f) * c
        return total


def validate_action_data(d: ActionData) -> List[str]:
    pair, G, dom = d.pair, d.pair.group, d.domain
    names = pair.sla.names
    report = []
    if len(d.rho) != pair.n:
        return [f"expected {pair.n} vector fields, got {len(d.rho)}"]
    gens = dom.gens
    abar = {mvar(g): d.coaction[g] for g in gens}
    for g in gens:
        a = d.coaction[g]
        lhs = G.coproduct(a)
        rhs = G.to_slot(a, None, 1).subs({k: G.to_slot(v, None, 2) for k, v in abar.items()})
        if lhs != rhs:
            report.append(f"reduced coaction is not coassociative on {g}")
        if SPoly.coerce(G.counit(a)) != dom.var(g):
            report.append(f"reduced coaction fails the unit law on {g}")
    for i, D in enumerate(d.rho):
        if D.parity != pair.sla.parity(i):
            report.append(f"rho({names[i]}) has the wrong parity")
        for g in gens:
            img = D.images.get(mvar(g))
            if img and img.parity_parts().keys() != {(D.parity + dom.is_odd(g)) % 2}:
                report.append(f"rho({names[i]}) maps {g} to an element of the wrong parity")
    for i in range(pair.n):
        for j in range(i, pair.n):
            pi, pj = pair.sla.parity(i), pair.sla.parity(j)
            for g in gens:
                x = dom.var(g)
                comm = d.rho_apply(i, d.rho_apply(j, x)) - d.rho_apply(j, d.rho_apply(i, x)) * (-1 if pi * pj else 1)
                br = SPoly()
                for k, c in pair.sla.bracket(i, j).items():
                    br = br + d.rho_apply(k, x) * c
                if br != -comm:
                    report.append(f"rho is not an anti-representation on ({names[i]},{names[j]}) at {g}")
                    break
    for z in range(pair.sla.m):
        for g in gens:
            lhs = d.rho_apply(z, dom.var(g))
            rhs = SPoly.coerce(G.tangent_apply(pair.tangent[z], d.coaction[g]))
            if lhs != rhs:
                report.append(f"compatibility with the reduced coaction fails for {names[z]} on {g}")
    inv_sub = {k: G.to_slot(G.antipode(v), None, 1) for k, v in abar.items()}
    for j in range(pair.n):
        for g in gens:
            lhs = SPoly()
            for k in range(pair.n):
                if pair.sigma[k][j]:
                    lhs = lhs + d.rho_apply(k, dom.var(g)) * pair.sigma[k][j]
            inner = G.to_slot(d.rho_apply(j, d.coaction[g]), None, 1)
            rhs = G.to_slot(inner.subs(inv_sub), 1, None)
            if lhs != rhs:
                report.append(f"sigma compatibility fails for {names[j]} on {g}")
    return report


ActionTable = Dict[str, Section]


def reconstruct_action(d: ActionData, literal_sign: bool = False) -> ActionTable:
    """Per generator f of M, the table P -> a^*(f)(P).  With
    ``literal_sign`` the sign is (-1)^{|P|} regardless of the parity of f."""
    pair = d.pair
    U = pair.uea
    out = {}
    for g in d.domain.gens:
        pf = int(d.domain.is_odd(g))
        tab = {}
        for P in U.wedges():
            v = d.rho_uea(U.gamma_mono(P), d.coaction[g])
            e = len(P) if literal_sign else len(P) * (pf + 1)
            tab[P] = -v if e % 2 else v
        out[g] = Section(pair, tab)
    return out


def table_of_monomial(d: ActionData, table: ActionTable, mono: tuple) -> Section:
    """a^*(m) for a monomial of M, as a product of generator tables."""
    ev, od = mono
    acc = unit_section(d.pair)
    for k, e in ev:
        g = k[len(PREFIX):]
        if e < 0:
            raise ValueError("negative powers of M's generators are not supported here")
        for _ in range(e):
            acc = section_mul(acc, table[g])
    for k in od:
        acc = section_mul(acc, table[k[len(PREFIX):]])
    return acc


def _mono_parity(mono) -> int:
    return len(mono[1]) % 2


def check_action_axioms(d: ActionData, table: ActionTable) -> List[str]:
    """Unit law and (mu^* (x) id) a^* = (id (x) a^*) a^* entrywise."""
    pair, G = d.pair, d.pair.group
    names = pair.sla.names
    report = []
    wedges = pair.uea.wedges()
    mono_tables: Dict[tuple, Section] = {}
    for g, sec in table.items():
        f = d.domain.var(g)
        unit = SPoly.coerce(G.counit(sec[()]))
        if unit != f:
            report.append(f"unit axiom fails on {g}")
        # split every entry into c_m(P) * m
        coeffs: Dict[tuple, Dict[Wedge, SPoly]] = {}
        for P, v in sec.table.items():
            for m, c in d.domain.split(v).items():
                coeffs.setdefault(m, {})[P] = c
        lhs: Dict[tuple, SPoly] = {}
        rhs: Dict[tuple, SPoly] = {}
        for m, cm in coeffs.items():
            pm = _mono_parity(m)
            mpoly = SPoly({m: 1})
            A = Section(pair, {P: c * (-1 if pm * (len(P) % 2) else 1) for P, c in cm.items()})
            for (P1, P2), v in mu_pullback(A).table.items():
                s = -1 if pm * ((len(P1) + len(P2)) % 2) else 1
                key = (P1, P2)
                lhs[key] = lhs.get(key, SPoly()) + v * mpoly * s
            if m not in mono_tables:
                mono_tables[m] = table_of_monomial(d, table, m)
            B = mono_tables[m]
            for P, c in cm.items():
                c1 = G.to_slot(c, None, 1)
                for Q, b in B.table.items():
                    key = (P, Q)
                    rhs[key] = rhs.get(key, SPoly()) + c1 * G.to_slot(b, None, 2)
        for key in sorted(set(lhs) | set(rhs), key=lambda k: [(len(P), P) for P in k]):
            if lhs.get(key, SPoly()) != rhs.get(key, SPoly()):
                loc = ",".join(wedge_label(P, names) for P in key)
                report.append(f"associativity axiom fails on {g} at ({loc})")
                break
    return report


def differential_at_identity(d: ActionData, point: Mapping[str, object]) -> List[List[Fraction]]:
    """Rows: M's generators (even, then odd); columns: the basis of g.
    Entry = ev_p(rho(X) f)."""
    dom = d.domain
    for g in dom.even:
        if dom.invertible[g] and Fraction(point.get(g, 0)) == 0:
            raise ValueError(f"invertible generator {g} evaluated to zero")
    sub = {mvar(g): SPoly.const(Fraction(point.get(g, 0))) for g in dom.even}
    sub.update({mvar(g): SPoly() for g in dom.odd})
    rows = []
    for g in dom.gens:
        row = []
        for i in range(d.pair.n):
            v = d.rho_apply(i, dom.var(g)).subs(sub)
            row.append(v.constant_term())
        rows.append(row)
    return rows


def stabilizer_subalgebra(d: ActionData, point) -> List[Dict[int, Fraction]]:
    """Homogeneous basis of the kernel of the differential at the identity."""
    A = differential_at_identity(d, point)
    basis = linalg.nullspace(A, d.pair.n)
    return [{i: c for i, c in enumerate(v) if c} for v in basis]


def is_subalgebra(pair: SHCP, basis: Sequence[Mapping[int, Fraction]]) -> bool:
    n = pair.n
    rows = [[Fraction(v.get(i, 0)) for i in range(n)] for v in basis]
    r = linalg.rank(rows, n) if rows else 0
    for a in basis:
        for b in basis:
            br = pair.sla.bracket_vectors(a, b)
            if br:
                ext = rows + [[br.get(i, Fraction(0)) for i in range(n)]]
                if linalg.rank(ext, n) != r:
                    return False
    return True


def fixes_point(d: ActionData, g_point, point) -> bool:
    """Membership test for the reduced stabilizer: does the reduced group
    element fix the reduced point?"""
    G = d.pair.group
    sub = {mvar(g): SPoly.const(Fraction(point.get(g, 0))) for g in d.domain.even}
    sub.update({mvar(g): SPoly() for g in d.domain.odd})
    for g in d.domain.even:
        v = SPoly.coerce(G.evaluate(d.coaction[g], g_point)).subs(sub)
        if v != Fraction(point.get(g, 0)):
            return False
    return True


@dataclass
class TransitivityVerdict:
    transitive: bool
    even_rank: int
    odd_rank: int
    even_dim: int
    odd_dim: int
    reduced_asserted: bool

    def __str__(self):
        word = "transitive" if self.transitive else "not transitive"
        return (f"{word}: differential rank {self.even_rank}|{self.odd_rank} "
                f"onto {self.even_dim}|{self.odd_dim}, reduced transitivity "
                f"{'asserted' if self.reduced_asserted else 'not asserted'}")


def is_transitive_at(d: ActionData, point, reduced_transitive: bool) -> TransitivityVerdict:
    A = differential_at_identity(d, point)
    dom, sla = d.domain, d.pair.sla
    ne = len(dom.even)
    even_block = [row[:sla.m] for row in A[:ne]]
    odd_block = [row[sla.m:] for row in A[ne:]]
    re = linalg.rank(even_block, sla.m) if even_block else 0
    ro = linalg.rank(odd_block, sla.q) if odd_block else 0
    ok = re == ne and ro == len(dom.odd) and reduced_transitive
    return TransitivityVerdict(ok, re, ro, ne, len(dom.odd), reduced_transitive)


def orbit_map_pullback(d: ActionData, point, table: ActionTable | None = None) -> Dict[str, Section]:
    """a_p^*(f): the action table evaluated at the reduced point p of M."""
    if table is None:
        table = reconstruct_action(d)
    sub = {mvar(g): SPoly.const(Fraction(point.get(g, 0))) for g in d.domain.even}
    sub.update({mvar(g): SPoly() for g in d.domain.odd})
    return {g: Section(d.pair, {P: v.subs(sub) for P, v in sec.table.items()})
            for g, sec in table.items()}


def two_leg_from_action(d: ActionData, table: ActionTable, dictionary: Mapping[str, Section]):
    """Identify M with G through ``dictionary`` (M generator -> section of G)
    and return the reconstructed tables as two-leg tables on G x G."""
    from .koszul import MultiSection

    pair, G = d.pair, d.pair.group
    cache: Dict[tuple, Section] = {}

    def image(m):
        if m not in cache:
            ev, od = m
            acc = unit_section(pair)
            for k, e in ev:
                base = dictionary[k[len(PREFIX):]]
                for _ in range(e):
                    acc = section_mul(acc, base)
            for k in od:
                acc = section_mul(acc, dictionary[k[len(PREFIX):]])
            cache[m] = acc
        return cache[m]

    out = {}
    for g, sec in table.items():
        tab: Dict[tuple, SPoly] = {}
        for P, v in sec.table.items():
            for m, c in d.domain.split(v).items():
                c1 = G.to_slot(c, None, 1)
                for Q, b in image(m).table.items():
                    key = (P, Q)
                    tab[key] = tab.get(key, SPoly()) + c1 * G.to_slot(b, None, 2)
        out[g] = MultiSection(pair, 2, tab)
    return out


def coordinate_name(pair: SHCP, v: int) -> str:
    """Variable standing for the odd coordinate section Phi_v."""
    return "coord." + pair.sla.names[v]


def action_in_coordinates(d: ActionData, table: ActionTable) -> Dict[str, SPoly]:
    """Expand each a^*(f) as a polynomial in the delta-section coordinates
    (reduced generators for phi_g, ``coord.<T>`` for Phi_T) and M's
    generators, using phi = sum_P (-1)^{k(k-1)/2} phi_{t(P)} Phi^P."""
    pair = d.pair
    out = {}
    for g, sec in table.items():
        total = SPoly()
        for P, v in sec.table.items():
            k = len(P)
            s = -1 if (k * (k - 1) // 2) % 2 else 1
            theta = SPoly.const(1)
            for i in P:
                theta = theta * SPoly.var(coordinate_name(pair, i), odd=True)
            for m, c in d.domain.split(v).items():
                sign = s * (-1 if (_mono_parity(m) and k % 2) else 1)
                total = total + c * theta * SPoly({m: 1}) * sign
        out[g] = total
    return out
