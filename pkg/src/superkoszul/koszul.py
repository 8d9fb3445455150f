"""Global sections of the Koszul sheaf as tables over the exterior algebra.

A section is a map ``wedge -> coordinate function``; its value on an
arbitrary element of U(g) is obtained by decomposing that element with
gamma_hat^{-1} and letting the even part act through the left invariant
operators of the reduced group.

Sign conventions used throughout:

* tensor pairing ``(a (x) b)(X (x) Y) = (-1)^{|b||X|} a(X) b(Y)``;
* a multi-leg table ``T(P_1, ..., P_n)`` is the value of the element on
  ``gamma(P_1) (x) ... (x) gamma(P_n)``;
* leg ``k`` of a multi-leg table carries the reduced variables in slot ``k``.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .algebra import UEAElement, Wedge, wedge_coproduct, wedge_mul
from .poly import SPoly, slot_var
from .shcp import SHCP

Key = Tuple[Wedge, ...]


def kappa(a: Wedge, b: Wedge) -> int:
    """Koszul sign (-1)^{|a||b|}."""
    return -1 if (len(a) % 2 and len(b) % 2) else 1


def _add(d: dict, k, v):
    if not v:
        return
    w = d.get(k)
    w = v if w is None else w + v
    if w:
        d[k] = w
    else:
        d.pop(k, None)


class Section:
    """Element of O(G) stored as ``table: wedge -> SPoly`` (zeros omitted)."""

    __slots__ = ("pair", "table")

    def __init__(self, pair: SHCP, table: Mapping[Wedge, object] | None = None):
        self.pair = pair
        self.table = {}
        for P, v in (table or {}).items():
            v = SPoly.coerce(v)
            if v:
                self.table[tuple(P)] = v

    def __getitem__(self, P) -> SPoly:
        return self.table.get(tuple(P), SPoly())

    def __eq__(self, other):
        if isinstance(other, Section):
            return self.table == other.table
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.table.items()))

    def __add__(self, other):
        d = dict(self.table)
        for P, v in other.table.items():
            _add(d, P, v)
        return Section(self.pair, d)

    def __neg__(self):
        return Section(self.pair, {P: -v for P, v in self.table.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Section":
        c = SPoly.coerce(c)
        return Section(self.pair, {P: c * v for P, v in self.table.items()})

    def __mul__(self, other):
        if isinstance(other, Section):
            return section_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def is_zero(self):
        return not self.table

    def parity_parts(self) -> Dict[int, "Section"]:
        parts: Dict[int, dict] = {}
        for P, v in self.table.items():
            for pv, comp in v.parity_parts().items():
                parts.setdefault((len(P) + pv) % 2, {})[P] = comp
        return {p: Section(self.pair, t) for p, t in parts.items()}

    def parity(self):
        ps = set(self.parity_parts())
        if len(ps) > 1:
            raise ValueError("section is not homogeneous")
        return ps.pop() if ps else 0

    def __repr__(self):
        names = self.pair.sla.names
        items = ", ".join(f"{wedge_label(P, names)}: {v}" for P, v in sorted(self.table.items(), key=lambda t: (len(t[0]), t[0])))
        return f"Section({{{items}}})"


class MultiSection:
    """Element of O(G x ... x G): ``table: (P_1,...,P_n) -> SPoly``."""

    __slots__ = ("pair", "legs", "table")

    def __init__(self, pair: SHCP, legs: int, table: Mapping[Key, object] | None = None):
        self.pair = pair
        self.legs = legs
        self.table = {}
        for k, v in (table or {}).items():
            v = SPoly.coerce(v)
            if v:
                self.table[tuple(tuple(P) for P in k)] = v

    def __getitem__(self, key) -> SPoly:
        return self.table.get(tuple(tuple(P) for P in key), SPoly())

    def __eq__(self, other):
        if isinstance(other, MultiSection):
            return self.legs == other.legs and self.table == other.table
        return NotImplemented

    def __hash__(self):
        return hash((self.legs, frozenset(self.table.items())))

    def __add__(self, other):
        d = dict(self.table)
        for k, v in other.table.items():
            _add(d, k, v)
        return MultiSection(self.pair, self.legs, d)

    def __neg__(self):
        return MultiSection(self.pair, self.legs, {k: -v for k, v in self.table.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = SPoly.coerce(c)
        return MultiSection(self.pair, self.legs, {k: c * v for k, v in self.table.items()})

    def __mul__(self, other):
        if isinstance(other, MultiSection):
            return MultiSection(self.pair, self.legs, multi_mul(self.table, other.table, self.legs))
        return self.scale(other)

    __rmul__ = scale

    def __repr__(self):
        return f"MultiSection(legs={self.legs}, {len(self.table)} entries)"


TwoVarSection = MultiSection


def wedge_label(P: Wedge, names: Sequence[str]) -> str:
    return "^".join(names[i] for i in P) if P else "1"


# -- products ------------------------------------------------------------------

def _splits(P: Wedge):
    return wedge_coproduct(P)


def multi_mul(A: Mapping[Key, SPoly], B: Mapping[Key, SPoly], legs: int) -> Dict[Key, SPoly]:
    """Product of multi-leg tables through the coproduct of each leg.

    With ``R_i = sign_i R_i' ^ R_i''`` the term ``A(R') B(R'')`` carries the
    split signs, the Koszul sign of regrouping ``(R_1' R_1'')(R_2' R_2'')...``
    into ``(R_1' R_2' ...)(R_1'' R_2'' ...)``, and ``(-1)^{|B||R'|}``.
    """
    out: Dict[Key, SPoly] = {}
    b_parts = []
    for k2, v2 in B.items():
        for pv, comp in v2.parity_parts().items():
            b_parts.append((k2, comp, (sum(len(P) for P in k2) + pv) % 2))
    for k1, v1 in A.items():
        for k2, v2, pb in b_parts:
            sign = 1
            key = []
            ok = True
            for P, Q in zip(k1, k2):
                s, R = wedge_mul(P, Q)
                if not s:
                    ok = False
                    break
                sign *= s
                key.append(R)
            if not ok:
                continue
            # regrouping sign: sum_{i<j} |R_i''| |R_j'|
            reg = 0
            for i in range(legs):
                for j in range(i + 1, legs):
                    reg += len(k2[i]) * len(k1[j])
            deg1 = sum(len(P) for P in k1)
            if (reg + pb * deg1) % 2:
                sign = -sign
            _add(out, tuple(key), v1 * v2 * sign)
    return out


def section_mul(a: Section, b: Section) -> Section:
    """Product m o (a (x) b) o Delta, computed on tables through the
    coproduct of the exterior algebra."""
    A = {(P,): v for P, v in a.table.items()}
    B = {(P,): v for P, v in b.table.items()}
    return Section(a.pair, {k[0]: v for k, v in multi_mul(A, B, 1).items()})


def section_mul_via_uea(a: Section, b: Section) -> Section:
    """Same product computed through the coproduct of U(g) and gamma_hat^{-1};
    an independent route used to cross-check :func:`section_mul`."""
    pair = a.pair
    U = pair.uea
    out: Dict[Wedge, SPoly] = {}
    a_parts = a.parity_parts()
    b_parts = b.parity_parts()
    for P in U.wedges():
        total = SPoly()
        for (m1, m2), c in U.coproduct(U.gamma_mono(P)).items():
            x1 = evaluate_on_uea(a, U.mono(m1))
            if not x1:
                continue
            for pb, bb in b_parts.items():
                x2 = evaluate_on_uea(bb, U.mono(m2))
                if x2:
                    s = -1 if (pb and len(m1[1]) % 2) else 1
                    total = total + x1 * x2 * (c * s)
        _add(out, P, total)
    return Section(pair, out)


# -- evaluation ------------------------------------------------------------------

def even_word(exps: Sequence[int]) -> List[int]:
    w: List[int] = []
    for i, e in enumerate(exps):
        w.extend([i] * e)
    return w


def apply_even(pair: SHCP, exps: Sequence[int], f: SPoly, slot=None) -> SPoly:
    return pair.group.apply_word(pair.tangent, even_word(exps), f, slot)


def evaluate_decomposed(sec: Section, decomposition: Mapping, slot=None) -> SPoly:
    total = SPoly()
    for (exps, R), c in decomposition.items():
        t = sec.table.get(R)
        if t is None:
            continue
        v = apply_even(sec.pair, exps, t, slot)
        if v:
            total = total + v * SPoly.coerce(c)
    return total


def evaluate_on_uea(sec: Section, u: UEAElement) -> SPoly:
    """phi(u) as a function on the reduced group."""
    return evaluate_decomposed(sec, sec.pair.uea.gamma_hat_inverse(u))


# -- named sections -----------------------------------------------------------------

def unit_section(pair: SHCP) -> Section:
    return Section(pair, {(): 1})


def function_section(pair: SHCP, f) -> Section:
    return Section(pair, {(): f})


def delta_section(pair: SHCP, P: Wedge, value=1) -> Section:
    return Section(pair, {tuple(P): value})


def delta_sections(pair: SHCP) -> Dict[str, Section]:
    """phi_f for each reduced generator and Phi_v for each odd basis vector,
    keyed by the generator / basis name."""
    out = {}
    for g in pair.group.gens:
        out[g] = function_section(pair, SPoly.var(g))
    for v in pair.sla.odd_indices:
        out[pair.sla.names[v]] = delta_section(pair, (v,))
    return out


# -- group operation pullbacks ---------------------------------------------------------

def _rename_slots(pair: SHCP, f: SPoly, mapping: Mapping) -> SPoly:
    """Simultaneously move reduced variables between slots."""
    G = pair.group
    tmp = {}
    for src in mapping:
        tmp.update({slot_var(g, src): slot_var(g, f"_{src}") for g in G.gens})
    f = f.rename(tmp)
    back = {}
    for src, dst in mapping.items():
        back.update({slot_var(g, f"_{src}"): slot_var(g, dst) for g in G.gens})
    return f.rename(back)


def mu_pullback(sec: Section) -> MultiSection:
    """Table of mu^*(phi): (P, Q) -> phi((h^{-1}.gamma P) gamma Q)(gh),
    with g in slot 1 and h in slot 2."""
    pair = sec.pair
    G = pair.group
    wedges = pair.uea.wedges()
    cache: Dict[tuple, SPoly] = {}
    out = {}
    for P in wedges:
        for Q in wedges:
            total = SPoly()
            for (exps, R), c in pair.twisted_product(P, Q).items():
                t = sec.table.get(R)
                if t is None:
                    continue
                key = (exps, R)
                v = cache.get(key)
                if v is None:
                    v = G.coproduct(apply_even(pair, exps, t))
                    cache[key] = v
                if v:
                    total = total + v * SPoly.coerce(c)
            if total:
                out[(P, Q)] = total
    return MultiSection(pair, 2, out)


def mu_eval(sec: Section, X: UEAElement, Y: UEAElement) -> SPoly:
    """mu^*(phi)(X, Y) for arbitrary X, Y in U(g)."""
    pair = sec.pair
    u = pair.sigma_apply(X, 2, True) * Y
    total = SPoly()
    for (exps, R), c in pair.uea.gamma_hat_inverse(u).items():
        t = sec.table.get(R)
        if t is not None:
            total = total + pair.group.coproduct(apply_even(pair, exps, t)) * SPoly.coerce(c)
    return total


def inv_pullback(sec: Section) -> Section:
    """i^*(phi)(X)(k) = phi(k.S(X))(k^{-1})."""
    pair = sec.pair
    U, G = pair.uea, pair.group
    out = {}
    for P in U.wedges():
        u = pair.sigma_apply(U.antipode(U.gamma_mono(P)), None, False)
        total = SPoly()
        for (exps, R), c in U.gamma_hat_inverse(u).items():
            t = sec.table.get(R)
            if t is None:
                continue
            v = apply_even(pair, exps, t)
            if v:
                total = total + G.antipode(v) * SPoly.coerce(c)
        _add(out, P, total)
    return Section(pair, out)


def counit_pullback(sec: Section):
    """e^*(phi) = phi(1)(e)."""
    return sec.pair.group.counit(sec[()])


def left_translate(sec: Section, h) -> Section:
    """l_h^*(phi)(X)(g) = phi(X)(hg)."""
    G = sec.pair.group
    out = {}
    for P, t in sec.table.items():
        v = G.evaluate(G.coproduct(t), h, 1)
        _add(out, P, G.to_slot(SPoly.coerce(v), 2, None))
    return Section(sec.pair, out)


def right_translate(sec: Section, h) -> Section:
    """r_h^*(phi)(X)(g) = phi(h^{-1}.X)(gh)."""
    pair = sec.pair
    U, G = pair.uea, pair.group
    M = pair.sigma_at(h, inverse=True)
    out = {}
    for P in U.wedges():
        f = evaluate_on_uea(sec, pair.sigma_apply_numeric(U.gamma_mono(P), M))
        if f:
            v = G.evaluate(G.coproduct(f), h, 2)
            _add(out, P, G.to_slot(SPoly.coerce(v), 1, None))
    return Section(pair, out)


def left_inv_vf(X: UEAElement, sec: Section) -> Section:
    """(D^L_X phi)(Y) = (-1)^{p(X)} phi(Y X), extended linearly in X."""
    pair = sec.pair
    U = pair.uea
    out = {}
    for px, Xp in X.parity_parts().items():
        s = -1 if px else 1
        for P in U.wedges():
            _add(out, P, evaluate_on_uea(sec, U.gamma_mono(P) * Xp) * s)
    return Section(pair, out)


def right_inv_vf(X: UEAElement, sec: Section) -> Section:
    """[(D^R_X phi)(Y)](g) = (-1)^{p(X)p(phi)} phi((g^{-1}.X) Y)(g)."""
    pair = sec.pair
    U = pair.uea
    out = {}
    for px, Xp in X.parity_parts().items():
        tw = pair.sigma_apply(Xp, None, True)
        for pphi, comp in sec.parity_parts().items():
            s = -1 if (px and pphi) else 1
            for P in U.wedges():
                dec = U.gamma_hat_inverse(tw * U.gamma_mono(P))
                _add(out, P, evaluate_decomposed(comp, dec) * s)
    return Section(pair, out)


# -- leg bookkeeping for the group axioms -------------------------------------------

def _leg_section(pair: SHCP, T: MultiSection, fixed_leg: int, fixed: Wedge, param_slot) -> Section:
    """Section P -> kappa(fixed, P) T(..) along the free leg of a two-leg
    table; the free leg's variables become plain, the fixed leg's variables
    move to ``param_slot``."""
    free = 1 - fixed_leg
    out = {}
    for key, v in T.table.items():
        if key[fixed_leg] != fixed:
            continue
        P = key[free]
        w = _rename_slots(pair, v, {free + 1: None, fixed_leg + 1: param_slot})
        _add(out, P, w * kappa(fixed, P))
    return Section(pair, out)


def mu_then_left(T: MultiSection) -> MultiSection:
    """(mu^* (x) id) applied to a two-leg table; legs (g1, g2, h)."""
    pair = T.pair
    out = {}
    for Q in {k[1] for k in T.table}:
        A = _leg_section(pair, T, 1, Q, "_h")
        for (P1, P2), v in mu_pullback(A).table.items():
            v = _rename_slots(pair, v, {"_h": 3})
            _add(out, (P1, P2, Q), v * kappa(Q, P1 + P2))
    return MultiSection(pair, 3, out)


def mu_then_right(T: MultiSection) -> MultiSection:
    """(id (x) mu^*) applied to a two-leg table; legs (g, h1, h2)."""
    pair = T.pair
    out = {}
    for P in {k[0] for k in T.table}:
        B = _leg_section(pair, T, 0, P, "_g")
        for (Q1, Q2), v in mu_pullback(B).table.items():
            v = _rename_slots(pair, v, {1: 2, 2: 3, "_g": 1})
            _add(out, (P, Q1, Q2), v * kappa(Q1 + Q2, P))
    return MultiSection(pair, 3, out)


def inv_on_leg(T: MultiSection, leg: int) -> MultiSection:
    """(i^* (x) id) or (id (x) i^*) on a two-leg table."""
    pair = T.pair
    other = 1 - leg
    out = {}
    for fixed in {k[other] for k in T.table}:
        A = _leg_section(pair, T, other, fixed, "_p")
        for P, v in inv_pullback(A).table.items():
            v = _rename_slots(pair, v, {None: leg + 1, "_p": other + 1})
            key = (P, fixed) if leg == 0 else (fixed, P)
            _add(out, key, v * kappa(fixed, P))
    return MultiSection(pair, 2, out)


def multiply_legs(T: MultiSection) -> Section:
    """m: O(G x G) -> O(G), the pullback along the diagonal."""
    pair = T.pair
    out = {}
    for P in pair.uea.wedges():
        total = SPoly()
        for R1, R2, s in _splits(P):
            v = T.table.get((R1, R2))
            if v is not None:
                total = total + _rename_slots(pair, v, {1: None, 2: None}) * s
        _add(out, P, total)
    return Section(pair, out)


def counit_on_leg(T: MultiSection, leg: int) -> Section:
    pair = T.pair
    G = pair.group
    out = {}
    for key, v in T.table.items():
        if key[leg] != ():
            continue
        w = SPoly.coerce(G.counit(v, leg + 1))
        _add(out, key[1 - leg], _rename_slots(pair, w, {2 - leg: None}))
    return Section(pair, out)


def hopf_axiom_suite(pair: SHCP, sections: Iterable[Section] | None = None) -> List[str]:
    """Group axioms for mu^*, e^*, i^* on every delta section (or the given
    sections).  Each failure names the first offending table entry."""
    if sections is None:
        named = list(delta_sections(pair).items())
    else:
        named = [(f"section#{i}", s) for i, s in enumerate(sections)]
    names = pair.sla.names
    report = []

    def first_diff(A, B, what, label):
        multi = isinstance(A, MultiSection)
        order = (lambda k: [(len(P), P) for P in k]) if multi else (lambda k: (len(k), k))
        for k in sorted(set(A.table) | set(B.table), key=order):
            if A[k] != B[k]:
                if multi:
                    loc = ",".join(wedge_label(P, names) for P in k)
                else:
                    loc = wedge_label(k, names)
                report.append(f"{what} fails for {label} at ({loc})")
                return

    U, G = pair.uea, pair.group
    wedges = U.wedges()
    for label, phi in named:
        T = mu_pullback(phi)
        # mu^*(phi) must be U(g_0)-linear in each leg; the table alone cannot
        # see a sigma that is incompatible with the adjoint action
        broken = None
        for z in range(pair.sla.m):
            Z = U.gen(z)
            for P, Q in itertools.product(wedges, wedges):
                gP, gQ = U.gamma_mono(P), U.gamma_mono(Q)
                if mu_eval(phi, Z * gP, gQ) != G.left_invariant_op(pair.tangent[z], T[(P, Q)], 1):
                    broken = ("first", names[z], P, Q)
                elif mu_eval(phi, gP, Z * gQ) != G.left_invariant_op(pair.tangent[z], T[(P, Q)], 2):
                    broken = ("second", names[z], P, Q)
                if broken:
                    break
            if broken:
                break
        if broken:
            leg, zn, P, Q = broken
            report.append(f"{leg}-leg U(g0)-linearity fails for {label} under {zn} at "
                          f"({wedge_label(P, names)},{wedge_label(Q, names)})")
        first_diff(mu_then_left(T), mu_then_right(T), "associativity", label)
        first_diff(counit_on_leg(T, 0), phi, "left unit law", label)
        first_diff(counit_on_leg(T, 1), phi, "right unit law", label)
        unit = unit_section(pair).scale(counit_pullback(phi))
        first_diff(multiply_legs(inv_on_leg(T, 0)), unit, "left antipode law", label)
        first_diff(multiply_legs(inv_on_leg(T, 1)), unit, "right antipode law", label)
    return report
