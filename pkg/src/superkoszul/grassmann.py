"""Grassmann-number points: an independent check of the symbolic tables.

A point of the Koszul group with values in the exterior algebra on ``s``
auxiliary odd generators assigns a Grassmann number to every coordinate
section (``phi_f`` for reduced generators, ``Phi_v`` for odd basis vectors).
Sections are expanded in these coordinates as

    phi = sum_P (-1)^{k(k-1)/2} phi_{t(P)} Phi_{v_1} ... Phi_{v_k},

and two-leg tables carry the extra pairing sign (-1)^{|P||Q|}.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence

from .poly import SPoly, slot_var


def _mask_sign(a: int, b: int) -> int:
    """Sign of moving the generators of ``b`` past the higher ones of ``a``."""
    s = 0
    bb = b
    while bb:
        low = bb & -bb
        j = low.bit_length() - 1
        s += bin(a >> (j + 1)).count("1")
        bb ^= low
    return -1 if s % 2 else 1


class GrassmannNumber:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def scalar(cls, c) -> "GrassmannNumber":
        return cls({0: c})

    @classmethod
    def gen(cls, i: int) -> "GrassmannNumber":
        """The generator eta_i (0-based)."""
        return cls({1 << i: 1})

    @classmethod
    def coerce(cls, x) -> "GrassmannNumber":
        return x if isinstance(x, GrassmannNumber) else cls.scalar(x)

    @property
    def body(self) -> Fraction:
        return self.terms.get(0, Fraction(0))

    def soul(self) -> "GrassmannNumber":
        return GrassmannNumber({m: c for m, c in self.terms.items() if m})

    def __add__(self, other):
        other = GrassmannNumber.coerce(other)
        d = dict(self.terms)
        for m, c in other.terms.items():
            d[m] = d.get(m, 0) + c
        return GrassmannNumber(d)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannNumber({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-GrassmannNumber.coerce(other))

    def __rsub__(self, other):
        return GrassmannNumber.coerce(other) - self

    def __mul__(self, other):
        other = GrassmannNumber.coerce(other)
        d: Dict[int, Fraction] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                if a & b:
                    continue
                m = a | b
                d[m] = d.get(m, 0) + _mask_sign(a, b) * x * y
        return GrassmannNumber(d)

    def __rmul__(self, other):
        return GrassmannNumber.coerce(other) * self

    def inverse(self) -> "GrassmannNumber":
        b = self.body
        if b == 0:
            raise ZeroDivisionError("Grassmann number with zero body is not invertible")
        n = self.soul() * (1 / b)
        result = GrassmannNumber.scalar(1)
        power = GrassmannNumber.scalar(1)
        while True:
            power = power * (-n)
            if not power.terms:
                break
            result = result + power
        return result * (1 / b)

    def __pow__(self, e: int):
        base = self.inverse() if e < 0 else self
        out = GrassmannNumber.scalar(1)
        for _ in range(abs(e)):
            out = out * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GrassmannNumber.scalar(other)
        if isinstance(other, GrassmannNumber):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def parity(self):
        ps = {bin(m).count("1") % 2 for m in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda t: (bin(t[0]).count("1"), t[0])):
            gens = "".join(f"e{i + 1}" for i in range(m.bit_length()) if m >> i & 1)
            parts.append(f"{c}{'*' + gens if gens else ''}")
        return " + ".join(parts)


def eval_poly(f: SPoly, values: Mapping[str, GrassmannNumber]) -> GrassmannNumber:
    """Substitute Grassmann numbers for the variables of ``f``; odd variables
    are multiplied in the canonical monomial order."""
    out = GrassmannNumber()
    cache: Dict[tuple, GrassmannNumber] = {}
    for (ev, od), c in f.terms.items():
        term = GrassmannNumber.scalar(c)
        for k, e in ev:
            key = (k, e)
            if key not in cache:
                cache[key] = values[k] ** e
            term = term * cache[key]
        for k in od:
            term = term * values[k]
        out = out + term
    return out


@dataclass
class SPoint:
    """Assignment of Grassmann numbers to named generators."""

    values: Dict[str, GrassmannNumber] = field(default_factory=dict)

    def __getitem__(self, k):
        return self.values[k]


def wedge_sign(P) -> int:
    k = len(P)
    return -1 if (k * (k - 1) // 2) % 2 else 1


def _odd_product(pair, P, point: SPoint) -> GrassmannNumber:
    out = GrassmannNumber.scalar(1)
    for v in P:
        out = out * point[pair.sla.names[v]]
    return out


def eval_section(sec, point: SPoint) -> GrassmannNumber:
    pair = sec.pair
    evens = {g: point[g] for g in pair.group.gens}
    total = GrassmannNumber()
    for P, f in sec.table.items():
        total = total + eval_poly(f, evens) * _odd_product(pair, P, point) * wedge_sign(P)
    return total


def eval_two_var(T, psi: SPoint, chi: SPoint) -> GrassmannNumber:
    pair = T.pair
    G = pair.group
    evens = {slot_var(g, 1): psi[g] for g in G.gens}
    evens.update({slot_var(g, 2): chi[g] for g in G.gens})
    total = GrassmannNumber()
    for (P, Q), f in T.table.items():
        s = wedge_sign(P) * wedge_sign(Q) * (-1 if len(P) % 2 and len(Q) % 2 else 1)
        total = total + eval_poly(f, evens) * _odd_product(pair, P, psi) * _odd_product(pair, Q, chi) * s
    return total


def coordinate_names(pair) -> List[str]:
    return list(pair.group.gens) + [pair.sla.names[v] for v in pair.sla.odd_indices]


def point_product(pair, psi: SPoint, chi: SPoint, mu_tables=None) -> SPoint:
    """Coordinates of the product point, read off mu^* of each coordinate."""
    from .koszul import delta_sections, mu_pullback

    if mu_tables is None:
        mu_tables = {k: mu_pullback(s) for k, s in delta_sections(pair).items()}
    return SPoint({k: eval_two_var(T, psi, chi) for k, T in mu_tables.items()})


def point_inverse(pair, psi: SPoint, inv_sections=None) -> SPoint:
    from .koszul import delta_sections, inv_pullback

    if inv_sections is None:
        inv_sections = {k: inv_pullback(s) for k, s in delta_sections(pair).items()}
    return SPoint({k: eval_section(s, psi) for k, s in inv_sections.items()})


def identity_point(pair) -> SPoint:
    vals = {g: GrassmannNumber.scalar(pair.group.eps[g]) for g in pair.group.gens}
    vals.update({pair.sla.names[v]: GrassmannNumber() for v in pair.sla.odd_indices})
    return SPoint(vals)


def random_grassmann(rng: random.Random, s: int, parity: int, body=None, density: float = 0.6,
                     lo: int = -5, hi: int = 5) -> GrassmannNumber:
    terms = {}
    for m in range(1 << s):
        if bin(m).count("1") % 2 != parity or m == 0:
            continue
        if rng.random() < density:
            terms[m] = Fraction(rng.randint(lo, hi), rng.randint(1, 3))
    if parity == 0:
        terms[0] = body if body is not None else Fraction(rng.choice([i for i in range(lo, hi + 1) if i]), rng.randint(1, 3))
    return GrassmannNumber(terms)


def random_point(pair, rng: random.Random, s: int | None = None) -> SPoint:
    """Random point with nonzero bodies on invertible generators and bodies
    near the identity on the others."""
    if s is None:
        s = 2 * pair.sla.q
    vals = {}
    for g in pair.group.gens:
        body = None if pair.group.invertible[g] else Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        vals[g] = random_grassmann(rng, s, 0, body)
    for v in pair.sla.odd_indices:
        vals[pair.sla.names[v]] = random_grassmann(rng, s, 1) if s else GrassmannNumber()
    return SPoint(vals)


@dataclass
class GroupModel:
    """A concrete group law in model coordinates.

    ``dictionary`` expresses each model coordinate as a Section of the Koszul
    group; ``law`` gives the model coordinates of a product in terms of the
    factors' coordinates, written in slot copies ``c@1`` and ``c@2``.
    """

    coords: Sequence[str]
    odd: Sequence[str]
    dictionary: Mapping[str, object]
    law: Mapping[str, SPoly]


def model_coordinates(model: GroupModel, point: SPoint) -> Dict[str, GrassmannNumber]:
    return {c: eval_section(model.dictionary[c], point) for c in model.coords}


def pullback_vs_model(pair, model: GroupModel, psi: SPoint, chi: SPoint, mu_tables=None):
    """Compare the product computed from mu^* with the model's group law.
    Returns ``(ok, mismatches)`` where mismatches maps coordinates to the
    two disagreeing values."""
    prod = point_product(pair, psi, chi, mu_tables)
    lhs = model_coordinates(model, prod)
    a = model_coordinates(model, psi)
    b = model_coordinates(model, chi)
    vals = {slot_var(c, 1): a[c] for c in model.coords}
    vals.update({slot_var(c, 2): b[c] for c in model.coords})
    bad = {}
    for c in model.coords:
        rhs = eval_poly(model.law[c], vals)
        if lhs[c] != rhs:
            bad[c] = (lhs[c], rhs)
    return not bad, bad


def associativity_probe(pair, psi, chi, omega, mu_tables=None) -> bool:
    left = point_product(pair, point_product(pair, psi, chi, mu_tables), omega, mu_tables)
    right = point_product(pair, psi, point_product(pair, chi, omega, mu_tables), mu_tables)
    return all(left[k] == right[k] for k in coordinate_names(pair))


def unit_inverse_probe(pair, psi, mu_tables=None, inv_sections=None) -> bool:
    e = identity_point(pair)
    inv = point_inverse(pair, psi, inv_sections)
    checks = [point_product(pair, psi, e, mu_tables), point_product(pair, e, psi, mu_tables)]
    ok = all(c[k] == psi[k] for c in checks for k in coordinate_names(pair))
    for p in (point_product(pair, psi, inv, mu_tables), point_product(pair, inv, psi, mu_tables)):
        ok = ok and all(p[k] == e[k] for k in coordinate_names(pair))
    return ok
