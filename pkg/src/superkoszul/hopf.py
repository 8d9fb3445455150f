"""Coordinate Hopf algebras of reduced groups (free Laurent presentations).

Elements are :class:`SPoly` in the generator names.  Tensor powers use
slot-tagged copies ``name@k`` (see :func:`slot_var`); the coproduct rule of a
generator is written in the copies ``name@1`` and ``name@2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence

from .poly import MalformedElement, SPoly, slot_var


@dataclass(frozen=True)
class TangentFunctional:
    """A derivation at the identity, given by its values on the generators."""

    values: Mapping[str, Fraction] = field(default_factory=dict)

    def value(self, gen: str) -> Fraction:
        return Fraction(self.values.get(gen, 0))


class CoordHopf:
    def __init__(self, gens: Sequence[str], invertible: Sequence[bool],
                 coproduct: Mapping[str, SPoly], counit: Mapping[str, object],
                 antipode: Mapping[str, SPoly]):
        self.gens = list(gens)
        self.invertible = dict(zip(self.gens, invertible))
        self.delta = {g: SPoly.coerce(coproduct[g]) for g in self.gens}
        self.eps = {g: Fraction(counit[g]) for g in self.gens}
        self.anti = {g: SPoly.coerce(antipode[g]) for g in self.gens}
        self._dx_cache: Dict[tuple, SPoly] = {}

    @classmethod
    def torus(cls, gens: Sequence[str]) -> "CoordHopf":
        return cls(gens, [True] * len(gens),
                   {g: SPoly.var(slot_var(g, 1)) * SPoly.var(slot_var(g, 2)) for g in gens},
                   {g: 1 for g in gens},
                   {g: SPoly.var(g, power=-1) for g in gens})

    @classmethod
    def additive(cls, gens: Sequence[str]) -> "CoordHopf":
        return cls(gens, [False] * len(gens),
                   {g: SPoly.var(slot_var(g, 1)) + SPoly.var(slot_var(g, 2)) for g in gens},
                   {g: 0 for g in gens},
                   {g: -SPoly.var(g) for g in gens})

    # -- helpers ---------------------------------------------------------
    def var(self, g: str, slot=None) -> SPoly:
        return SPoly.var(slot_var(g, slot))

    def to_slot(self, f: SPoly, src=None, dst=None) -> SPoly:
        if src == dst:
            return f
        return f.rename({slot_var(g, src): slot_var(g, dst) for g in self.gens})

    def check_element(self, f: SPoly, slot=None) -> None:
        for (ev, _od) in f.terms:
            for k, e in ev:
                for g in self.gens:
                    if k == slot_var(g, slot) and e < 0 and not self.invertible[g]:
                        raise MalformedElement(f"negative power of non-invertible generator {g}")

    # -- Hopf structure ----------------------------------------------------
    def coproduct(self, f: SPoly, src=None, dst=(1, 2)) -> SPoly:
        """Apply the coproduct to the generators living in slot ``src``;
        the two output legs go to slots ``dst``."""
        a, b = dst
        mapping = {}
        for g in self.gens:
            img = self.delta[g].rename({slot_var(h, 1): slot_var(h, "_a") for h in self.gens})
            img = img.rename({slot_var(h, 2): slot_var(h, "_b") for h in self.gens})
            img = img.rename({slot_var(h, "_a"): slot_var(h, a) for h in self.gens})
            img = img.rename({slot_var(h, "_b"): slot_var(h, b) for h in self.gens})
            mapping[slot_var(g, src)] = img
        return f.subs(mapping)

    def counit(self, f: SPoly, src=None):
        """Evaluate the generators of slot ``src`` at the identity.  Returns a
        Fraction when nothing else is left."""
        r = f.subs({slot_var(g, src): SPoly.const(self.eps[g]) for g in self.gens})
        return r.constant_term() if r.is_constant() else r

    def antipode(self, f: SPoly, slot=None) -> SPoly:
        self.check_element(f, slot)
        return f.subs({slot_var(g, slot): self.to_slot(self.anti[g], None, slot) for g in self.gens})

    def evaluate(self, f: SPoly, point: "GroupPoint", slot=None):
        r = f.subs({slot_var(g, slot): SPoly.const(point.values[g]) for g in self.gens})
        return r.constant_term() if r.is_constant() else r

    def identity(self) -> "GroupPoint":
        return GroupPoint(dict(self.eps))

    def point(self, values: Mapping[str, object]) -> "GroupPoint":
        p = GroupPoint({g: Fraction(values[g]) for g in self.gens})
        for g in self.gens:
            if self.invertible[g] and p.values[g] == 0:
                raise ValueError(f"invertible generator {g} evaluated to zero")
        return p

    def point_mul(self, p: "GroupPoint", q: "GroupPoint") -> "GroupPoint":
        vals = {}
        for g in self.gens:
            f = self.evaluate(self.delta[g], p, 1)
            vals[g] = self.evaluate(SPoly.coerce(f), q, 2)
        return GroupPoint(vals)

    def point_inverse(self, p: "GroupPoint") -> "GroupPoint":
        return GroupPoint({g: self.evaluate(self.anti[g], p) for g in self.gens})

    # -- tangent functionals and invariant operators -----------------------
    def tangent_apply(self, Z: TangentFunctional, f: SPoly, slot=None):
        """Z(f) = sum_g Z(g) * (df/dg)(e)."""
        total = SPoly()
        for g in self.gens:
            z = Z.value(g)
            if z:
                total = total + SPoly.coerce(self.counit(f.diff(slot_var(g, slot)), slot)) * z
        return total.constant_term() if total.is_constant() else total

    def _dx_gen(self, Z: TangentFunctional, g: str) -> SPoly:
        key = (tuple(sorted(Z.values.items())), g)
        r = self._dx_cache.get(key)
        if r is None:
            r = SPoly.coerce(self.tangent_apply(Z, self.delta[g], 2))
            r = self.to_slot(r, 1, None)
            self._dx_cache[key] = r
        return r

    def left_invariant_op(self, Z: TangentFunctional, f: SPoly, slot=None) -> SPoly:
        """D_Z = (id (x) Z_e) o coproduct, acting as a derivation on slot ``slot``."""
        total = SPoly()
        for g in self.gens:
            dg = self._dx_gen(Z, g)
            if dg:
                d = f.diff(slot_var(g, slot))
                if d:
                    total = total + d * self.to_slot(dg, None, slot)
        return total

    def apply_word(self, tangents: Sequence[TangentFunctional], word: Sequence[int], f: SPoly, slot=None) -> SPoly:
        """D_{Z_1 ... Z_k} = D_{Z_1} o ... o D_{Z_k} (rightmost letter acts first)."""
        for i in reversed(word):
            if not f:
                break
            f = self.left_invariant_op(tangents[i], f, slot)
        return f

    # -- validation -------------------------------------------------------------
    def validate(self) -> List[str]:
        report = []
        for g in self.gens:
            x = self.var(g)
            d = self.delta[g]
            try:
                left = self.to_slot(SPoly.coerce(self.counit(d, 1)), 2, None)
                right = self.to_slot(SPoly.coerce(self.counit(d, 2)), 1, None)
                if left != x or right != x:
                    report.append(f"counit law fails on {g}")
                lhs = self.coproduct(d, 1, (1, 3))
                lhs = lhs.rename({slot_var(h, 3): slot_var(h, "_m") for h in self.gens})
                lhs = lhs.rename({slot_var(h, 2): slot_var(h, 3) for h in self.gens})
                lhs = lhs.rename({slot_var(h, "_m"): slot_var(h, 2) for h in self.gens})
                rhs = self.coproduct(d, 2, (2, 3))
                if lhs != rhs:
                    report.append(f"coassociativity fails on {g}")
                anti = self.to_slot(self.antipode(d, 1), 1, None)
                anti = self.to_slot(anti, 2, None)
                if anti != SPoly.const(self.eps[g]):
                    report.append(f"antipode axiom fails on {g}")
            except MalformedElement as exc:
                report.append(f"malformed structure map on {g}: {exc}")
            if self.invertible[g] and self.eps[g] == 0:
                report.append(f"invertible generator {g} has zero counit")
        return report


@dataclass(frozen=True)
class GroupPoint:
    values: Mapping[str, Fraction]

    def __getitem__(self, g):
        return self.values[g]
