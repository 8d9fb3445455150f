"""Super Harish-Chandra pairs: a super Lie algebra, a reduced group given by a
coordinate Hopf algebra, the representation sigma, and tangent functionals."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence

from .algebra import UEA, SuperLieAlgebra, UEAElement, validate_sla
from .hopf import CoordHopf, TangentFunctional
from .poly import MalformedElement, SPoly, slot_var


class SHCP:
    """``sigma[k][j]`` is the coordinate function with
    ``sigma(h) e_j = sum_k sigma[k][j](h) e_k``."""

    def __init__(self, sla: SuperLieAlgebra, group: CoordHopf,
                 sigma: Sequence[Sequence[SPoly]], tangent: Sequence[TangentFunctional],
                 name: str = ""):
        self.sla = sla
        self.group = group
        self.sigma = [[SPoly.coerce(x) for x in row] for row in sigma]
        self.tangent = list(tangent)
        self.name = name
        self.uea = UEA(sla)
        self._sigma_cache: Dict[tuple, List[UEAElement]] = {}
        self._twist_cache: Dict[tuple, Dict] = {}

    @property
    def n(self):
        return self.sla.n

    def sigma_entry(self, k: int, j: int, slot=None, inverse: bool = False) -> SPoly:
        f = self.sigma[k][j]
        if inverse:
            f = self.group.antipode(f)
        return self.group.to_slot(f, None, slot)

    def _gen_images(self, slot, inverse) -> List[UEAElement]:
        key = (slot, inverse)
        imgs = self._sigma_cache.get(key)
        if imgs is None:
            imgs = []
            for j in range(self.n):
                imgs.append(self.uea.vector({k: self.sigma_entry(k, j, slot, inverse)
                                             for k in range(self.n) if self.sigma[k][j]}))
            self._sigma_cache[key] = imgs
        return imgs

    def sigma_apply(self, u: UEAElement, slot=None, inverse: bool = False) -> UEAElement:
        """Extend sigma multiplicatively to U(g).  The group variable lives in
        tensor slot ``slot``; ``inverse`` realizes ``h^{-1}.u``."""
        imgs = self._gen_images(slot, inverse)
        out = self.uea.zero()
        for mono, c in u.terms.items():
            term = self.uea.coerce(SPoly.coerce(c))
            for i in self.uea.mono_word(mono):
                term = term * imgs[i]
            out = out + term
        return out

    def sigma_at(self, point, inverse: bool = False) -> List[List[Fraction]]:
        """Numeric matrix of sigma(h) (or sigma(h^{-1})) at a group point."""
        return [[Fraction(self.group.evaluate(self.sigma_entry(k, j, None, inverse), point))
                 for j in range(self.n)] for k in range(self.n)]

    def sigma_apply_numeric(self, u: UEAElement, matrix) -> UEAElement:
        out = self.uea.zero()
        imgs = [self.uea.vector({k: matrix[k][j] for k in range(self.n) if matrix[k][j]})
                for j in range(self.n)]
        for mono, c in u.terms.items():
            term = self.uea.coerce(c)
            for i in self.uea.mono_word(mono):
                term = term * imgs[i]
            out = out + term
        return out

    def twisted_product(self, P, Q) -> Dict:
        """gamma_hat^{-1}((h^{-1}.gamma(P)) gamma(Q)) with ``h`` in slot 2."""
        key = (P, Q)
        r = self._twist_cache.get(key)
        if r is None:
            u = self.sigma_apply(self.uea.gamma_mono(P), 2, True) * self.uea.gamma_mono(Q)
            r = self.uea.gamma_hat_inverse(u)
            self._twist_cache[key] = r
        return r

    def __repr__(self):
        return f"SHCP({self.name or self.sla!r})"


def validate_shcp(pair: SHCP) -> List[str]:
    report = list(validate_sla(pair.sla))
    report += pair.group.validate()
    sla, G, n = pair.sla, pair.group, pair.n
    if len(pair.tangent) != sla.m:
        report.append(f"expected {sla.m} tangent functionals, got {len(pair.tangent)}")
        return report
    if len(pair.sigma) != n or any(len(r) != n for r in pair.sigma):
        report.append("sigma must be a square matrix of the algebra's dimension")
        return report
    S = pair.sigma
    names = sla.names
    for k in range(n):
        for j in range(n):
            if sla.parity(k) != sla.parity(j) and S[k][j]:
                report.append(f"parity: sigma[{names[k]},{names[j]}] must vanish")
    for k in range(n):
        for j in range(n):
            lhs = G.coproduct(S[k][j])
            rhs = SPoly()
            for l in range(n):
                rhs = rhs + G.to_slot(S[k][l], None, 1) * G.to_slot(S[l][j], None, 2)
            if lhs != rhs:
                report.append(f"homomorphism law fails at sigma[{names[k]},{names[j]}]")
            if G.counit(S[k][j]) != Fraction(int(k == j)):
                report.append(f"sigma(e) differs from the identity at [{names[k]},{names[j]}]")
    # sigma(g)[e_i, e_j] = [sigma(g) e_i, sigma(g) e_j]
    for i in range(n):
        for j in range(n):
            lhs: Dict[int, SPoly] = {}
            for t, c in sla.bracket(i, j).items():
                for k in range(n):
                    lhs[k] = lhs.get(k, SPoly()) + S[k][t] * c
            rhs: Dict[int, SPoly] = {}
            for a in range(n):
                if not S[a][i]:
                    continue
                for b in range(n):
                    if not S[b][j]:
                        continue
                    for k, c in sla.bracket(a, b).items():
                        rhs[k] = rhs.get(k, SPoly()) + S[a][i] * S[b][j] * c
            if any(lhs.get(k, SPoly()) != rhs.get(k, SPoly()) for k in range(n)):
                report.append(f"bracket equivariance fails on ({names[i]},{names[j]})")
    for z in range(sla.m):
        ad = sla.ad_matrix(z)
        for k in range(n):
            for j in range(n):
                d = G.tangent_apply(pair.tangent[z], S[k][j])
                if d != ad[k][j]:
                    report.append(f"infinitesimal compatibility fails for {names[z]} at [{names[k]},{names[j]}]")
    return report


@dataclass
class PairMorphism:
    """Data of a morphism of pairs: ``pullback`` sends target coordinate
    generators to source coordinate functions (dual of the group map) and
    ``linear[k][j]`` is the matrix of the Lie superalgebra map."""

    source: SHCP
    target: SHCP
    pullback: Mapping[str, SPoly]
    linear: Sequence[Sequence[Fraction]]


def validate_morphism(mor: PairMorphism) -> List[str]:
    """Check the two compatibility conditions of a morphism of pairs.

    Only validation is offered; transporting sections along a morphism is
    not implemented.
    """
    src, tgt = mor.source, mor.target
    Gs, Gt = src.group, tgt.group
    L = [[Fraction(x) for x in row] for row in mor.linear]
    report = []
    sub = lambda f, slot=None: f.subs({slot_var(g, slot): Gs.to_slot(mor.pullback[g], None, slot)
                                       for g in Gt.gens})
    for g in Gt.gens:
        lhs = sub(Gt.delta[g], 1)
        lhs = lhs.subs({slot_var(h, 2): Gs.to_slot(mor.pullback[h], None, 2) for h in Gt.gens})
        rhs = Gs.coproduct(mor.pullback[g])
        if lhs != rhs:
            report.append(f"group map does not respect the coproduct on {g}")
    nt, ns = tgt.n, src.n
    for i in range(ns):
        for j in range(ns):
            lhs = {k: sum((L[k][t] * c for t, c in src.sla.bracket(i, j).items()), Fraction(0))
                   for k in range(nt)}
            rhs: Dict[int, Fraction] = {}
            for a in range(nt):
                for b in range(nt):
                    if L[a][i] and L[b][j]:
                        for k, c in tgt.sla.bracket(a, b).items():
                            rhs[k] = rhs.get(k, Fraction(0)) + L[a][i] * L[b][j] * c
            if any(lhs[k] != rhs.get(k, 0) for k in range(nt)):
                report.append(f"linear map is not a bracket morphism on ({src.sla.names[i]},{src.sla.names[j]})")
    # differential of the group map agrees with the even block
    for z in range(src.sla.m):
        for g in Gt.gens:
            lhs = Gs.tangent_apply(src.tangent[z], mor.pullback[g])
            rhs = sum((L[k][z] * Gt.tangent_apply(tgt.tangent[k], Gt.var(g)) for k in range(tgt.sla.m)),
                      Fraction(0))
            if lhs != rhs:
                report.append(f"differential mismatch on {src.sla.names[z]} at {g}")
    # L sigma_src(g) = sigma_tgt(psi0(g)) L
    try:
        St = [[sub(x) for x in row] for row in tgt.sigma]
    except MalformedElement as exc:
        return report + [f"pullback not substitutable: {exc}"]
    for k in range(nt):
        for j in range(ns):
            lhs = sum((src.sigma[t][j] * L[k][t] for t in range(ns)), SPoly())
            rhs = sum((St[k][t] * L[t][j] for t in range(nt)), SPoly())
            if lhs != rhs:
                report.append(f"sigma equivariance fails at [{tgt.sla.names[k]},{src.sla.names[j]}]")
    return report
