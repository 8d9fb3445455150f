"""Super Lie algebras, their enveloping algebras in PBW normal form, and the
exterior algebra on the odd part.

Basis indices run over ``0..m-1`` (even) followed by ``m..m+q-1`` (odd).  A
PBW monomial is ``(exps, odds)``: an exponent vector over the even basis and
a strictly increasing tuple of odd indices.  A wedge monomial is a strictly
increasing tuple of odd indices.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

PBW = Tuple[Tuple[int, ...], Tuple[int, ...]]
Wedge = Tuple[int, ...]
Word = Tuple[int, ...]

FUEL = 10 ** 6


class StraighteningError(RuntimeError):
    """Raised when PBW straightening exceeds its step budget."""


def perm_sign(seq: Sequence) -> int:
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def _is_zero(c) -> bool:
    return c == 0


def _acc(d: dict, key, c):
    v = d.get(key, 0) + c if key in d else c
    if _is_zero(v):
        d.pop(key, None)
    else:
        d[key] = v


class SuperLieAlgebra:
    """Finite-dimensional super Lie algebra with rational structure constants.

    ``brackets`` maps index pairs ``(i, j)`` to sparse vectors ``{k: c}``.
    Pairs that are not given are derived by super antisymmetry from the
    reversed pair, or are zero.
    """

    def __init__(self, even_names: Sequence[str], odd_names: Sequence[str],
                 brackets: Mapping[Tuple[int, int], Mapping[int, object]] | None = None):
        self.even_names = list(even_names)
        self.odd_names = list(odd_names)
        self.names = self.even_names + self.odd_names
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis names must be distinct")
        self.m = len(self.even_names)
        self.q = len(self.odd_names)
        self.n = self.m + self.q
        self.raw = {}
        for (i, j), vec in (brackets or {}).items():
            clean = {k: Fraction(c) for k, c in vec.items() if Fraction(c)}
            self.raw[(i, j)] = clean
        self._table = {}
        for i in range(self.n):
            for j in range(self.n):
                if (i, j) in self.raw:
                    self._table[(i, j)] = self.raw[(i, j)]
                elif (j, i) in self.raw:
                    s = Fraction(-1 if not (self.parity(i) and self.parity(j)) else 1)
                    self._table[(i, j)] = {k: s * c for k, c in self.raw[(j, i)].items()}

    @classmethod
    def from_names(cls, even, odd, brackets: Mapping[Tuple[str, str], Mapping[str, object]]):
        names = list(even) + list(odd)
        idx = {nm: i for i, nm in enumerate(names)}
        raw = {(idx[a], idx[b]): {idx[k]: c for k, c in vec.items()} for (a, b), vec in brackets.items()}
        return cls(even, odd, raw)

    def parity(self, i: int) -> int:
        return 0 if i < self.m else 1

    def index(self, name: str) -> int:
        return self.names.index(name)

    @property
    def odd_indices(self) -> range:
        return range(self.m, self.n)

    def bracket(self, i: int, j: int) -> Dict[int, Fraction]:
        return self._table.get((i, j), {})

    def bracket_vectors(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.bracket(i, j).items():
                    _acc(out, k, a * b * c)
        return out

    def ad_matrix(self, i: int) -> List[List[Fraction]]:
        """Matrix of ``ad(e_i)``; column ``j`` holds ``[e_i, e_j]``."""
        M = [[Fraction(0)] * self.n for _ in range(self.n)]
        for j in range(self.n):
            for k, c in self.bracket(i, j).items():
                M[k][j] = c
        return M

    def vector_parity(self, v: Mapping[int, Fraction]):
        ps = {self.parity(i) for i, c in v.items() if c}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def __repr__(self):
        return f"SuperLieAlgebra(even={self.even_names}, odd={self.odd_names})"


def validate_sla(sla: SuperLieAlgebra) -> List[str]:
    """Violated defining identities; empty iff ``sla`` is a super Lie algebra."""
    report = []
    names = sla.names
    p = sla.parity
    for (i, j), vec in sorted(sla.raw.items()):
        for k in vec:
            if p(k) != (p(i) + p(j)) % 2:
                report.append(f"parity: [{names[i]},{names[j]}] has a component along {names[k]}")
    for i in range(sla.n):
        for j in range(i, sla.n):
            a = sla.bracket(i, j)
            b = sla.bracket(j, i)
            sign = 1 if p(i) * p(j) else -1
            bad = [k for k in set(a) | set(b) if a.get(k, 0) - sign * b.get(k, 0) != 0]
            if bad:
                report.append(f"antisymmetry: [{names[i]},{names[j]}] vs [{names[j]},{names[i]}]")
    for i, j, k in itertools.combinations_with_replacement(range(sla.n), 3):
        total: Dict[int, Fraction] = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            s = -1 if p(a) * p(c) else 1
            inner = sla.bracket(b, c)
            for t, coef in sla.bracket_vectors({a: Fraction(1)}, inner).items():
                _acc(total, t, s * coef)
        if total:
            report.append(f"jacobi: ({names[i]},{names[j]},{names[k]})")
    return report


class UEAElement:
    """Element of U(g) in PBW normal form; coefficients are Fractions or any
    commutative even ring elements (e.g. coordinate functions)."""

    __slots__ = ("uea", "terms")

    def __init__(self, uea: "UEA", terms: Mapping[PBW, object] | None = None):
        self.uea = uea
        self.terms = {m: c for m, c in (terms or {}).items() if not _is_zero(c)}

    def __add__(self, other):
        other = self.uea.coerce(other)
        d = dict(self.terms)
        for m, c in other.terms.items():
            _acc(d, m, c)
        return UEAElement(self.uea, d)

    __radd__ = __add__

    def __neg__(self):
        return UEAElement(self.uea, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self.uea.coerce(other))

    def __mul__(self, other):
        if isinstance(other, UEAElement):
            return self.uea.mul(self, other)
        return UEAElement(self.uea, {m: c * other for m, c in self.terms.items()})

    def __rmul__(self, other):
        return UEAElement(self.uea, {m: other * c for m, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, UEAElement):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.uea.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def parity_parts(self) -> Dict[int, "UEAElement"]:
        parts: Dict[int, dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(len(m[1]) % 2, {})[m] = c
        return {p: UEAElement(self.uea, t) for p, t in parts.items()}

    def map_coeffs(self, fn):
        return UEAElement(self.uea, {m: fn(c) for m, c in self.terms.items()})

    def __repr__(self):
        return f"UEAElement({self.uea.format(self)})"

    def __str__(self):
        return self.uea.format(self)


class UEA:
    """The universal enveloping algebra of a super Lie algebra with its
    super Hopf structure and the antisymmetrizer ``gamma``."""

    def __init__(self, sla: SuperLieAlgebra):
        self.sla = sla
        self.m, self.q, self.n = sla.m, sla.q, sla.n
        self._norm_cache: Dict[Word, Dict[PBW, Fraction]] = {}
        self._mul_cache: Dict[Tuple[PBW, PBW], Dict[PBW, Fraction]] = {}
        self._gamma_cache: Dict[Wedge, UEAElement] = {}
        self._xgamma_cache: Dict[Tuple[Tuple[int, ...], Wedge], Dict[PBW, Fraction]] = {}
        self._steps = 0

    # -- monomials -------------------------------------------------------
    def unit_mono(self) -> PBW:
        return ((0,) * self.m, ())

    def mono_word(self, mono: PBW) -> Word:
        exps, odds = mono
        w: List[int] = []
        for i, e in enumerate(exps):
            w.extend([i] * e)
        w.extend(odds)
        return tuple(w)

    def word_mono(self, word: Word) -> PBW:
        exps = [0] * self.m
        odds = []
        for i in word:
            if i < self.m:
                exps[i] += 1
            else:
                odds.append(i)
        return (tuple(exps), tuple(odds))

    def mono_parity(self, mono: PBW) -> int:
        return len(mono[1]) % 2

    def mono_degree(self, mono: PBW) -> int:
        return sum(mono[0]) + len(mono[1])

    def is_normal(self, word: Word) -> bool:
        for a, b in zip(word, word[1:]):
            if a > b or (a == b and a >= self.m):
                return False
        return True

    # -- construction --------------------------------------------------
    def one(self) -> UEAElement:
        return UEAElement(self, {self.unit_mono(): Fraction(1)})

    def zero(self) -> UEAElement:
        return UEAElement(self, {})

    def coerce(self, x) -> UEAElement:
        if isinstance(x, UEAElement):
            return x
        return UEAElement(self, {self.unit_mono(): x})

    def gen(self, i) -> UEAElement:
        if isinstance(i, str):
            i = self.sla.index(i)
        return UEAElement(self, {self.word_mono((i,)): Fraction(1)})

    def vector(self, v: Mapping[int, object]) -> UEAElement:
        d = {}
        for i, c in v.items():
            _acc(d, self.word_mono((i,)), c)
        return UEAElement(self, d)

    def mono(self, mono: PBW) -> UEAElement:
        return UEAElement(self, {mono: Fraction(1)})

    def pbw_normalize(self, word: Iterable, coeff=Fraction(1)) -> UEAElement:
        """Straighten ``coeff * e_{w1} ... e_{wk}`` into PBW normal form."""
        word = tuple(self.sla.index(w) if isinstance(w, str) else w for w in word)
        self._steps = 0
        return UEAElement(self, {m: coeff * c for m, c in self._normalize(word).items()})

    def _normalize(self, word: Word) -> Dict[PBW, Fraction]:
        cached = self._norm_cache.get(word)
        if cached is not None:
            return cached
        self._steps += 1
        if self._steps > FUEL:
            raise StraighteningError("PBW straightening exceeded its step budget; "
                                     "the bracket table is probably inconsistent")
        m = self.m
        out: Dict[PBW, Fraction] = {}
        pos = None
        for i in range(len(word) - 1):
            a, b = word[i], word[i + 1]
            if a > b or (a == b and a >= m):
                pos = i
                break
        if pos is None:
            out = {self.word_mono(word): Fraction(1)}
        else:
            a, b = word[pos], word[pos + 1]
            pre, post = word[:pos], word[pos + 2:]
            if a == b:
                # odd generator: a a = 1/2 [a, a]
                for k, c in self.sla.bracket(a, a).items():
                    for mono, v in self._normalize(pre + (k,) + post).items():
                        _acc(out, mono, c * v / 2)
            else:
                sign = -1 if (a >= m and b >= m) else 1
                for mono, v in self._normalize(pre + (b, a) + post).items():
                    _acc(out, mono, sign * v)
                for k, c in self.sla.bracket(a, b).items():
                    for mono, v in self._normalize(pre + (k,) + post).items():
                        _acc(out, mono, c * v)
        self._norm_cache[word] = out
        return out

    def mono_mul(self, m1: PBW, m2: PBW) -> Dict[PBW, Fraction]:
        key = (m1, m2)
        r = self._mul_cache.get(key)
        if r is None:
            self._steps = 0
            r = self._normalize(self.mono_word(m1) + self.mono_word(m2))
            self._mul_cache[key] = r
        return r

    def mul(self, u: UEAElement, v: UEAElement) -> UEAElement:
        d: dict = {}
        for m1, c1 in u.terms.items():
            for m2, c2 in v.terms.items():
                c12 = c1 * c2
                for mono, w in self.mono_mul(m1, m2).items():
                    _acc(d, mono, c12 * w)
        return UEAElement(self, d)

    # -- Hopf structure ------------------------------------------------------
    def counit(self, u: UEAElement):
        return u.terms.get(self.unit_mono(), Fraction(0))

    def mono_coproduct(self, mono: PBW) -> Dict[Tuple[PBW, PBW], Fraction]:
        """Product of the primitive coproducts of the letters, Koszul signs included."""
        m = self.m
        acc: Dict[Tuple[Word, Word], Fraction] = {((), ()): Fraction(1)}
        for e in self.mono_word(mono):
            odd_e = e >= m
            nxt: Dict[Tuple[Word, Word], Fraction] = {}
            for (L, R), c in acc.items():
                s = -1 if odd_e and sum(1 for r in R if r >= m) % 2 else 1
                _acc(nxt, (L + (e,), R), s * c)
                _acc(nxt, (L, R + (e,)), c)
            acc = nxt
        return {(self.word_mono(L), self.word_mono(R)): c for (L, R), c in acc.items()}

    def coproduct(self, u: UEAElement) -> Dict[Tuple[PBW, PBW], object]:
        d: dict = {}
        for mono, c in u.terms.items():
            for key, v in self.mono_coproduct(mono).items():
                _acc(d, key, c * v)
        return d

    def antipode(self, u: UEAElement) -> UEAElement:
        d: dict = {}
        m = self.m
        for mono, c in u.terms.items():
            w = self.mono_word(mono)
            odd = [x >= m for x in w]
            k = sum(odd)
            # reversing a word costs the Koszul sign of all odd pairs
            sign = (-1) ** (len(w) + k * (k - 1) // 2)
            self._steps = 0
            for mm, v in self._normalize(tuple(reversed(w))).items():
                _acc(d, mm, sign * c * v)
        return UEAElement(self, d)

    # -- exterior algebra and the antisymmetrizer ------------------------------
    def wedges(self) -> List[Wedge]:
        """All wedge monomials ordered by (length, lexicographic)."""
        odd = list(self.sla.odd_indices)
        out: List[Wedge] = []
        for k in range(len(odd) + 1):
            out.extend(itertools.combinations(odd, k))
        return out

    def gamma_mono(self, P: Wedge) -> UEAElement:
        r = self._gamma_cache.get(P)
        if r is None:
            k = len(P)
            d: dict = {}
            for perm in itertools.permutations(range(k)):
                s = perm_sign(perm)
                self._steps = 0
                for mono, v in self._normalize(tuple(P[i] for i in perm)).items():
                    _acc(d, mono, Fraction(s, factorial(k)) * v)
            r = UEAElement(self, d)
            self._gamma_cache[P] = r
        return r

    def gamma(self, P: Mapping[Wedge, object]) -> UEAElement:
        """Antisymmetrizer applied to a wedge element ``{wedge: coeff}``."""
        out = self.zero()
        for w, c in P.items():
            out = out + c * self.gamma_mono(w)
        return out

    def x_gamma(self, exps: Tuple[int, ...], P: Wedge) -> Dict[PBW, Fraction]:
        key = (exps, P)
        r = self._xgamma_cache.get(key)
        if r is None:
            r = self.mul(self.mono((exps, ())), self.gamma_mono(P)).terms
            self._xgamma_cache[key] = r
        return r

    def gamma_hat(self, x: Mapping[Tuple[Tuple[int, ...], Wedge], object]) -> UEAElement:
        d: dict = {}
        for (exps, P), c in x.items():
            for mono, v in self.x_gamma(exps, P).items():
                _acc(d, mono, c * v)
        return UEAElement(self, d)

    def gamma_hat_inverse(self, u: UEAElement) -> Dict[Tuple[Tuple[int, ...], Wedge], object]:
        """Write ``u = sum X_i gamma(P_i)`` with ``X_i`` even PBW monomials.

        Peels off the top odd degree each round; the leading term of
        ``X gamma(P)`` is the PBW monomial ``X P`` and every other term has
        smaller odd degree, so the odd degree strictly drops.
        """
        rest = dict(u.terms)
        result: dict = {}
        while rest:
            top = max(len(mono[1]) for mono in rest)
            layer = [(mono, c) for mono, c in rest.items() if len(mono[1]) == top]
            for (exps, odds), c in layer:
                _acc(result, (exps, odds), c)
                for mono, v in self.x_gamma(exps, odds).items():
                    _acc(rest, mono, -c * v)
        return result

    # -- formatting ----------------------------------------------------------
    def format_mono(self, mono: PBW) -> str:
        exps, odds = mono
        parts = []
        for i, e in enumerate(exps):
            if e:
                parts.append(self.sla.names[i] + (f"^{e}" if e > 1 else ""))
        parts.extend(self.sla.names[i] for i in odds)
        return "*".join(parts) if parts else "1"

    def format(self, u: UEAElement) -> str:
        if not u.terms:
            return "0"
        items = []
        for mono, c in sorted(u.terms.items(), key=lambda t: (self.mono_degree(t[0]), t[0])):
            items.append(f"({c})*{self.format_mono(mono)}")
        return " + ".join(items)


# -- exterior algebra --------------------------------------------------------

def wedge_mul(P: Wedge, Q: Wedge) -> Tuple[int, Wedge]:
    if set(P) & set(Q):
        return 0, ()
    return perm_sign(P + Q), tuple(sorted(P + Q))


def wedge_coproduct(P: Wedge) -> List[Tuple[Wedge, Wedge, int]]:
    """Splits ``(P1, P2, sign)`` with ``P = sign * P1 ^ P2``."""
    out = []
    k = len(P)
    for r in range(k + 1):
        for S in itertools.combinations(range(k), r):
            T = [i for i in range(k) if i not in S]
            sign = perm_sign(list(S) + T)
            out.append((tuple(P[i] for i in S), tuple(P[i] for i in T), sign))
    return out


def wedge_of_vectors(vectors: Sequence[Mapping[int, object]]) -> Dict[Wedge, object]:
    """Expand ``v1 ^ ... ^ vk`` (odd vectors) in the wedge monomial basis."""
    out: Dict[Wedge, object] = {(): Fraction(1)}
    for v in vectors:
        nxt: Dict[Wedge, object] = {}
        for P, c in out.items():
            for i, a in v.items():
                s, R = wedge_mul(P, (i,))
                if s:
                    _acc(nxt, R, s * c * a)
        out = nxt
    return out


def wedge_parity(P: Wedge) -> int:
    return len(P) % 2
