"""Sparse super-Laurent polynomials with exact rational coefficients.

A monomial is a pair ``(evens, odds)``: ``evens`` is a tuple of
``(name, exponent)`` pairs sorted by name (exponents may be negative),
``odds`` is a tuple of distinct odd variable names sorted by name.  Odd
variables anticommute and square to zero, so a monomial is stored in its
canonical order and the sign picked up while sorting goes into the
coefficient.

The same class backs coordinate functions on the reduced group, their
tensor powers (slot-suffixed variable copies), and functions on superdomains.
"""
from __future__ import annotations

import ast
from fractions import Fraction
from typing import Callable, Dict, Iterable, Mapping, Tuple, Union

Evens = Tuple[Tuple[str, int], ...]
Odds = Tuple[str, ...]
Monomial = Tuple[Evens, Odds]
Scalar = Union[int, Fraction]

ONE_MONO: Monomial = ((), ())


class MalformedElement(ValueError):
    """Raised when an operation needs an inverse that does not exist."""


def slot_var(name: str, slot) -> str:
    """Name of the copy of variable ``name`` living in tensor slot ``slot``."""
    if slot is None:
        return name
    return f"{name}@{slot}"


def merge_sign(a: Odds, b: Odds) -> int:
    """Sign of sorting the concatenation ``a + b``; 0 if they share a variable."""
    if not a or not b:
        return 1
    inv = 0
    for x in a:
        for y in b:
            if x == y:
                return 0
            if x > y:
                inv += 1
    return -1 if inv % 2 else 1


def _mul_evens(a: Evens, b: Evens) -> Evens:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for k, e in b:
        e2 = d.get(k, 0) + e
        if e2:
            d[k] = e2
        else:
            d.pop(k, None)
    return tuple(sorted(d.items()))


def mono_mul(m1: Monomial, m2: Monomial) -> Tuple[int, Monomial]:
    s = merge_sign(m1[1], m2[1])
    if s == 0:
        return 0, ONE_MONO
    return s, (_mul_evens(m1[0], m2[0]), tuple(sorted(m1[1] + m2[1])))


class SPoly:
    """Immutable sparse element of a free supercommutative Laurent algebra."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = Fraction(c)
        self.terms: Dict[Monomial, Fraction] = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "SPoly":
        return cls({ONE_MONO: c})

    @classmethod
    def var(cls, name: str, odd: bool = False, power: int = 1) -> "SPoly":
        if odd:
            if power != 1:
                raise ValueError("odd variables only enter to the first power")
            return cls({((), (name,)): 1})
        return cls({(((name, power),), ()): 1})

    @classmethod
    def coerce(cls, x) -> "SPoly":
        if isinstance(x, SPoly):
            return x
        return cls.const(x)

    # -- basic protocol -----------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, SPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.terms == {ONE_MONO: Fraction(other)}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"SPoly({self})"

    def __str__(self):
        return format_poly(self)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        other = SPoly.coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        d = dict(self.terms)
        for m, c in other.terms.items():
            v = d.get(m, 0) + c
            if v:
                d[m] = v
            else:
                d.pop(m, None)
        return SPoly(d)

    __radd__ = __add__

    def __neg__(self):
        return SPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-SPoly.coerce(other))

    def __rsub__(self, other):
        return SPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return SPoly()
            return SPoly({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, SPoly):
            return NotImplemented
        d: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                s, m = mono_mul(m1, m2)
                if s:
                    v = d.get(m, 0) + s * c1 * c2
                    if v:
                        d[m] = v
                    else:
                        d.pop(m, None)
        return SPoly(d)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return self * SPoly.coerce(other).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = SPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "SPoly":
        """Inverse of (Laurent monomial) * (1 + nilpotent)."""
        body = {m: c for m, c in self.terms.items() if not m[1]}
        soul = SPoly({m: c for m, c in self.terms.items() if m[1]})
        if len(body) != 1:
            raise MalformedElement(f"cannot invert {self}")
        (bm, bc), = body.items()
        lead_inv = SPoly({(tuple((k, -e) for k, e in bm[0]), ()): 1 / bc})
        if not soul:
            return lead_inv
        n = lead_inv * soul
        result = SPoly.const(1)
        power = SPoly.const(1)
        while True:
            power = power * (-n)
            if not power:
                break
            result = result + power
        return lead_inv * result

    # -- structure -----------------------------------------------------
    def variables(self) -> set:
        out = set()
        for (ev, od) in self.terms:
            out.update(k for k, _ in ev)
            out.update(od)
        return out

    def parity_parts(self) -> Dict[int, "SPoly"]:
        parts: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            parts.setdefault(len(m[1]) % 2, {})[m] = c
        return {p: SPoly(t) for p, t in parts.items()}

    def parity(self):
        """0 or 1 for homogeneous elements, None for zero, raises if mixed."""
        ps = {len(m[1]) % 2 for m in self.terms}
        if not ps:
            return None
        if len(ps) > 1:
            raise ValueError(f"{self} is not homogeneous")
        return ps.pop()

    def constant_term(self) -> Fraction:
        return self.terms.get(ONE_MONO, Fraction(0))

    def is_constant(self) -> bool:
        return all(m == ONE_MONO for m in self.terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    # -- transformations -------------------------------------------------
    def rename(self, mapping: Mapping[str, str]) -> "SPoly":
        """Simultaneous renaming of variables (parity is kept)."""
        if not mapping:
            return self
        d: Dict[Monomial, Fraction] = {}
        for (ev, od), c in self.terms.items():
            acc_ev: Dict[str, int] = {}
            for k, e in ev:
                k2 = mapping.get(k, k)
                acc_ev[k2] = acc_ev.get(k2, 0) + e
            ev2 = tuple(sorted((k, e) for k, e in acc_ev.items() if e))
            od_r = [mapping.get(k, k) for k in od]
            od2 = tuple(sorted(od_r))
            s = _perm_sign_to_sorted(od_r)
            m = (ev2, od2)
            v = d.get(m, 0) + s * c
            if v:
                d[m] = v
            else:
                d.pop(m, None)
        return SPoly(d)

    def subs(self, mapping: Mapping[str, "SPoly"]) -> "SPoly":
        """Algebra substitution; unmapped variables stay.  Odd variables must
        be sent to odd elements for the result to be meaningful."""
        if not mapping:
            return self
        inv_cache: Dict[str, SPoly] = {}
        pow_cache: Dict[Tuple[str, int], SPoly] = {}

        def power(k, e):
            key = (k, e)
            if key in pow_cache:
                return pow_cache[key]
            img = mapping[k]
            if e < 0:
                if k not in inv_cache:
                    inv_cache[k] = img.inverse()
                r = inv_cache[k] ** (-e)
            else:
                r = img ** e
            pow_cache[key] = r
            return r

        acc: Dict[Monomial, Fraction] = {}
        for (ev, od), c in self.terms.items():
            kept_ev = tuple((k, e) for k, e in ev if k not in mapping)
            term = SPoly({(kept_ev, ()): c})
            for k, e in ev:
                if k in mapping:
                    term = term * power(k, e)
            for k in od:
                term = term * (mapping[k] if k in mapping else SPoly.var(k, odd=True))
            for m, v in term.terms.items():
                w = acc.get(m, 0) + v
                if w:
                    acc[m] = w
                else:
                    acc.pop(m, None)
        return SPoly(acc)

    def diff(self, name: str, odd: bool = False) -> "SPoly":
        """Left partial derivative with respect to ``name``."""
        d: Dict[Monomial, Fraction] = {}
        for (ev, od), c in self.terms.items():
            if odd:
                if name not in od:
                    continue
                i = od.index(name)
                m = (ev, od[:i] + od[i + 1:])
                v = -c if i % 2 else c
            else:
                e = dict(ev).get(name, 0)
                if not e:
                    continue
                m = (_mul_evens(ev, ((name, -1),)), od)
                v = c * e
            w = d.get(m, 0) + v
            if w:
                d[m] = w
            else:
                d.pop(m, None)
        return SPoly(d)

    def map_coeffs(self, fn: Callable[[Fraction], Fraction]) -> "SPoly":
        return SPoly({m: fn(c) for m, c in self.terms.items()})

    # -- serialization ------------------------------------------------------
    def to_data(self) -> list:
        out = []
        for (ev, od), c in sorted(self.terms.items(), key=lambda t: _mono_key(t[0])):
            out.append({"even": [[k, e] for k, e in ev], "odd": list(od), "coeff": str(c)})
        return out

    @classmethod
    def from_data(cls, data: Iterable[dict]) -> "SPoly":
        terms = {}
        for t in data:
            m = (tuple((k, int(e)) for k, e in t["even"]), tuple(t["odd"]))
            terms[m] = Fraction(t["coeff"])
        return cls(terms)


def _perm_sign_to_sorted(seq) -> int:
    if len(seq) < 2:
        return 1
    if len(set(seq)) != len(seq):
        return 0
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def _mono_key(m: Monomial):
    ev, od = m
    return (len(od), sum(abs(e) for _, e in ev), od, ev)


ZERO = SPoly()
ONE = SPoly.const(1)


# -- formatting ------------------------------------------------------------

def format_poly(p: SPoly, names: Mapping[str, str] | None = None) -> str:
    if not p.terms:
        return "0"
    names = names or {}
    pieces = []
    for (ev, od), c in sorted(p.terms.items(), key=lambda t: _mono_key(t[0])):
        factors = []
        for k, e in ev:
            k = names.get(k, k)
            factors.append(k if e == 1 else f"{k}^{e}")
        factors.extend(names.get(k, k) for k in od)
        mono = "*".join(factors)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        pieces.append((sign, body))
    s = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        s += f" {sign} {body}"
    return s


# -- parsing -----------------------------------------------------------------

class ParseError(ValueError):
    pass


def parse_poly(text, odd_names: Iterable[str] = (), rename: Mapping[str, str] | None = None) -> SPoly:
    """Parse an arithmetic expression into an SPoly.

    Integers and ``p/q`` literals are exact; ``^`` and ``**`` both mean power.
    ``rename`` maps names in the text to internal variable names.
    """
    if isinstance(text, (int, Fraction)):
        return SPoly.const(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a formula string, got {text!r}")
    odd = set(odd_names)
    rename = rename or {}
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return SPoly.const(node.value)
        if isinstance(node, ast.Name):
            name = node.id
            return SPoly.var(rename.get(name, name), odd=name in odd)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                sign = 1
                if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                    sign, exp = -1, exp.operand
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                    raise ParseError(f"non-integer exponent in {text!r}")
                return ev(node.left) ** (sign * exp.value)
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if b.is_constant():
                    c = b.constant_term()
                    if not c:
                        raise ParseError(f"division by zero in {text!r}")
                    return a * (1 / c)
                return a * b.inverse()
        raise ParseError(f"unsupported syntax in {text!r}")

    try:
        return ev(tree)
    except MalformedElement as exc:
        raise ParseError(str(exc)) from None
