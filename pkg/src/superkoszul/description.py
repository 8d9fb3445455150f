"""Description files: a YAML document holding an SHCP and optional action,
sub-pair and model blocks.

Rational literals are integers or strings ``"p/q"``; floats are rejected.
Formulas are strings parsed by :func:`parse_poly`, where ``name@k`` refers
to the copy of a reduced generator in tensor slot ``k``.  Every error
carries the line of the offending node.
"""
from __future__ import annotations

import json
import re
from importlib import resources
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

import yaml

from .actions import ActionData, SuperDerivation, SuperDomain, mvar
from .algebra import SuperLieAlgebra
from .grassmann import GroupModel
from .homogeneous import SubPairSpec
from .hopf import CoordHopf, TangentFunctional
from .koszul import MultiSection, Section, delta_sections, function_section, section_mul, unit_section
from .poly import ParseError, SPoly, parse_poly, slot_var
from .shcp import SHCP


class DescriptionError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, source: str = ""):
        self.line = line
        self.source = source
        where = f"{source}:" if source else ""
        where += f"{line}: " if line is not None else (" " if source else "")
        super().__init__(f"{where}{message}")


# -- located YAML ----------------------------------------------------------------

class LMap(dict):
    """Mapping that remembers the line of each key and of itself."""

    line: int = 0
    key_lines: Dict[str, int]

    def line_of(self, key) -> int:
        return self.key_lines.get(key, self.line)


class LList(list):
    line: int = 0
    item_lines: List[int]


def _line(node) -> int:
    return node.start_mark.line + 1


def _to_python(node):
    if isinstance(node, yaml.MappingNode):
        out = LMap()
        out.line = _line(node)
        out.key_lines = {}
        for knode, vnode in node.value:
            key = _to_python(knode)
            if not isinstance(key, (str, int)):
                raise DescriptionError("mapping keys must be scalars", _line(knode))
            key = str(key)
            if key in out:
                raise DescriptionError(f"duplicate key {key!r}", _line(knode))
            out[key] = _to_python(vnode)
            out.key_lines[key] = _line(knode)
        return out
    if isinstance(node, yaml.SequenceNode):
        out = LList(_to_python(v) for v in node.value)
        out.line = _line(node)
        out.item_lines = [_line(v) for v in node.value]
        return out
    tag = node.tag
    if tag.endswith(":float"):
        raise DescriptionError(f"inexact literal {node.value!r}; write rationals as \"p/q\"", _line(node))
    if tag.endswith(":int"):
        return int(yaml.SafeLoader.construct_yaml_int(yaml.SafeLoader(""), node))
    if tag.endswith(":bool"):
        return node.value.lower() in ("true", "yes", "on")
    if tag.endswith(":null"):
        return None
    return node.value


def load_located(text: str, source: str = ""):
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise DescriptionError(f"malformed YAML: {getattr(exc, 'problem', exc)}",
                               mark.line + 1 if mark else None, source) from None
    if node is None:
        raise DescriptionError("empty document", 1, source)
    try:
        return _to_python(node)
    except DescriptionError as exc:
        raise DescriptionError(str(exc).split(": ", 1)[-1], exc.line, source) from None


# -- field helpers -------------------------------------------------------------------

_SLOT = re.compile(r"\b([A-Za-z_][A-Za-z_0-9]*)@(\d+)")


class _Ctx:
    def __init__(self, source: str):
        self.source = source

    def fail(self, message: str, line=None):
        raise DescriptionError(message, line, self.source)

    def need(self, m: LMap, key: str, kind=None, what: str = ""):
        if not isinstance(m, dict):
            self.fail(f"{what or 'block'} must be a mapping", getattr(m, "line", None))
        if key not in m:
            self.fail(f"missing key {key!r}{' in ' + what if what else ''}", getattr(m, "line", None))
        v = m[key]
        if kind is not None and not isinstance(v, kind):
            self.fail(f"{key!r} has the wrong type", m.line_of(key))
        return v

    def names(self, v, line, what) -> List[str]:
        if v is None:
            return []
        if not isinstance(v, list) or not all(isinstance(x, str) for x in v):
            self.fail(f"{what} must be a list of names", line)
        if len(set(v)) != len(v):
            self.fail(f"{what} contains repeated names", line)
        return list(v)

    def rational(self, v, line) -> Fraction:
        if isinstance(v, bool):
            self.fail(f"expected a rational, got {v!r}", line)
        if isinstance(v, int):
            return Fraction(v)
        if isinstance(v, str) and re.fullmatch(r"\s*[-+]?\d+(\s*/\s*\d+)?\s*", v):
            try:
                return Fraction(v.replace(" ", ""))
            except ZeroDivisionError:
                self.fail(f"zero denominator in {v!r}", line)
        self.fail(f"expected an integer or \"p/q\", got {v!r}", line)

    def formula(self, v, line, known: Mapping[str, str], odd=()) -> SPoly:
        """Parse ``v``.  ``known`` maps the names a formula may use to internal
        variable names; ``name@k`` is the slot-``k`` copy of ``known[name]``."""
        if isinstance(v, bool) or v is None or not isinstance(v, (int, str)):
            self.fail(f"expected a formula, got {v!r}", line)
        if isinstance(v, int):
            return SPoly.const(v)
        text = _SLOT.sub(lambda m: f"{m.group(1)}__slot{m.group(2)}", v)
        rename, odd_text = {}, set()
        for name in set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text)):
            base, _, slot = name.partition("__slot")
            if base not in known:
                self.fail(f"unknown identifier {base!r} in {v!r}", line)
            rename[name] = slot_var(known[base], int(slot) if slot else None)
            if base in odd:
                odd_text.add(name)
        try:
            return parse_poly(text, odd_names=odd_text, rename=rename)
        except ParseError as exc:
            self.fail(str(exc), line)


# -- the document -----------------------------------------------------------------------

@dataclass
class Description:
    pair: SHCP
    display: Dict[int, Dict[str, str]]
    actions: Dict[str, ActionData] = field(default_factory=dict)
    action_points: Dict[str, Dict[str, Fraction]] = field(default_factory=dict)
    reduced_transitive: Dict[str, bool] = field(default_factory=dict)
    group_alias: Dict[str, Dict[str, str]] = field(default_factory=dict)
    subpairs: Dict[str, SubPairSpec] = field(default_factory=dict)
    ansatz_degree: Dict[str, int] = field(default_factory=dict)
    model: Optional[GroupModel] = None
    model_names: Dict[str, str] = field(default_factory=dict)
    source: str = ""

    def slot_names(self, slot=None) -> Dict[str, str]:
        """Display names for reduced variables in ``slot``."""
        G = self.pair.group
        if slot in self.display:
            return {slot_var(g, slot): self.display[slot].get(g, g) for g in G.gens}
        return {slot_var(g, slot): (g if slot is None else f"{g}_{slot}") for g in G.gens}


def parse_description(text: str, source: str = "") -> Description:
    ctx = _Ctx(source)
    doc = load_located(text, source)
    if not isinstance(doc, dict):
        ctx.fail("top level must be a mapping", 1)
    allowed = {"name", "algebra", "reduced-group", "sigma", "action", "subpair", "model"}
    for k in doc:
        if k not in allowed:
            ctx.fail(f"unknown block {k!r}", doc.line_of(k))
    sla = _parse_algebra(ctx, ctx.need(doc, "algebra", dict))
    group, tangent, display = _parse_group(ctx, ctx.need(doc, "reduced-group", dict), sla)
    sigma = _parse_sigma(ctx, doc.get("sigma"), doc.line_of("sigma"), sla, group)
    pair = SHCP(sla, group, sigma, tangent, str(doc.get("name", "")))
    desc = Description(pair, display, source=source)
    acts = doc.get("action") or {}
    if not isinstance(acts, dict):
        ctx.fail("'action' must map names to action blocks", doc.line_of("action"))
    for name, blk in acts.items():
        _parse_action(ctx, desc, name, blk, acts.line_of(name))
    subs = doc.get("subpair") or {}
    if not isinstance(subs, dict):
        ctx.fail("'subpair' must map names to sub-pair blocks", doc.line_of("subpair"))
    for name, blk in subs.items():
        _parse_subpair(ctx, desc, name, blk, subs.line_of(name))
    if doc.get("model") is not None:
        _parse_model(ctx, desc, doc["model"], doc.line_of("model"))
    return desc


def bundled(name: str) -> Path:
    """Path of a fixture shipped with the package, e.g. ``gl11.shcp``."""
    return Path(str(resources.files("superkoszul") / "data" / name))


def load_description(path) -> Description:
    """Read a description file; a bare name that is not an existing path is
    looked up among the bundled fixtures."""
    p = Path(path)
    if not p.exists() and bundled(str(path)).exists():
        p = bundled(str(path))
    try:
        text = p.read_text()
    except OSError as exc:
        raise DescriptionError(f"cannot read {p}: {exc.strerror}") from None
    return parse_description(text, str(p))


def _vector(ctx, v, line, idx, what) -> Dict[int, Fraction]:
    """A basis name or a mapping name -> coefficient."""
    if isinstance(v, str):
        if v not in idx:
            ctx.fail(f"unknown basis element {v!r} in {what}", line)
        return {idx[v]: Fraction(1)}
    if not isinstance(v, dict):
        ctx.fail(f"{what} entries must be names or name: coefficient maps", line)
    out = {}
    for k, c in v.items():
        if k not in idx:
            ctx.fail(f"unknown basis element {k!r} in {what}", v.line_of(k))
        c = ctx.rational(c, v.line_of(k))
        if c:
            out[idx[k]] = c
    return out


def _parse_algebra(ctx, blk) -> SuperLieAlgebra:
    even = ctx.names(blk.get("even"), blk.line_of("even"), "even basis")
    odd = ctx.names(blk.get("odd"), blk.line_of("odd"), "odd basis")
    if set(even) & set(odd):
        ctx.fail("a basis name is both even and odd", blk.line)
    names = even + odd
    idx = {n: i for i, n in enumerate(names)}
    raw = {}
    br = blk.get("brackets") or {}
    if not isinstance(br, dict):
        ctx.fail("'brackets' must map \"A,B\" to vectors", blk.line_of("brackets"))
    for key, vec in br.items():
        line = br.line_of(key)
        parts = [s.strip() for s in key.split(",")]
        if len(parts) != 2:
            ctx.fail(f"bracket key {key!r} must have the form \"A,B\"", line)
        for p in parts:
            if p not in idx:
                ctx.fail(f"unknown basis element {p!r} in bracket key", line)
        i, j = idx[parts[0]], idx[parts[1]]
        if (i, j) in raw or (j, i) in raw:
            ctx.fail(f"bracket [{parts[0]},{parts[1]}] given twice", line)
        raw[(i, j)] = _vector(ctx, vec if vec is not None else {}, line, idx, "bracket value")
    for k in blk:
        if k not in ("even", "odd", "brackets"):
            ctx.fail(f"unknown key {k!r} in algebra", blk.line_of(k))
    return SuperLieAlgebra(even, odd, raw)


def _parse_hopf(ctx, blk, line, what) -> CoordHopf:
    """Either ``torus: [...]``, ``additive: [...]`` or explicit ``generators``."""
    if not isinstance(blk, dict):
        ctx.fail(f"{what} must be a mapping", line)
    if "torus" in blk:
        return CoordHopf.torus(ctx.names(blk["torus"], blk.line_of("torus"), "torus generators"))
    if "additive" in blk:
        return CoordHopf.additive(ctx.names(blk["additive"], blk.line_of("additive"), "additive generators"))
    gens_blk = blk.get("generators")
    if gens_blk is None:
        return CoordHopf([], [], {}, {}, {})
    if not isinstance(gens_blk, list):
        ctx.fail("'generators' must be a list", blk.line_of("generators"))
    names = []
    for g, gl in zip(gens_blk, gens_blk.item_lines):
        names.append(ctx.need(g, "name", str, "generator"))
    if len(set(names)) != len(names):
        ctx.fail("repeated reduced generator", blk.line_of("generators"))
    known = {n: n for n in names}
    inv, co, cu, an = [], {}, {}, {}
    for g, n in zip(gens_blk, names):
        inv.append(bool(g.get("invertible", False)))
        co[n] = ctx.formula(ctx.need(g, "coproduct", what="generator " + n), g.line_of("coproduct"), known)
        cu[n] = ctx.rational(ctx.need(g, "counit", what="generator " + n), g.line_of("counit"))
        an[n] = ctx.formula(ctx.need(g, "antipode", what="generator " + n), g.line_of("antipode"), known)
        for key, slots in (("coproduct", {1, 2}), ("antipode", {None})):
            poly = co[n] if key == "coproduct" else an[n]
            for v in poly.variables():
                base, _, s = v.partition("@")
                if (int(s) if s else None) not in slots:
                    ctx.fail(f"{key} of {n} uses {v!r}; expected slots {sorted(map(str, slots))}", g.line_of(key))
    H = CoordHopf(names, inv, co, cu, an)
    for n in names:
        try:
            H.check_element(an[n])
        except ValueError as exc:
            ctx.fail(str(exc), gens_blk[names.index(n)].line_of("antipode"))
    return H


def _parse_group(ctx, blk, sla):
    G = _parse_hopf(ctx, blk, blk.line, "reduced-group")
    tang_blk = blk.get("tangent") or {}
    if not isinstance(tang_blk, dict):
        ctx.fail("'tangent' must map even basis names to generator values", blk.line_of("tangent"))
    for k in tang_blk:
        if k not in sla.even_names:
            ctx.fail(f"tangent given for {k!r}, which is not an even basis element", tang_blk.line_of(k))
    tangent = []
    for z in sla.even_names:
        vals = tang_blk.get(z)
        if vals is None:
            ctx.fail(f"missing tangent functional for {z}", tang_blk.line if tang_blk else blk.line)
        out = {}
        for g, c in vals.items():
            if g not in G.gens:
                ctx.fail(f"unknown reduced generator {g!r}", vals.line_of(g))
            out[g] = ctx.rational(c, vals.line_of(g))
        tangent.append(TangentFunctional(out))
    display = {}
    disp = blk.get("display") or {}
    for k, names in disp.items():
        m = re.fullmatch(r"slot(\d+)", k)
        if not m or not isinstance(names, dict):
            ctx.fail("display entries look like 'slot1: {gen: name}'", disp.line_of(k))
        for g in names:
            if g not in G.gens:
                ctx.fail(f"unknown reduced generator {g!r}", names.line_of(g))
        display[int(m.group(1))] = dict(names)
    for k in blk:
        if k not in ("torus", "additive", "generators", "tangent", "display"):
            ctx.fail(f"unknown key {k!r} in reduced-group", blk.line_of(k))
    return G, tangent, display


def _parse_sigma(ctx, blk, line, sla, G) -> List[List[SPoly]]:
    """Columns ``e_j: {e_k: formula}`` giving sigma(h) e_j; omitted columns
    are the identity."""
    n = sla.n
    idx = {nm: i for i, nm in enumerate(sla.names)}
    S = [[SPoly.const(int(i == j)) for j in range(n)] for i in range(n)]
    if blk is None:
        return S
    if not isinstance(blk, dict):
        ctx.fail("'sigma' must map basis names to columns", line)
    known = {g: g for g in G.gens}
    for col, entries in blk.items():
        if col not in idx:
            ctx.fail(f"unknown basis element {col!r} in sigma", blk.line_of(col))
        j = idx[col]
        for k in range(n):
            S[k][j] = SPoly()
        if not isinstance(entries, dict):
            ctx.fail(f"sigma column {col} must be a mapping", blk.line_of(col))
        for row, f in entries.items():
            if row not in idx:
                ctx.fail(f"unknown basis element {row!r} in sigma", entries.line_of(row))
            poly = ctx.formula(f, entries.line_of(row), known)
            try:
                G.check_element(poly)
            except ValueError as exc:
                ctx.fail(str(exc), entries.line_of(row))
            S[idx[row]][j] = poly
    return S


def _point(ctx, blk, line, names) -> Dict[str, Fraction]:
    if not isinstance(blk, dict):
        ctx.fail("a point maps generator names to rationals", line)
    out = {}
    for k, v in blk.items():
        if k not in names:
            ctx.fail(f"unknown generator {k!r} in point", blk.line_of(k))
        out[k] = ctx.rational(v, blk.line_of(k))
    return out


def _parse_action(ctx, desc: Description, name, blk, line):
    pair = desc.pair
    sla, G = pair.sla, pair.group
    if not isinstance(blk, dict):
        ctx.fail(f"action {name!r} must be a mapping", line)
    even = ctx.names(blk.get("even"), blk.line_of("even"), "even generators")
    odd = ctx.names(blk.get("odd"), blk.line_of("odd"), "odd generators")
    inv = ctx.names(blk.get("invertible"), blk.line_of("invertible"), "invertible generators")
    for g in inv:
        if g not in even:
            ctx.fail(f"invertible generator {g!r} is not an even generator", blk.line_of("invertible"))
    dom = SuperDomain(even, odd, [g in inv for g in even])
    alias = blk.get("group-alias") or {}
    group_names = {}
    for a, g in alias.items():
        if g not in G.gens:
            ctx.fail(f"group-alias refers to unknown reduced generator {g!r}", alias.line_of(a))
        group_names[a] = g
    for g in G.gens:
        if g not in group_names.values():
            group_names.setdefault(g, g)
    clash = set(group_names) & set(dom.gens)
    if clash:
        ctx.fail(f"names {sorted(clash)} denote both group and domain coordinates; add a group-alias",
                 blk.line)
    mnames = {g: mvar(g) for g in dom.gens}
    co_blk = ctx.need(blk, "coaction", dict, f"action {name}")
    coaction = {}
    for g in dom.gens:
        if g not in co_blk:
            ctx.fail(f"coaction of {g} is missing", co_blk.line)
        coaction[g] = ctx.formula(co_blk[g], co_blk.line_of(g), {**group_names, **mnames},
                                  odd=[n for n in odd])
    for g in co_blk:
        if g not in dom.gens:
            ctx.fail(f"coaction given for unknown generator {g!r}", co_blk.line_of(g))
    rho_blk = ctx.need(blk, "rho", dict, f"action {name}")
    rho = []
    for k in rho_blk:
        if k not in sla.names:
            ctx.fail(f"rho given for unknown basis element {k!r}", rho_blk.line_of(k))
    for i, bn in enumerate(sla.names):
        imgs = rho_blk.get(bn) or {}
        out = {}
        for g, f in imgs.items():
            if g not in dom.gens:
                ctx.fail(f"rho({bn}) acts on unknown generator {g!r}", imgs.line_of(g))
            out[mvar(g)] = ctx.formula(f, imgs.line_of(g), mnames, odd=odd)
        rho.append(SuperDerivation(sla.parity(i), out))
    desc.actions[name] = ActionData(pair, dom, coaction, rho, name)
    desc.group_alias[name] = {g: a for a, g in group_names.items()}
    if "point" in blk:
        desc.action_points[name] = _point(ctx, blk["point"], blk.line_of("point"), dom.even)
    desc.reduced_transitive[name] = bool(blk.get("reduced-transitive", False))
    for k in blk:
        if k not in ("even", "odd", "invertible", "group-alias", "coaction", "rho", "point",
                     "reduced-transitive"):
            ctx.fail(f"unknown key {k!r} in action {name}", blk.line_of(k))


def _parse_subpair(ctx, desc: Description, name, blk, line):
    pair = desc.pair
    idx = {n: i for i, n in enumerate(pair.sla.names)}
    if not isinstance(blk, dict):
        ctx.fail(f"sub-pair {name!r} must be a mapping", line)
    basis_blk = ctx.need(blk, "basis", list, f"sub-pair {name}")
    basis = [_vector(ctx, v, l, idx, "basis") for v, l in zip(basis_blk, basis_blk.item_lines)]
    comp = None
    if "complement" in blk:
        cb = blk["complement"]
        comp = [_vector(ctx, v, l, idx, "complement") for v, l in zip(cb, cb.item_lines)]
    H = _parse_hopf(ctx, ctx.need(blk, "group", dict, f"sub-pair {name}"), blk.line_of("group"), "group")
    q_blk = ctx.need(blk, "quotient", dict, f"sub-pair {name}")
    quotient = {}
    for g in pair.group.gens:
        if g not in q_blk:
            ctx.fail(f"quotient image of {g} is missing", q_blk.line)
        quotient[g] = ctx.formula(q_blk[g], q_blk.line_of(g), {h: h for h in H.gens})
    desc.subpairs[name] = SubPairSpec(pair, basis, H, quotient, comp, bool(blk.get("connected", True)), name)
    if "ansatz-degree" in blk:
        d = blk["ansatz-degree"]
        if not isinstance(d, int) or d < 0:
            ctx.fail("ansatz-degree must be a non-negative integer", blk.line_of("ansatz-degree"))
        desc.ansatz_degree[name] = d
    for k in blk:
        if k not in ("basis", "complement", "group", "quotient", "connected", "ansatz-degree"):
            ctx.fail(f"unknown key {k!r} in sub-pair {name}", blk.line_of(k))


def section_from_coordinates(pair: SHCP, f: SPoly) -> Section:
    """Evaluate a polynomial in the delta-section coordinates (reduced
    generators and odd basis names) as a section."""
    deltas = delta_sections(pair)
    total = Section(pair)
    for (ev, od), c in f.terms.items():
        mono = SPoly({(ev, ()): 1})
        acc = function_section(pair, mono)
        for v in od:
            acc = section_mul(acc, deltas[v])
        total = total + acc.scale(c)
    return total


def _parse_model(ctx, desc: Description, blk, line):
    pair = desc.pair
    if not isinstance(blk, dict):
        ctx.fail("'model' must be a mapping", line)
    coords = ctx.names(ctx.need(blk, "coords", what="model"), blk.line_of("coords"), "model coordinates")
    odd = ctx.names(blk.get("odd"), blk.line_of("odd"), "odd model coordinates")
    for c in odd:
        if c not in coords:
            ctx.fail(f"odd coordinate {c!r} is not listed in coords", blk.line_of("odd"))
    dict_blk = ctx.need(blk, "dictionary", dict, "model")
    law_blk = ctx.need(blk, "law", dict, "model")
    coord_vars = {g: g for g in pair.group.gens}
    coord_vars.update({pair.sla.names[v]: pair.sla.names[v] for v in pair.sla.odd_indices})
    odd_coord = [pair.sla.names[v] for v in pair.sla.odd_indices]
    dictionary, law = {}, {}
    for c in coords:
        if c not in dict_blk:
            ctx.fail(f"dictionary entry for {c} is missing", dict_blk.line)
        if c not in law_blk:
            ctx.fail(f"law entry for {c} is missing", law_blk.line)
        f = ctx.formula(dict_blk[c], dict_blk.line_of(c), coord_vars, odd=odd_coord)
        dictionary[c] = section_from_coordinates(pair, f)
        law[c] = ctx.formula(law_blk[c], law_blk.line_of(c), {x: x for x in coords}, odd=odd)
        for v in law[c].variables():
            if "@" not in v or v.split("@")[1] not in ("1", "2"):
                ctx.fail(f"law of {c} must use slot copies name@1 / name@2, found {v!r}",
                         law_blk.line_of(c))
    desc.model = GroupModel(coords, odd, dictionary, law)
    desc.model_names = dict(blk.get("names") or {})


# -- machine-readable dumps ----------------------------------------------------------------

def _wedge_names(pair, P) -> List[str]:
    return [pair.sla.names[i] for i in P]


def _wedge_index(pair, names) -> tuple:
    idx = {n: i for i, n in enumerate(pair.sla.names)}
    return tuple(idx[n] for n in names)


def section_to_data(sec) -> Dict[str, Any]:
    pair = sec.pair
    if isinstance(sec, MultiSection):
        rows = [{"key": [_wedge_names(pair, P) for P in key], "value": v.to_data()}
                for key, v in sorted(sec.table.items(), key=lambda t: [(len(P), P) for P in t[0]]) if v]
        return {"kind": "multi-section", "legs": sec.legs, "table": rows}
    rows = [{"wedge": _wedge_names(pair, P), "value": v.to_data()}
            for P, v in sorted(sec.table.items(), key=lambda t: (len(t[0]), t[0])) if v]
    return {"kind": "section", "table": rows}


def section_from_data(pair: SHCP, data: Mapping[str, Any]):
    if data["kind"] == "multi-section":
        tab = {tuple(_wedge_index(pair, P) for P in r["key"]): SPoly.from_data(r["value"]) for r in data["table"]}
        return MultiSection(pair, data["legs"], tab)
    if data["kind"] == "section":
        return Section(pair, {_wedge_index(pair, r["wedge"]): SPoly.from_data(r["value"]) for r in data["table"]})
    raise DescriptionError(f"unknown dump kind {data['kind']!r}")


def action_table_to_data(table) -> Dict[str, Any]:
    return {"kind": "action-table", "entries": {g: section_to_data(s) for g, s in table.items()}}


def action_table_from_data(pair: SHCP, data) -> Dict[str, Section]:
    return {g: section_from_data(pair, s) for g, s in data["entries"].items()}


def gamma_cell_to_data(pair: SHCP, cell: Mapping) -> List[Dict[str, Any]]:
    rows = []
    for (exps, P), c in sorted(cell.items(), key=lambda t: (sum(t[0][0]) + len(t[0][1]), t[0])):
        c = SPoly.coerce(c)
        if c:
            rows.append({"even": list(exps), "odd": _wedge_names(pair, P), "coeff": c.to_data()})
    return rows


def gamma_cell_from_data(pair: SHCP, rows) -> Dict:
    return {(tuple(r["even"]), _wedge_index(pair, r["odd"])): SPoly.from_data(r["coeff"]) for r in rows}


def vector_to_data(pair: SHCP, v: Mapping[int, Fraction]) -> Dict[str, str]:
    return {pair.sla.names[i]: str(c) for i, c in sorted(v.items())}


def vector_from_data(pair: SHCP, d: Mapping[str, str]) -> Dict[int, Fraction]:
    idx = {n: i for i, n in enumerate(pair.sla.names)}
    return {idx[k]: Fraction(c) for k, c in d.items()}


def dumps(data) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
