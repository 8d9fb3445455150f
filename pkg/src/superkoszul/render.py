"""Plain-text tables in the worked example's layout: rows and columns
labelled by wedge monomials ordered by (length, index)."""
from __future__ import annotations

from typing import Dict, List, Mapping, Sequence

from .actions import PREFIX
from .poly import SPoly, format_poly


def wedge_text(P, names: Sequence[str]) -> str:
    return "∧".join(names[i] for i in P) if P else "1"


def grid(corner: str, col_labels: Sequence[str], rows: Sequence[tuple]) -> str:
    """``rows`` holds ``(label, [cell, ...])`` pairs."""
    cols = [[corner] + [r[0] for r in rows]]
    for j, c in enumerate(col_labels):
        cols.append([c] + [r[1][j] for r in rows])
    widths = [max(len(x) for x in col) for col in cols]
    lines = []
    for i in range(len(rows) + 1):
        lines.append("| " + " | ".join(cols[k][i].ljust(widths[k]) for k in range(len(cols))) + " |")
        if i == 0:
            lines.append("|" + "|".join("-" * (w + 2) for w in widths) + "|")
    return "\n".join(lines)


def _monomial_factor(coeffs: List[SPoly]):
    """Common single-monomial factor of a list of single-term coefficients."""
    monos = set()
    for c in coeffs:
        if len(c.terms) != 1:
            return None
        (m, _), = c.terms.items()
        monos.add(m)
    if len(monos) != 1:
        return None
    return monos.pop()


def format_uea_cell(pair, cell: Mapping, names: Mapping[str, str]) -> str:
    """An element of U(g0) (x) Lambda(g1) with function coefficients; a
    common monomial prefactor is pulled out front."""
    items = [((exps, P), SPoly.coerce(c)) for (exps, P), c in cell.items() if c]
    if not items:
        return "0"
    items.sort(key=lambda t: (-len(t[0][1]), sum(t[0][0]), [-e for e in t[0][0]], t[0][1]))
    sla = pair.sla

    def basis(exps, P):
        parts = [sla.names[i] + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e]
        if P:
            parts.append(wedge_text(P, sla.names))
        return "*".join(parts) if parts else "1"

    pref = _monomial_factor([c for _, c in items])
    if pref is not None:
        unit = SPoly({pref: 1})
        scalars = [(b, c.terms[pref]) for b, c in items]
        body = []
        for (exps, P), a in scalars:
            b = basis(exps, P)
            mag = abs(a)
            t = b if mag == 1 else (f"{mag}" if b == "1" else f"{mag}*{b}")
            body.append(("-" if a < 0 else "+", t))
        inner = ("-" if body[0][0] == "-" else "") + body[0][1]
        for s, t in body[1:]:
            inner += f" {s} {t}"
        if pref == ((), ()):
            return inner
        head = format_poly(unit, names)
        if len(body) > 1:
            return f"{head}*({inner})"
        return f"-{head}*{inner[1:]}" if inner.startswith("-") else f"{head}*{inner}"
    out = []
    for (exps, P), c in items:
        out.append(f"({format_poly(c, names)})*{basis(exps, P)}")
    return " + ".join(out)


def render_gamma_table(pair, names: Mapping[str, str]) -> str:
    wedges = pair.uea.wedges()
    labels = [wedge_text(P, pair.sla.names) for P in wedges]
    rows = []
    for P in wedges:
        rows.append((labels[wedges.index(P)],
                     [format_uea_cell(pair, pair.twisted_product(P, Q), names) for Q in wedges]))
    return grid("X \\ Y", labels, rows)


def render_two_leg(T, names: Mapping[str, str], corner: str = "X \\ Y") -> str:
    pair = T.pair
    wedges = pair.uea.wedges()
    labels = [wedge_text(P, pair.sla.names) for P in wedges]
    rows = [(labels[i], [format_poly(T[(P, Q)], names) for Q in wedges]) for i, P in enumerate(wedges)]
    return grid(corner, labels, rows)


def render_section(sec, names: Mapping[str, str], corner: str = "P") -> str:
    pair = sec.pair
    wedges = pair.uea.wedges()
    labels = [wedge_text(P, pair.sla.names) for P in wedges]
    return grid(corner, labels, [("value", [format_poly(sec[P], names) for P in wedges])])


def action_names(desc, name: str) -> Dict[str, str]:
    """Display names for an action table: group variables as written in the
    action block, domain variables by their own names."""
    action = desc.actions[name]
    names = {PREFIX + g: g for g in action.domain.gens}
    names.update(desc.group_alias.get(name, {}))
    return names


def render_vectors(pair, basis: Sequence[Mapping[int, object]]) -> str:
    if not basis:
        return "0"
    out = []
    for v in basis:
        terms = []
        for i, c in sorted(v.items()):
            terms.append(pair.sla.names[i] if c == 1 else f"{c}*{pair.sla.names[i]}")
        out.append(" + ".join(terms))
    return ", ".join(out)
