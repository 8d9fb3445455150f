"""Command-line front end.

Exit status: 0 on success, 1 when a validation or check fails, 2 for usage
and parse errors.
"""
from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from typing import Dict, List, Optional

from . import __version__
from .actions import (action_in_coordinates, check_action_axioms, coordinate_name, is_subalgebra,
                      is_transitive_at, reconstruct_action, stabilizer_subalgebra, validate_action_data)
from .description import (Description, DescriptionError, action_table_to_data, dumps, gamma_cell_to_data,
                          load_description, section_to_data, vector_to_data)
from .grassmann import pullback_vs_model, random_point
from .homogeneous import SIDES, invariant_section_solve, is_invariant_section, laurent_ansatz, validate_subpair
from .koszul import delta_sections, mu_pullback
from .poly import format_poly
from .render import (action_names, format_uea_cell, render_gamma_table, render_section, render_two_leg,
                     render_vectors, wedge_text)
from .shcp import validate_shcp

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Result:
    def __init__(self, human: str, machine, status: int = OK):
        self.human = human
        self.machine = machine
        self.status = status


def parse_point(text: Optional[str]) -> Dict[str, Fraction]:
    if not text:
        return {}
    out = {}
    for item in text.split(","):
        key, sep, val = item.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"--point expects k=v,...; got {item!r}")
        try:
            out[key.strip()] = Fraction(val.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--point value {val!r} is not an exact rational") from None
    return out


def _pick(desc: Description, kind: str, name: Optional[str]):
    blocks = desc.actions if kind == "action" else desc.subpairs
    if not blocks:
        raise UsageError(f"{desc.source or 'description'} has no {kind} block")
    if name is None:
        if len(blocks) > 1:
            raise UsageError(f"several {kind} blocks ({', '.join(blocks)}); choose one with --{kind}")
        name = next(iter(blocks))
    if name not in blocks:
        raise UsageError(f"unknown {kind} {name!r}; available: {', '.join(blocks)}")
    return name, blocks[name]


# -- commands ------------------------------------------------------------------

def cmd_validate(desc: Description, args) -> Result:
    pair = desc.pair
    report = {"pair": validate_shcp(pair)}
    for name, a in desc.actions.items():
        report[f"action {name}"] = validate_action_data(a)
    for name, s in desc.subpairs.items():
        report[f"subpair {name}"] = validate_subpair(s)
    ok = not any(report.values())
    lines = []
    for part, issues in report.items():
        lines.append(f"{part}: {'ok' if not issues else 'FAILED'}")
        lines.extend(f"  - {i}" for i in issues)
    lines.append("valid" if ok else "invalid")
    sla = pair.sla
    machine = {"kind": "validation", "name": pair.name, "dimension": [sla.m, sla.q],
               "valid": ok, "report": report}
    return Result("\n".join(lines), machine, OK if ok else FAILED)


def cmd_mul_table(desc: Description, args) -> Result:
    pair = desc.pair
    deltas = delta_sections(pair)
    if args.section is None:
        raise UsageError(f"--section is required; choose from {', '.join(deltas)}")
    if args.section not in deltas:
        raise UsageError(f"unknown section {args.section!r}; choose from {', '.join(deltas)}")
    T = mu_pullback(deltas[args.section])
    names = {**desc.slot_names(1), **desc.slot_names(2)}
    human = f"mu^*({args.section})\n" + render_two_leg(T, names)
    machine = {"kind": "mul-table", "section": args.section, "table": section_to_data(T)}
    return Result(human, machine)


def cmd_gamma_table(desc: Description, args) -> Result:
    pair = desc.pair
    wedges = pair.uea.wedges()
    names = desc.slot_names(2)
    cells = []
    for P in wedges:
        for Q in wedges:
            cell = pair.twisted_product(P, Q)
            cells.append({"row": [pair.sla.names[i] for i in P], "col": [pair.sla.names[i] for i in Q],
                          "value": gamma_cell_to_data(pair, cell),
                          "text": format_uea_cell(pair, cell, names)})
    human = "gamma_hat^-1((h^-1.gamma(X)) gamma(Y))\n" + render_gamma_table(pair, names)
    return Result(human, {"kind": "gamma-table", "cells": cells})


def cmd_action(desc: Description, args) -> Result:
    name, a = _pick(desc, "action", args.action)
    issues = validate_action_data(a)
    if issues:
        return Result("\n".join(["action data invalid:"] + [f"  - {i}" for i in issues]),
                      {"kind": "action-table", "valid": False, "report": issues}, FAILED)
    table = reconstruct_action(a)
    axioms = check_action_axioms(a, table)
    names = action_names(desc, name)
    parts = []
    for g, sec in table.items():
        parts.append(f"a^*({g})\n" + render_section(sec, names))
    coords = action_in_coordinates(a, table)
    cnames = dict(names)
    cnames.update({coordinate_name(desc.pair, v): "Phi_" + desc.pair.sla.names[v]
                   for v in desc.pair.sla.odd_indices})
    parts.append("\n".join(["in delta-section coordinates:"]
                           + [f"  a^*({g}) = {format_poly(f, cnames)}" for g, f in coords.items()]))
    parts.append("action axioms: " + ("ok" if not axioms else "; ".join(axioms)))
    machine = action_table_to_data(table)
    machine.update({"action": name, "axioms": axioms,
                    "coordinates": {g: f.to_data() for g, f in coords.items()}})
    return Result("\n\n".join(parts), machine, OK if not axioms else FAILED)


def _action_point(desc, name, args):
    point = parse_point(args.point) or desc.action_points.get(name)
    if not point:
        raise UsageError(f"no point given for action {name}; use --point")
    for k in point:
        if k not in desc.actions[name].domain.even:
            raise UsageError(f"--point names {k!r}, which is not an even generator of {name}")
    return point


def cmd_stabilizer(desc: Description, args) -> Result:
    name, a = _pick(desc, "action", args.action)
    point = _action_point(desc, name, args)
    try:
        basis = stabilizer_subalgebra(a, point)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    pair = desc.pair
    ev = sum(1 for v in basis if pair.sla.vector_parity(v) == 0)
    od = len(basis) - ev
    closed = is_subalgebra(pair, basis)
    pt = ",".join(f"{k}={v}" for k, v in point.items())
    if basis:
        human = f"stabilizer at {pt}: span{{{render_vectors(pair, basis)}}} ({ev}|{od})"
    else:
        human = f"stabilizer at {pt}: trivial (0|0)"
    human += "\nbracket-closed: " + ("yes" if closed else "no")
    machine = {"kind": "stabilizer", "action": name, "point": {k: str(v) for k, v in point.items()},
               "basis": [vector_to_data(pair, v) for v in basis], "dimension": [ev, od],
               "bracket_closed": closed}
    return Result(human, machine, OK if closed else FAILED)


def cmd_transitive(desc: Description, args) -> Result:
    name, a = _pick(desc, "action", args.action)
    point = _action_point(desc, name, args)
    reduced = desc.reduced_transitive.get(name, False) if args.reduced_transitive is None else args.reduced_transitive
    try:
        verdict = is_transitive_at(a, point, reduced)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    machine = {"kind": "transitivity", "action": name, "transitive": verdict.transitive,
               "rank": [verdict.even_rank, verdict.odd_rank], "target": [verdict.even_dim, verdict.odd_dim],
               "reduced_asserted": verdict.reduced_asserted}
    return Result(str(verdict), machine)


def cmd_invariants(desc: Description, args) -> Result:
    name, spec = _pick(desc, "subpair", args.subpair)
    issues = validate_subpair(spec)
    if issues:
        return Result("\n".join(["sub-pair invalid:"] + [f"  - {i}" for i in issues]),
                      {"kind": "invariants", "valid": False, "report": issues}, FAILED)
    degree = args.degree if args.degree is not None else desc.ansatz_degree.get(name, 1)
    ansatz = laurent_ansatz(desc.pair.group.gens, degree)
    sols = invariant_section_solve(spec, ansatz, args.side)
    names = desc.slot_names(None)
    parts = [f"{len(sols)} invariant sections for {args.side} ({name}, degree {degree}):"]
    checks = []
    for k, s in enumerate(sols):
        verdict = is_invariant_section(s, spec, args.side)
        checks.append(bool(verdict))
        parts.append(f"[{k}] " + ("" if verdict else "(check FAILED) ") + ", ".join(
            f"{wedge_text(P, desc.pair.sla.names)}: {format_poly(v, names)}"
            for P, v in sorted(s.table.items(), key=lambda t: (len(t[0]), t[0])) if v))
    machine = {"kind": "invariants", "subpair": name, "side": args.side, "degree": degree,
               "sections": [section_to_data(s) for s in sols], "verified": checks}
    return Result("\n".join(parts), machine, OK if all(checks) else FAILED)


def cmd_oracle(desc: Description, args) -> Result:
    if desc.model is None:
        raise UsageError(f"{desc.source or 'description'} has no model block")
    pair = desc.pair
    aux = args.aux if args.aux is not None else 2 * pair.sla.q
    rng = random.Random(args.seed)
    tables = {k: mu_pullback(s) for k, s in delta_sections(pair).items()}
    failures = []
    for i in range(args.count):
        psi = random_point(pair, rng, aux)
        chi = random_point(pair, rng, aux)
        ok, bad = pullback_vs_model(pair, desc.model, psi, chi, tables)
        if not ok:
            failures.append({"index": i, "coordinates": sorted(bad)})
    hits = args.count - len(failures)
    human = f"{hits}/{args.count} exact matches (seed {args.seed}, {aux} auxiliary odd generators)"
    for f in failures[:5]:
        human += f"\n  point {f['index']}: mismatch in {', '.join(f['coordinates'])}"
    machine = {"kind": "oracle", "seed": args.seed, "count": args.count, "aux": aux,
               "matches": hits, "failures": failures}
    return Result(human, machine, OK if not failures else FAILED)


COMMANDS = {
    "validate": cmd_validate,
    "mul-table": cmd_mul_table,
    "gamma-table": cmd_gamma_table,
    "action": cmd_action,
    "stabilizer": cmd_stabilizer,
    "transitive": cmd_transitive,
    "invariants": cmd_invariants,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--file", required=True, help="description file (YAML)")
    common.add_argument("--format", choices=["human", "machine"], default="human")
    common.add_argument("--out", help="write the result here instead of stdout")

    p = argparse.ArgumentParser(prog="superkoszul",
                                description="Super Lie groups from super Harish-Chandra pairs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check all blocks of a description")
    s = sub.add_parser("mul-table", parents=[common], help="pullback table of a coordinate section")
    s.add_argument("--section", help="reduced generator or odd basis name")
    sub.add_parser("gamma-table", parents=[common], help="twisted product table in U(g0) (x) Lambda(g1)")
    for name in ("action", "stabilizer", "transitive"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--action", help="action block name")
        if name != "action":
            s.add_argument("--point", help="reduced point k=v,... (default: the block's point)")
        if name == "transitive":
            g = s.add_mutually_exclusive_group()
            g.add_argument("--reduced-transitive", dest="reduced_transitive", action="store_true", default=None)
            g.add_argument("--no-reduced-transitive", dest="reduced_transitive", action="store_false")
    s = sub.add_parser("invariants", parents=[common], help="solve for invariant sections")
    s.add_argument("--subpair", help="sub-pair block name")
    s.add_argument("--side", choices=SIDES, default="G/H")
    s.add_argument("--degree", type=int, help="Laurent degree of the ansatz")
    s = sub.add_parser("oracle", parents=[common], help="Grassmann-point sweep against the model law")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=50)
    s.add_argument("--aux", type=int, help="auxiliary odd generators (default 2q)")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        desc = load_description(args.file)
        result = COMMANDS[args.command](desc, args)
    except (DescriptionError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    text = dumps(result.machine) if args.format == "machine" else result.human + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
