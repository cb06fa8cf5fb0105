"""Command-line front end.

Exit codes: 0 when everything checked passes, 1 on a verification failure,
2 on a usage error (bad type, bad cell id, unreadable input, group too large).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import wgraph as wg_mod
from .coxeter import DEFAULT_CAP, CartanDatum, DatumError, GroupSizeError
from .core import context
from .eqbundle import BundleRing, load_json
from .kl import StructuralError
from .perron import CellRing, ConvergenceError, Tolerances, special_module, verify_theorem12
from .specialrep import SpecialRep

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    type_label: str | None = None
    cell: int | None = None
    gamma: int | None = None
    fmt: str = "json"
    cap: int = DEFAULT_CAP
    tol: Tolerances = field(default_factory=Tolerances)
    rounding: float = 1e-6
    dump: dict = field(default_factory=dict)

    def __post_init__(self):
        t = self.tol
        if min(t.residual, t.rel, t.orthogonality, self.rounding) <= 0:
            raise UsageError("tolerances must be positive")
        if self.type_label is not None:
            try:
                datum = CartanDatum.parse(self.type_label)
            except DatumError as exc:
                raise UsageError(str(exc)) from exc
            if self.cap < datum.expected_order:
                raise UsageError(f"--cap {self.cap} is below |W| = {datum.expected_order}")
            self.type_label = datum.label


def _ctx(cfg: RunConfig):
    try:
        return context(cfg.type_label, cfg.cap)
    except (DatumError, GroupSizeError) as exc:
        raise UsageError(str(exc)) from exc


def _cell(ctx, c: int | None) -> int:
    n = len(ctx.cells.two_sided_cells)
    if c is None or not 0 <= c < n:
        raise UsageError(f"--cell must be a two-sided cell id in 0..{n - 1}")
    return c


def _dumps(doc) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


# -- commands ----------------------------------------------------------------------
def cmd_cells(cfg: RunConfig, out) -> int:
    ctx = _ctx(cfg)
    if cfg.dump.get("group"):
        out.write(ctx.group.to_json() + "\n")
    else:
        out.write(ctx.cells.to_json() + "\n")
    return EXIT_OK


def cmd_gamma(cfg: RunConfig, out) -> int:
    ctx = _ctx(cfg)
    pair = cfg.dump.get("h")
    if pair is None:
        out.write(ctx.kl.dump_gamma())
        return EXIT_OK
    x, y = pair
    n = ctx.group.order
    if not (0 <= x < n and 0 <= y < n):
        raise UsageError(f"element ids must lie in 0..{n - 1}")
    for z, h in sorted(ctx.kl.c_product(x, y).items()):
        out.write(f"{z} {h}\n")
    return EXIT_OK


def _report_doc(rep) -> dict:
    return {
        "cell": rep.cell,
        "passed": rep.passed,
        "clauses": rep.clauses,
        "details": rep.details,
        "data": {k: v for k, v in rep.data.items()},
    }


def cmd_verify12(cfg: RunConfig, out) -> int:
    ctx = _ctx(cfg)
    docs, ok = [], True
    for c in range(len(ctx.cells.two_sided_cells)):
        rep = verify_theorem12(ctx.jalg, c, cfg.tol)
        ok &= rep.passed
        docs.append(_report_doc(rep))
        if cfg.fmt == "text":
            out.write(rep.table() + "\n")
    if cfg.fmt == "json":
        out.write(_dumps({"type": cfg.type_label, "cells": docs}))
    return EXIT_OK if ok else EXIT_FAIL


def _special_rows(ctx, rounding: float) -> list[dict]:
    sr = SpecialRep(ctx.jalg, ctx.special.chars, tol=rounding)
    cells = ctx.cells
    rows = []
    for c in range(len(cells.two_sided_cells)):
        row = {"cell": c, "a": cells.a_of_cell(c), "a_prime": cells.a_prime(c), "L": len(cells.left_cells_in(c))}
        try:
            rep = sr.verify_theorem32(c)
            e = rep.special
            row.update(dim=sr.chars.degrees[e], b=rep.b_special, irreducible=e, passed=rep.passed)
        except (StructuralError, ConvergenceError) as exc:
            row.update(dim=None, b=None, irreducible=None, passed=False, error=str(exc))
        rows.append(row)
    return rows


def cmd_special(cfg: RunConfig, out) -> int:
    rows = _special_rows(_ctx(cfg), cfg.rounding)
    if cfg.fmt == "json":
        out.write(_dumps({"type": cfg.type_label, "cells": rows}))
    else:
        out.write("cell  a  a'  |L|  dimE  b_E  special\n")
        for r in rows:
            status = "pass" if r["passed"] else "FAIL"
            out.write(f"{r['cell']:>4} {r['a']:>2} {r['a_prime']:>3} {r['L']:>4} {r['dim']!s:>5} {r['b']!s:>4}  {status}\n")
    return EXIT_OK if all(r["passed"] for r in rows) else EXIT_FAIL


def cmd_verify(cfg: RunConfig, out) -> int:
    ctx = _ctx(cfg)
    ok = True
    failures = []
    lines = []
    for c in range(len(ctx.cells.two_sided_cells)):
        rep = verify_theorem12(ctx.jalg, c, cfg.tol)
        lines.append(rep.table())
        if not rep.passed:
            ok = False
            failures.append({"suite": "positivity", **_report_doc(rep)})
    for row in _special_rows(ctx, cfg.rounding):
        lines.append(f"cell {row['cell']}  {'special':<14} {'pass' if row['passed'] else 'FAIL'}")
        if not row["passed"]:
            ok = False
            failures.append({"suite": "special", **row})
    out.write("\n".join(lines) + "\n")
    if failures:
        out.write(_dumps({"type": cfg.type_label, "failures": failures}))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_wgraph(cfg: RunConfig, out) -> int:
    if cfg.fmt not in ("json", "dot"):
        raise UsageError("--format must be json or dot")
    ctx = _ctx(cfg)
    c = _cell(ctx, cfg.cell)
    ring = CellRing(ctx.jalg, c)
    gamma = ring.L[0] if cfg.gamma is None else cfg.gamma
    if gamma not in ring.L:
        raise UsageError(f"--gamma must be one of the left cells {ring.L}")
    mod = special_module(ring, gamma, cfg.tol)
    data = wg_mod.extract(mod)
    out.write(wg_mod.export(data, cfg.fmt))
    rep = wg_mod.hecke_check(data, cfg.tol.rel)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_eqbundle(cfg: RunConfig, out) -> int:
    path = cfg.dump.get("group_file")
    if not path:
        raise UsageError("--group <file> is required")
    try:
        gset = load_json(path)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    ring = BundleRing(gset)
    doc: dict = {"group_order": gset.group.order, "points": gset.size, "basis": len(ring.basis)}
    ok = True
    if cfg.dump.get("check42"):
        rep = ring.check_42a_all()
        doc["check_42a"] = {"checked": rep.checked, "failures": [list(map(str, f)) for f in rep.failures]}
        ok &= rep.passed
        doc["associative"] = ring.is_associative()
        ok &= doc["associative"]
        try:
            doc["modules_isomorphic"] = ring.modules_isomorphic()
        except StructuralError as exc:
            doc["modules_isomorphic"] = False
            doc["module_error"] = str(exc)
        ok &= doc["modules_isomorphic"]
    doc["passed"] = bool(ok)
    out.write(_dumps(doc))
    return EXIT_OK if ok else EXIT_FAIL


# -- parsing -----------------------------------------------------------------------
def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="refuse groups larger than this")
    common.add_argument("--tol-residual", type=float, default=1e-12, help="power-iteration residual")
    common.add_argument("--tol-rel", type=float, default=1e-8, help="relative consistency tolerance")
    common.add_argument("--tol-round", type=float, default=1e-6, help="rounding tolerance for characters")

    p = argparse.ArgumentParser(prog="asymhecke", description="Cells, the ring J and special representations.")
    sub = p.add_subparsers(dest="command", required=True)

    def typed(name, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("--type", required=True, dest="type_label", help="Cartan type, e.g. A2, B3, G2, I2(5)")
        return sp

    sp = typed("cells", "dump the cell partition as JSON")
    sp.add_argument("--dump-cells", action="store_true", help="cell dump (the default)")
    sp.add_argument("--dump-group", action="store_true", help="dump the group table instead")

    sp = typed("gamma", "dump gamma constants or one product c_x c_y")
    sp.add_argument("--dump-gamma", action="store_true", help="lines 'x y z gamma' (the default)")
    sp.add_argument("--dump-h", nargs=2, type=int, metavar=("X", "Y"), help="expansion of c_X c_Y")

    sp = typed("verify", "run the positivity and special-representation suites on every two-sided cell")
    sp = typed("verify-theorem12", "per-cell, per-clause table for the positivity checks")
    sp.add_argument("--format", default="text", choices=["text", "json"])

    sp = typed("special", "special representation of each two-sided cell")
    sp.add_argument("--format", default="text", choices=["text", "json"])

    sp = typed("wgraph", "W-graph of a special module")
    sp.add_argument("--cell", type=int, required=True)
    sp.add_argument("--gamma", type=int, help="left cell Gamma (default: the first in the cell)")
    sp.add_argument("--format", default="json", choices=["json", "dot"])

    sp = sub.add_parser("eqbundle", parents=[common], help="equivariant bundle checks")
    sp.add_argument("--group", required=True, help="JSON file with 'mult' and 'action' (or 'cosets')")
    sp.add_argument("--check-42", action="store_true", help="run the full multiplication-formula battery")
    return p


COMMANDS = {
    "cells": cmd_cells,
    "gamma": cmd_gamma,
    "verify": cmd_verify,
    "verify-theorem12": cmd_verify12,
    "special": cmd_special,
    "wgraph": cmd_wgraph,
    "eqbundle": cmd_eqbundle,
}


def _config(args) -> RunConfig:
    dump = {}
    if getattr(args, "dump_group", False):
        dump["group"] = True
    if getattr(args, "dump_h", None):
        dump["h"] = tuple(args.dump_h)
    if args.command == "eqbundle":
        dump["group_file"] = args.group
        dump["check42"] = args.check_42
    tol = Tolerances(residual=args.tol_residual, rel=args.tol_rel)
    return RunConfig(
        type_label=getattr(args, "type_label", None),
        cell=getattr(args, "cell", None),
        gamma=getattr(args, "gamma", None),
        fmt=getattr(args, "format", "json"),
        cap=args.cap,
        tol=tol,
        rounding=args.tol_round,
        dump=dump,
    )


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = _config(args)
        return COMMANDS[args.command](cfg, out)
    except UsageError as exc:
        print(f"asymhecke: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (StructuralError, ConvergenceError) as exc:
        out.write(_dumps({"error": type(exc).__name__, "message": str(exc)}))
        return EXIT_FAIL
