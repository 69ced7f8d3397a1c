"""Command-line interface.

Exit codes: 0 success, 1 validation or mathematical failure (diagnostics on
stderr), 2 usage or parse error.  JSON output carries the top-level keys
`tower`, `result` and `diagnostics`; text output is human-readable.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import algebra, toric
from .dsl import parse_tower, render_document, elaborate
from .errors import ProtoricError
from .lattice import FinSuppVec, OmegaPrefix, specker_pair, unit_vec, vadd
from .render import format_inequalities, render
from .semigroups import semigroup_equal
from .towers import (TowerElement, canonical_embedding, cauchy_check,
                     family_tower, sub_tower_limit_membership)


class UsageError(Exception):
    pass


def _parse_vec(text: str):
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise UsageError(f"expected a vector like (1,2), got {text!r}")
    inner = text[1:-1].strip()
    if not inner:
        return ()
    try:
        return tuple(int(p.strip()) for p in inner.split(","))
    except ValueError as exc:
        raise UsageError(f"bad vector {text!r}: {exc}") from None


def _parse_rationals(text: str):
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise UsageError(f"expected values like (1,1/2), got {text!r}")
    try:
        return tuple(Fraction(p.strip()) for p in text[1:-1].split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad values {text!r}: {exc}") from None


def _load_document(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(str(exc)) from None
    result = parse_tower(text)
    if not result.ok:
        for d in result.diagnostics:
            print(f"{path}: {d.format()}", file=sys.stderr)
        raise UsageError(f"{path}: parse failed")
    return result.document


def _document_jsonable(doc) -> dict:
    levels = []
    for lv in doc.levels:
        entry = {"index": lv.index, "kind": lv.kind, "ambient": lv.ambient}
        if lv.kind == "equation":
            lhs, rhs = lv.equation
            fmt = lambda mono: "*".join(n if e == 1 else f"{n}^{e}" for n, e in mono)
            entry["equation"] = f"{fmt(lhs)} = {fmt(rhs)}"
        else:
            entry["vectors"] = [list(v) for v in lv.vectors]
        levels.append(entry)
    connects = [{"source": c.source, "target": c.target,
                 "matrix": [list(r) for r in c.matrix]} for c in doc.connects]
    family = None
    if doc.family is not None:
        family = {"rule": doc.family.rule, "depth": doc.family.depth}
    return {"name": doc.name, "levels": levels, "connects": connects, "family": family}


def _emit(args, result, tower=None, text_override=None) -> int:
    if args.format == "json":
        payload = {"tower": tower, "result": result, "diagnostics": []}
        print(render(payload, "json"))
    elif text_override is not None:
        print(text_override)
    else:
        print(render(result, "text"))
    return 0


# ---------------------------------------------------------------------------
# commands


def cmd_parse(args) -> int:
    doc = _load_document(args.file)
    if args.format == "json":
        payload = {"tower": _document_jsonable(doc), "result": {}, "diagnostics": []}
        print(render(payload, "json"))
    else:
        sys.stdout.write(render_document(doc))
    return 0


def cmd_level(args) -> int:
    doc = _load_document(args.file)
    tower = elaborate(doc)
    if not 1 <= args.index <= tower.depth:
        raise ProtoricError(f"level {args.index} outside tower depth {tower.depth}")
    sg = tower.levels[args.index - 1]
    text_override = None
    if args.what == "generators":
        result = {"generators": [list(g) for g in sg.generators]}
    elif args.what == "hilbert":
        from .cones import hilbert_basis
        hb = hilbert_basis(sg.recession_cone)
        result = {"hilbert_basis": [list(h) for h in hb.elements]}
    elif args.what == "inequalities":
        normals = sg.recession_cone.inequalities
        result = {"inequalities": [list(n) for n in normals]}
        text_override = format_inequalities(normals)
    else:  # ideal
        level = toric.variety_from_semigroup(sg)
        result = {"ideal_lattice": [list(u) for u in level.ideal_lattice]}
    if args.figure:
        from .figures import save_generator_figure
        save_generator_figure(sg.generators, args.figure,
                              title=f"{doc.name} level {args.index}")
    return _emit(args, result, tower=doc.name, text_override=text_override)


def cmd_check(args) -> int:
    doc = _load_document(args.file)
    tower = elaborate(doc)
    result = {"valid": True, "levels": tower.depth,
              "family": tower.family}
    return _emit(args, result, tower=doc.name)


def cmd_embed(args) -> int:
    doc = _load_document(args.file)
    tower = elaborate(doc)
    depth = args.depth if args.depth is not None else tower.depth
    emb = canonical_embedding(tower, depth)
    result = {
        "ranks": list(emb.ranks),
        "finite_type": emb.finite_type,
        "changes": [[list(r) for r in w] for w in emb.changes],
        "projections": [[list(r) for r in p] for p in emb.projected_maps],
    }
    if args.figure:
        from .figures import save_rank_figure
        save_rank_figure(emb.ranks, args.figure, title=f"{doc.name} ranks")
    return _emit(args, result, tower=doc.name)


def cmd_dualize(args) -> int:
    doc = _load_document(args.file)
    tower = elaborate(doc)
    vt = toric.dualize_tower(tower)
    back = toric.semigroup_of(vt)
    equal = [semigroup_equal(a, b) for a, b in zip(tower.levels, back.levels)]
    result = {
        "levels": tower.depth,
        "torus_ranks": [lv.torus_rank for lv in vt.levels],
        "round_trip_equal": equal,
    }
    return _emit(args, result, tower=doc.name)


def cmd_pair(args) -> int:
    omega = OmegaPrefix(_parse_vec(args.omega))
    finsupp = FinSuppVec.from_dense(_parse_vec(args.finsupp))
    result = {"pair": specker_pair(omega, finsupp)}
    return _emit(args, result)


def cmd_point(args) -> int:
    doc = _load_document(args.file)
    tower = elaborate(doc)
    if not 1 <= args.level <= tower.depth:
        raise ProtoricError(f"level {args.level} outside tower depth {tower.depth}")
    level = toric.variety_from_semigroup(tower.levels[args.level - 1])
    point = toric.point_from_values(level, _parse_rationals(args.values))
    result = {"values": [str(v) for v in point.values]}
    if args.eval is not None:
        value = toric.evaluate_point(point, _parse_vec(args.eval))
        result["value"] = str(value)
    return _emit(args, result, tower=doc.name)


def cmd_demo(args) -> int:
    if args.name == "cauchy-algebra":
        return _demo_cauchy_algebra(args)
    if args.name == "incomplete-subsemigroup":
        return _demo_incomplete(args)
    raise UsageError(f"unknown demo {args.name!r}")


def _demo_cauchy_algebra(args) -> int:
    depth = 8
    tower = family_tower("affine_space", depth)
    fs = {i: algebra.exref_sequence(tower, i) for i in range(1, depth + 1)}
    cells = []
    lines = ["  l  i  j  pi_l(f_j - f_i)"]
    all_zero = True
    for i in range(2, depth + 1):
        for j in range(i + 1, depth + 1):
            for ell in range(1, i):
                diff = algebra.project(algebra.sub(fs[j], fs[i]), ell)
                zero = diff.is_zero()
                all_zero = all_zero and zero
                cells.append({"l": ell, "i": i, "j": j, "zero": zero})
                lines.append(f"  {ell}  {i}  {j}  {'0' if zero else 'nonzero'}")
    supports = [fs[i].support_size for i in range(1, depth + 1)]
    result = {"all_zero": all_zero, "cells": cells, "support_sizes": supports}
    return _emit(args, result, text_override="\n".join(lines))


def _demo_incomplete(args) -> int:
    depth = 4
    count = 8
    tower = family_tower("affine_space", depth)
    seq = []
    for i in range(1, count + 1):
        components = []
        for k in range(1, depth + 1):
            e1 = unit_vec(k, 0)
            ei = unit_vec(k, i - 1) if i <= k else tuple(0 for _ in range(k))
            components.append(vadd(e1, ei))
        seq.append(TowerElement(tuple(components)))
    report = cauchy_check(seq, depth)
    inside = sub_tower_limit_membership(
        tower, "exclude-points", report.limit_prefix, excluded=[(1,)])
    result = {
        "is_cauchy": report.is_cauchy_prefix,
        "stabilization": list(report.stabilization),
        "limit_prefix": [list(m) for m in report.limit_prefix],
        "in_restricted_subsemigroup": inside,
    }
    return _emit(args, result)


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="protoric",
                                     description="towers of affine semigroups and their toric duals")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="parse a .twr file")
    p.add_argument("file")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("level", parents=[common], help="report on one tower level")
    p.add_argument("file")
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--what", choices=("generators", "hilbert", "inequalities", "ideal"),
                   required=True)
    p.add_argument("--figure", help="also render a figure to this path")
    p.set_defaults(func=cmd_level)

    p = sub.add_parser("check", parents=[common], help="validate a tower")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("embed", parents=[common], help="canonical embedding report")
    p.add_argument("file")
    p.add_argument("--depth", type=int)
    p.add_argument("--figure", help="also render a figure to this path")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("dualize", parents=[common], help="duality round-trip report")
    p.add_argument("file")
    p.set_defaults(func=cmd_dualize)

    p = sub.add_parser("pair", parents=[common], help="Specker pairing of a prefix and a finite-support vector")
    p.add_argument("--omega", required=True)
    p.add_argument("--finsupp", required=True)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("point", parents=[common], help="build and evaluate a point")
    p.add_argument("file")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--values", required=True)
    p.add_argument("--eval")
    p.set_defaults(func=cmd_point)

    p = sub.add_parser("demo", parents=[common], help="built-in demonstrations")
    p.add_argument("name", choices=("cauchy-algebra", "incomplete-subsemigroup"))
    p.set_defaults(func=cmd_demo)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ProtoricError as exc:
        print(f"error: {exc}", file=sys.stderr)
        witness = getattr(exc, "witness", None)
        if witness is not None:
            print(f"witness: {witness}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
