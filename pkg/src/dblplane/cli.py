"""Command-line entry point.

    dblplane lines --coeffs "1,0;0,1;1,1"
    dblplane hyper --poly "(x-1)^2*(x-2)^4" --d 2,4
    dblplane graph --coeffs "1,0;0,1;1,1" --emit dot
    dblplane intersection --n 5
    dblplane crossedproduct --poly "(x-1)^2*(x-2)^4" --index 1

Exit status is 0 iff every consistency check in the report passes.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from fractions import Fraction

from .arrangement import ArrangementError, ProjLine, curve_arrangement_graph, lines_arrangement
from .classgroup import ScenarioError
from .crossedprod import (
    CrossedAlgebra,
    CrossedProductError,
    associativity_sample,
    check_symbol_relations,
    table_summary,
    verify_table,
)
from .polyring import HyperellipticSpec
from .scenarios import Report, Scenario, intersection_data, run_scenario

_KEYS = ("coeffs", "poly", "d", "format", "emit", "n", "index", "trials", "seed", "vary_roots")


def parse_coeffs(text: str) -> list[tuple[Fraction, Fraction]]:
    out = []
    for chunk in text.replace(" ", "").split(";"):
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 'a,b', got {chunk!r}")
        out.append((Fraction(parts[0]), Fraction(parts[1])))
    return out


def parse_moduli(text) -> list[int]:
    if isinstance(text, list):
        return text
    return [int(t) for t in str(text).split(",") if t.strip()]


def load_config(path: str) -> dict:
    cp = configparser.ConfigParser()
    with open(path) as fh:
        cp.read_string("[run]\n" + fh.read())
    out = {}
    for k, v in cp["run"].items():
        k = k.replace("-", "_")
        if k not in _KEYS:
            raise ValueError(f"unknown config key {k!r}")
        out[k] = v
    return out


def _spec(poly: str) -> HyperellipticSpec:
    return HyperellipticSpec.from_poly(poly)


def _emit(rep: Report, fmt: str) -> str:
    if fmt == "json":
        return rep.dumps()
    return render_text(rep)


def render_text(rep: Report) -> str:
    lines = [f"scenario: {json.dumps(rep.scenario, sort_keys=True)}", "computed:"]
    for k in sorted(rep.computed):
        lines.append(f"  {k}: {_short(rep.computed[k])}")
    lines.append("asserted:")
    for k in sorted(rep.asserted):
        lines.append(f"  {k}: {_short(rep.asserted[k])}")
    lines.append("checks:")
    for c in rep.checks:
        lines.append(f"  {'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}")
    return "\n".join(lines)


def _short(v) -> str:
    if isinstance(v, dict) and "str" in v:
        return v["str"]
    s = json.dumps(v, sort_keys=True, default=str)
    return s if len(s) <= 160 else s[:157] + "..."


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dblplane", description="Invariants of affine double planes z^2 = f.")
    p.add_argument("--config", help="file of key = value lines supplying defaults")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--d", default=None, help="comma-separated moduli (default 2)")
        sp.add_argument("--format", choices=("json", "text"), default=None)

    sp = sub.add_parser("lines", help="n lines through the origin")
    sp.add_argument("--coeffs", default=None, help='"a1,b1;a2,b2;..." for f_i = a_i x + b_i y')
    common(sp)

    sp = sub.add_parser("hyper", help="f = y^2 - p(x)")
    sp.add_argument("--poly", default=None)
    sp.add_argument("--trials", type=int, default=None, help="random associativity triples per i")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--vary-roots", action="store_true", default=None,
                    help="recompute under shifted and permuted roots and compare")
    common(sp)

    sp = sub.add_parser("graph", help="arrangement graph")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--coeffs", default=None)
    g.add_argument("--poly", default=None)
    sp.add_argument("--emit", choices=("dot", "json"), default=None)

    sp = sub.add_parser("intersection", help="intersection matrix of the resolution, n odd")
    sp.add_argument("--n", type=int, default=None)

    sp = sub.add_parser("crossedproduct", help="multiplication table of the crossed product")
    sp.add_argument("--poly", default=None)
    sp.add_argument("--index", type=int, default=None, help="1-based root index")
    sp.add_argument("--trials", type=int, default=None)
    sp.add_argument("--seed", type=int, default=None)
    return p


def _merge(args: argparse.Namespace) -> dict:
    opts = load_config(args.config) if args.config else {}
    for k in _KEYS:
        v = getattr(args, k, None)
        if v is not None:
            opts[k] = v
    return opts


def _need(opts: dict, key: str):
    if key not in opts:
        raise ValueError(f"--{key.replace('_', '-')} is required")
    return opts[key]


def _flag(v) -> bool:
    if isinstance(v, bool):
        return v
    return str(v).strip().lower() in ("1", "true", "yes", "on")


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        opts = _merge(args)
        return _dispatch(args.command, opts, out)
    except (ScenarioError, ArrangementError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CrossedProductError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1


def _dispatch(cmd: str, opts: dict, out) -> int:
    fmt = opts.get("format", "json")
    moduli = parse_moduli(opts.get("d", "2"))
    if cmd == "lines":
        s = Scenario.lines(parse_coeffs(_need(opts, "coeffs")), moduli)
        rep = run_scenario(s)
        print(_emit(rep, fmt), file=out)
        return 0 if rep.ok else 1
    if cmd == "hyper":
        s = Scenario.hyper(_spec(_need(opts, "poly")), moduli,
                           assoc_trials=int(opts.get("trials", 20)), seed=int(opts.get("seed", 0)))
        rep = run_scenario(s, vary_roots=_flag(opts.get("vary_roots", False)))
        print(_emit(rep, fmt), file=out)
        return 0 if rep.ok else 1
    if cmd == "graph":
        if "poly" in opts:
            h = _spec(opts["poly"])
            if h.D % 2:
                raise ScenarioError("the F1/F2 arrangement needs D even")
            g = curve_arrangement_graph(h).graph
        else:
            lines = [ProjLine(a, b) for a, b in parse_coeffs(_need(opts, "coeffs"))]
            g = lines_arrangement(lines).graph
        emit = opts.get("emit", "json")
        print(g.to_dot() if emit == "dot" else json.dumps(g.to_json(), indent=2, sort_keys=True), file=out)
        return 0
    if cmd == "intersection":
        n = int(_need(opts, "n"))
        data = intersection_data(n)
        ok = data["abs_det"] == 2 ** (n - 1)
        print(json.dumps({"n": n, "matrix": data["matrix"], "abs_det": data["abs_det"],
                          "cokernel": data["cokernel"].to_json(), "cokernel_str": str(data["cokernel"])},
                         indent=2, sort_keys=True), file=out)
        return 0 if ok else 1
    if cmd == "crossedproduct":
        h = _spec(_need(opts, "poly"))
        i = int(_need(opts, "index"))
        if not 1 <= i <= h.v:
            raise ValueError(f"index must be in 1..{h.v}")
        alg = CrossedAlgebra(h, i - 1)
        cells = verify_table(alg)
        summ = table_summary(cells)
        rel = check_symbol_relations(alg)
        assoc = associativity_sample(alg, int(opts.get("trials", 100)), int(opts.get("seed", 0)))
        rep = {"spec": h.to_json(), "index": i, "ell": str(alg.ell),
               "cells": [c.to_json() for c in cells], "summary": summ,
               "symbol_relations": rel, "associativity": assoc}
        print(json.dumps(rep, indent=2, sort_keys=True, default=str), file=out)
        ok = summ["oracle_agrees"] == len(cells) and all(rel.values()) and not assoc["failures"]
        return 0 if ok else 1
    raise ValueError(f"unknown command {cmd}")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
