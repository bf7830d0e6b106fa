"""Command-line interface.

Subcommands compute profiles, densities, nested fixed points, tensor-limit
densities, Monte Carlo estimates, closed-form bounds, catalog tables, and
graph6 conversions from construction expressions.  Output is JSON by
default (byte-identical across identical invocations) or an aligned text
table; results can be cached in a content-addressed directory.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile

from . import __version__
from .catalog import TABLES, closed_form_bounds, reproduce_table
from .dsl import evaluate, parse_expr, parse_quantum, print_expr, split_top_level
from .graphs import LabeledGraph, graph6_decode, graph6_encode
from .models import StepModel, from_graph
from .nesting import nested_spectral, stationary_profile
from .profiles import (
    induced_profile,
    iso_table,
    labeled_repetitive_profile,
    monte_carlo_profile,
    quantum_density,
    repetitive_profile,
)
from .spectral import model_spectrum, product_limit_density

_FLAVORS = ("induced", "repetitive", "labeled", "spectral")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--cache", metavar="DIR", default=None)
    common.add_argument("--budget", type=int, default=None)
    common.add_argument("--approx", action="store_true")

    parser = argparse.ArgumentParser(
        prog="inducibility",
        description="Exact induced-subgraph densities of graph constructions.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", parents=[common], help="profile of a construction")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--flavor", choices=_FLAVORS, default="repetitive")
    p.add_argument("expr")

    p = sub.add_parser("density", parents=[common], help="density of a quantum target")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--quantum", required=True)
    p.add_argument("expr")

    p = sub.add_parser("nested-profile", parents=[common], help="stationary nested profile")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("expr")

    p = sub.add_parser("limit", parents=[common], help="tensor-limit density")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--quantum", required=True)
    p.add_argument("--factors", default="")
    p.add_argument("--nested", default="")

    p = sub.add_parser("estimate", parents=[common], help="Monte Carlo profile")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("expr")

    p = sub.add_parser("bounds", parents=[common], help="closed-form bounds")
    p.add_argument("--t", type=int, required=True)

    p = sub.add_parser("tables", parents=[common], help="reproduce a result table")
    p.add_argument("--which", choices=TABLES, required=True)

    p = sub.add_parser("convert", parents=[common], help="graph6 conversion")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--graph6")
    group.add_argument("--encode")

    return parser


def _value_entry(name: str, value, stderr=None) -> dict:
    if isinstance(value, float):
        entry = {"type": name, "num": None, "den": None, "approx": value}
    else:
        entry = {
            "type": name,
            "num": str(value.numerator),
            "den": str(value.denominator),
            "approx": float(value),
        }
    if stderr is not None:
        entry["stderr"] = stderr
    return entry


def _meta(args, seed=None) -> dict:
    meta = {"version": __version__, "budget": args.budget}
    if seed is not None:
        meta["seed"] = seed
    return meta


def _profile_payload(command, t, names, values, args, seed=None, stderr=None):
    entries = []
    for i, name in enumerate(names):
        entries.append(_value_entry(name, values[i], None if stderr is None else stderr[i]))
    return {
        "command": command,
        "t": t,
        "basis": list(names),
        "values": entries,
        "meta": _meta(args, seed),
    }


def _budget_kwargs(args) -> dict:
    return {} if args.budget is None else {"budget": args.budget}


def _run_profile(args) -> dict:
    source = evaluate(parse_expr(args.expr), approx=args.approx)
    names = iso_table(args.t).type_names()
    kw = _budget_kwargs(args)
    if args.flavor == "induced":
        if not isinstance(source, LabeledGraph):
            raise ValueError("induced profiles need a graph construction")
        values = induced_profile(source, args.t, **kw).values
    else:
        model = source if isinstance(source, StepModel) else from_graph(source)
        if args.flavor == "repetitive":
            values = repetitive_profile(model, args.t, **kw).values
        elif args.flavor == "labeled":
            lab = labeled_repetitive_profile(model, args.t, **kw)
            table = iso_table(args.t)
            values = tuple(lab.values[e.rep_mask] for e in table.entries)
        else:
            values = model_spectrum(model, args.t).type_values()
    return _profile_payload(f"profile:{args.flavor}", args.t, names, values, args)


def _run_density(args) -> dict:
    Q = parse_quantum(args.quantum, args.t)
    source = evaluate(parse_expr(args.expr), approx=args.approx)
    model = source if isinstance(source, StepModel) else from_graph(source)
    prof = repetitive_profile(model, args.t, **_budget_kwargs(args))
    value = quantum_density(Q, prof)
    return _profile_payload("density", args.t, (Q.describe(),), (value,), args)


def _run_nested_profile(args) -> dict:
    base = evaluate(parse_expr(args.expr), approx=args.approx)
    if not isinstance(base, LabeledGraph):
        raise ValueError("nested profiles need a loopless graph construction")
    q = stationary_profile(base, args.t)
    names = iso_table(args.t).type_names()
    return _profile_payload("nested-profile", args.t, names, q.profile.values, args)


def _run_limit(args) -> dict:
    if not args.factors and not args.nested:
        raise ValueError("limit needs --factors, --nested, or both")
    Q = parse_quantum(args.quantum, args.t)
    spectra = []
    if args.factors:
        for text in split_top_level(args.factors):
            source = evaluate(parse_expr(text), approx=args.approx)
            model = source if isinstance(source, StepModel) else from_graph(source)
            spectra.append(model_spectrum(model, args.t))
    if args.nested:
        base = evaluate(parse_expr(args.nested), approx=args.approx)
        if not isinstance(base, LabeledGraph):
            raise ValueError("the nested factor must be a loopless graph")
        spectra.append(nested_spectral(base, args.t))
    value = product_limit_density(Q, *spectra)
    return _profile_payload("limit", args.t, (Q.describe(),), (value,), args)


def _run_estimate(args) -> dict:
    source = evaluate(parse_expr(args.expr), approx=args.approx)
    est = monte_carlo_profile(source, args.t, args.samples, args.seed)
    names = iso_table(args.t).type_names()
    return _profile_payload(
        "estimate", args.t, names, est.values, args, seed=args.seed, stderr=est.stderr
    )


def _run_bounds(args) -> dict:
    bounds = closed_form_bounds(args.t)
    names = tuple(name for name, _ in bounds.named())
    values = tuple(value for _, value in bounds.named())
    return _profile_payload("bounds", args.t, names, values, args)


def _run_tables(args) -> dict:
    reports = reproduce_table(args.which)
    rows = []
    for r in reports:
        rows.append(
            {
                "row": r.row_id,
                "t": r.row.t,
                "target": r.row.target or "edges " + str(list(r.row.target_edges)),
                "construction": r.row.describe(),
                "expected": r.row.expected,
                "computed": r.computed
                if isinstance(r.computed, float)
                else f"{r.computed.numerator}/{r.computed.denominator}",
                "comparison": r.row.comparison,
                "passed": r.passed,
            }
        )
    return {
        "command": "tables",
        "which": args.which,
        "rows": rows,
        "meta": _meta(args),
    }


def _run_convert(args) -> dict:
    if args.graph6 is not None:
        g = graph6_decode(args.graph6)
        text = args.graph6
    else:
        g = evaluate(parse_expr(args.encode), approx=args.approx)
        if not isinstance(g, LabeledGraph):
            raise ValueError("convert --encode needs a graph construction")
        text = graph6_encode(g)
    return {
        "command": "convert",
        "n": g.n,
        "graph6": text,
        "edges": [list(e) for e in g.edges()],
        "meta": _meta(args),
    }


_RUNNERS = {
    "profile": _run_profile,
    "density": _run_density,
    "nested-profile": _run_nested_profile,
    "limit": _run_limit,
    "estimate": _run_estimate,
    "bounds": _run_bounds,
    "tables": _run_tables,
    "convert": _run_convert,
}


def _cache_key(args) -> str:
    """Content key over command, mathematical parameters, and version.

    Expressions enter in canonical printed form; the output format and the
    budget do not change the result, so they stay out of the key.
    """
    parts = [f"version={__version__}", f"command={args.command}"]
    for name in ("t", "flavor", "samples", "seed", "which", "graph6"):
        if hasattr(args, name) and getattr(args, name) is not None:
            parts.append(f"{name}={getattr(args, name)}")
    if getattr(args, "approx", False):
        parts.append("approx=1")
    if getattr(args, "quantum", None):
        parts.append(f"quantum={parse_quantum(args.quantum, args.t).describe()}")
    for name in ("expr", "encode", "nested"):
        text = getattr(args, name, None)
        if text:
            parts.append(f"{name}={print_expr(parse_expr(text))}")
    factors = getattr(args, "factors", "")
    if factors:
        canon = ",".join(print_expr(parse_expr(f)) for f in split_top_level(factors))
        parts.append(f"factors={canon}")
    blob = "\n".join(parts).encode()
    return hashlib.sha256(blob).hexdigest()


def _cache_load(directory: str, key: str):
    path = os.path.join(directory, key + ".json")
    if not os.path.exists(path):
        return None
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _cache_store(directory: str, key: str, payload: dict) -> None:
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, key + ".json")
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, indent=2)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _render_json(payload: dict) -> str:
    return json.dumps(payload, indent=2)


def _render_table(payload: dict) -> str:
    lines = []
    if payload["command"] == "tables":
        header = f"{'row':<16} {'status':<6} {'computed':>24} {'expected':>16}"
        lines.append(header)
        lines.append("-" * len(header))
        for row in payload["rows"]:
            status = "pass" if row["passed"] else "FAIL"
            lines.append(
                f"{row['row']:<16} {status:<6} {str(row['computed']):>24} {row['expected']:>16}"
            )
    elif payload["command"] == "convert":
        lines.append(f"n = {payload['n']}")
        lines.append(f"graph6 = {payload['graph6']}")
        lines.append("edges = " + " ".join(f"{u}-{v}" for u, v in payload["edges"]))
    else:
        width = max((len(v["type"]) for v in payload["values"]), default=4)
        for v in payload["values"]:
            if v["num"] is None:
                text = f"{v['approx']:.9g}"
                if "stderr" in v:
                    text += f"  (se {v['stderr']:.3g})"
            else:
                text = f"{v['num']}/{v['den']}  (~{v['approx']:.9g})"
            lines.append(f"{v['type']:<{width}}  {text}")
    return "\n".join(lines)


def run_command(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = None
        key = None
        if args.cache:
            key = _cache_key(args)
            payload = _cache_load(args.cache, key)
        if payload is None:
            payload = _RUNNERS[args.command](args)
            if args.cache:
                _cache_store(args.cache, key, payload)
    except BrokenPipeError:
        raise
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = _render_json(payload) if args.format == "json" else _render_table(payload)
    print(text)
    if payload["command"] == "tables" and not all(r["passed"] for r in payload["rows"]):
        return 1
    return 0


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
