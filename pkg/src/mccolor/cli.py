"""Command line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import fileio
from .bench import ALGORITHMS, ExperimentPlan, fit_exponent, pick_provider, read_csv, rows_to_csv, run_plan, run_report
from .coloring import audit_run, t_color_via_separators
from .exact import exact_mcc
from .generators import FAMILIES, Instance, InstanceSpec, build_instance
from .graph import GraphError, max_mono_component
from .separators import SeparatorError, SeparatorProfile

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _number(text: str):
    for conv in (int, float):
        try:
            return conv(text)
        except ValueError:
            pass
    raise UsageError(f"not a number: {text!r}")


def _params(items) -> dict:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError(f"parameter {item!r} is not key=value")
        k, v = item.split("=", 1)
        out[k.strip()] = _number(v.strip())
    return out


def read_config(path: str) -> dict:
    """``key=value`` lines; ``#`` starts a comment."""
    conf = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            k, v = line.split("=", 1)
            conf[k.strip().replace("-", "_")] = v.strip()
    return conf


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _read(path):
    with open(path) as fh:
        return fh.read()


def cmd_generate(a) -> int:
    spec = InstanceSpec.make(a.family, a.seed, **_params(a.param))
    inst = build_instance(spec)
    _write(a.out, fileio.emit_graph(inst.graph))
    if a.meta:
        meta = inst.metadata.as_dict()
        meta["spec"] = {"family": spec.family, "params": spec.kw, "seed": spec.seed}
        _write(a.meta, json.dumps(meta, indent=2, sort_keys=True, default=str) + "\n")
    if a.decomp:
        if inst.decomposition is None:
            raise UsageError(f"family {a.family} has no tree decomposition")
        _write(a.decomp, fileio.emit_decomposition(inst.decomposition))
    return EXIT_OK


def cmd_color(a) -> int:
    g = fileio.parse_graph(_read(a.graph))
    td = fileio.parse_decomposition(_read(a.decomp)) if a.decomp else None
    if td is not None:
        td.validate(g)
    inst = Instance(InstanceSpec("file"), g, None, decomposition=td, planar=g.embedding is not None)
    prov = pick_provider(inst, a.provider)
    prof = prov.profile()
    if a.K is not None or a.gamma is not None:
        prof = SeparatorProfile(Fraction(a.K) if a.K is not None else prof.K,
                                Fraction(a.gamma) if a.gamma is not None else prof.gamma, prov.name)
    start = time.monotonic()
    run = t_color_via_separators(g, a.t, prof, prov)
    elapsed = (time.monotonic() - start) * 1000
    if a.out:
        _write(a.out, fileio.emit_coloring(run.coloring))
    _write(a.report, run_report(run, g, elapsed))
    problems = audit_run(g, run)
    for p in problems:
        print(f"violation: {p}", file=sys.stderr)
    return EXIT_VERIFY if problems else EXIT_OK


def cmd_exact(a) -> int:
    g = fileio.parse_graph(_read(a.graph))
    res = exact_mcc(g, a.t, a.budget)
    print(f"value={res.value} exact={int(res.exact)} nodes={res.nodes_explored}")
    if a.out:
        _write(a.out, fileio.emit_coloring(res.witness))
    return EXIT_OK if res.exact else EXIT_BUDGET


def cmd_verify(a) -> int:
    g = fileio.parse_graph(_read(a.graph))
    ok = True
    if a.coloring:
        col = fileio.parse_coloring(_read(a.coloring), a.t)
        rep = max_mono_component(g, col)
        print(f"max_component={rep.max_component_size} per_color={list(rep.per_color_max)}")
        if a.bound is not None and rep.max_component_size > a.bound:
            print(f"violation: component of size {rep.max_component_size} exceeds {a.bound}", file=sys.stderr)
            ok = False
    if a.decomp:
        td = fileio.parse_decomposition(_read(a.decomp))
        try:
            td.validate(g)
            print(f"decomposition ok, width={td.width}")
        except SeparatorError as exc:
            print(f"violation: {exc}", file=sys.stderr)
            ok = False
    return EXIT_OK if ok else EXIT_VERIFY


def _sweep_specs(a) -> list[InstanceSpec]:
    base = _params(a.param)
    if not a.range:
        return [InstanceSpec.make(a.family, 0, **base)]
    key, _, span = a.range.partition("=")
    try:
        lo, hi = (int(x) for x in span.split(":"))
    except ValueError:
        raise UsageError("--range expects key=lo:hi") from None
    return [InstanceSpec.make(a.family, 0, **{**base, key: v}) for v in range(lo, hi + 1)]


def cmd_sweep(a) -> int:
    seeds = [int(s) for s in a.seeds.split(",")] if a.seeds else None
    plan = ExperimentPlan(_sweep_specs(a), a.algorithm, a.t, seeds, None, a.time, a.budget)
    rows = run_plan(plan)
    _write(a.out, rows_to_csv(rows, a.time))
    if any(r.get("exact") == 0 for r in rows):
        return EXIT_BUDGET
    return EXIT_OK


def cmd_fit(a) -> int:
    fit = fit_exponent(read_csv(a.csv), a.x, a.y)
    print(f"exponent={fit.exponent:.6f} intercept={fit.intercept:.6f} residual={fit.residual:.6f} points={len(fit.pairs)}")
    if a.min is not None and fit.exponent < a.min or a.max is not None and fit.exponent > a.max:
        print("violation: exponent outside the expected window", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mccolor", description="Colorings with small monochromatic components.")
    p.add_argument("--config", help="key=value file supplying flag defaults")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="emit an instance as an edge list")
    g.add_argument("--family", required=True, choices=FAMILIES)
    g.add_argument("--param", action="append", metavar="KEY=VALUE")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default="-")
    g.add_argument("--meta", help="metadata sidecar (JSON)")
    g.add_argument("--decomp", help="write the tree decomposition here")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("color", help="separator-driven coloring of a graph file")
    c.add_argument("--graph", required=True)
    c.add_argument("--decomp")
    c.add_argument("--t", type=int, default=2)
    c.add_argument("--provider", default="separator", choices=("separator", "planar", "treewidth", "fallback"))
    c.add_argument("--K")
    c.add_argument("--gamma")
    c.add_argument("--out")
    c.add_argument("--report", default="-")
    c.set_defaults(func=cmd_color)

    e = sub.add_parser("exact", help="exact mcc_t by branch and bound")
    e.add_argument("--graph", required=True)
    e.add_argument("--t", type=int, default=2)
    e.add_argument("--budget", type=int, default=20_000_000)
    e.add_argument("--out")
    e.set_defaults(func=cmd_exact)

    v = sub.add_parser("verify", help="check a coloring and/or decomposition")
    v.add_argument("--graph", required=True)
    v.add_argument("--coloring")
    v.add_argument("--t", type=int)
    v.add_argument("--bound", type=int)
    v.add_argument("--decomp")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="run a family sweep and write CSV")
    s.add_argument("--family", required=True, choices=FAMILIES)
    s.add_argument("--param", action="append", metavar="KEY=VALUE")
    s.add_argument("--range", metavar="KEY=LO:HI")
    s.add_argument("--seeds")
    s.add_argument("--algorithm", default="separator", choices=ALGORITHMS)
    s.add_argument("--t", type=int, default=2)
    s.add_argument("--budget", type=int, default=20_000_000)
    s.add_argument("--time", action="store_true", help="add a wall-clock column (breaks byte determinism)")
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_sweep)

    f = sub.add_parser("fit", help="log-log exponent of a CSV column pair")
    f.add_argument("--csv", required=True)
    f.add_argument("--x", default="n")
    f.add_argument("--y", default="max_component")
    f.add_argument("--min", type=float)
    f.add_argument("--max", type=float)
    f.set_defaults(func=cmd_fit)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        # --config may appear anywhere; its values become defaults that flags override
        conf_parser = argparse.ArgumentParser(add_help=False)
        conf_parser.add_argument("--config")
        pre, rest = conf_parser.parse_known_args(argv)
        if pre.config:
            conf = read_config(pre.config)
            for sp in parser._subparsers._group_actions[0].choices.values():
                dests = {a.dest for a in sp._actions}
                sp.set_defaults(**{k: v for k, v in conf.items() if k in dests})
        args = parser.parse_args(rest)
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (UsageError, fileio.ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
