"""Command-line front end.

Exit codes:
  0  success
  2  usage or input parse error
  3  size cap exceeded (pass --override-cap)
  4  incremental engine and oracle disagree
  5  a verification check failed
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .buildset import BuildingSet, BuildingSetError, fmt, graphical_building_set, labels
from .gamma_engine import GammaEngine
from .graph import GraphParseError, LabeledGraph, parse_graph, wiener_index
from .moves import apply_flossing, apply_tree_shift, enumerate_flossing, enumerate_tree_shifts
from .nested import InstanceTooLarge, enumerate_nested_sets, f_polynomial, gamma_oracle
from .poly import f_to_h, gamma_le
from .poset import VerificationFailure, build_poset, verify_poset

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_MISMATCH = 4
EXIT_VERIFY = 5

DEFAULT_MAX_N = 10
COMMANDS = ("gamma", "fvector", "buildset", "moves", "poset", "wiener", "verify")


class CapExceeded(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    engine: str = "incremental"
    max_n: int = 8
    input: str | None = None
    building_set: str | None = None
    fmt: str = "text"
    override_cap: bool = False
    seed: int = 0
    jobs: int = 1
    output: str | None = None

    def check(self) -> None:
        if self.max_n > DEFAULT_MAX_N and not self.override_cap:
            raise CapExceeded(f"--n/--max-n {self.max_n} exceeds {DEFAULT_MAX_N}; pass --override-cap")


def _load_graph(cfg: RunConfig) -> LabeledGraph:
    if cfg.input is None:
        raise GraphParseError("--graph is required")
    try:
        text = Path(cfg.input).read_text()
    except OSError as exc:
        raise GraphParseError(str(exc)) from exc
    g = parse_graph(text)
    if g.n > DEFAULT_MAX_N and not cfg.override_cap:
        raise CapExceeded(f"graph has {g.n} vertices; pass --override-cap above {DEFAULT_MAX_N}")
    return g


def _load_building_set(cfg: RunConfig) -> BuildingSet:
    if cfg.building_set is not None:
        try:
            return BuildingSet.from_json(Path(cfg.building_set).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise GraphParseError(str(exc)) from exc
    return graphical_building_set(_load_graph(cfg))


def _emit(cfg: RunConfig, text: str, out) -> None:
    if cfg.output:
        Path(cfg.output).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text, file=out)


def cmd_gamma(cfg: RunConfig, out) -> int:
    b = _load_building_set(cfg)
    result = {}
    if cfg.engine in ("incremental", "both"):
        result["incremental"] = GammaEngine().gamma(b).to_list()
    if cfg.engine in ("oracle", "both"):
        result["oracle"] = gamma_oracle(b).to_list()
    values = list(result.values())
    agree = all(v == values[0] for v in values)
    if cfg.fmt == "json":
        _emit(cfg, json.dumps({"gamma": values[0], "engines": result, "agree": agree}), out)
    elif cfg.engine == "both":
        if agree:
            _emit(cfg, f"gamma = {values[0]}; engines agree", out)
        else:
            _emit(cfg, f"gamma MISMATCH: incremental = {result['incremental']}, oracle = {result['oracle']}", out)
    else:
        _emit(cfg, f"gamma = {values[0]}", out)
    return EXIT_OK if agree else EXIT_MISMATCH


def cmd_fvector(cfg: RunConfig, out) -> int:
    b = _load_building_set(cfg)
    census = enumerate_nested_sets(b, override_cap=cfg.override_cap)
    f, d = f_polynomial(b, override_cap=cfg.override_cap)
    h = f_to_h(f, d)
    data = {"dimension": d, "census": list(census.counts_by_size), "f": f.to_list(), "h": h.to_list()}
    if cfg.fmt == "json":
        _emit(cfg, json.dumps(data), out)
    else:
        _emit(cfg, "\n".join(f"{k} = {v}" for k, v in data.items()), out)
    return EXIT_OK


def cmd_buildset(cfg: RunConfig, out) -> int:
    b = _load_building_set(cfg)
    if cfg.fmt == "json":
        _emit(cfg, b.to_json(), out)
    else:
        lines = [
            f"ground = {labels(b.ground)}",
            f"members = {len(b)}",
            f"connected = {b.is_connected}",
            f"flag = {b.is_flag}",
            "b_max = " + " ".join(fmt(e) for e in b.b_max),
            "elements = " + " ".join(fmt(e) for e in b.elements),
        ]
        _emit(cfg, "\n".join(lines), out)
    return EXIT_OK


def cmd_moves(cfg: RunConfig, out) -> int:
    g = _load_graph(cfg)
    engine = GammaEngine()
    base = engine.gamma(graphical_building_set(g))
    w0 = wiener_index(g)
    rows = []
    ok = True
    for kind, moves, apply in (("shift", enumerate_tree_shifts(g), apply_tree_shift),
                               ("floss", enumerate_flossing(g), apply_flossing)):
        for m in moves:
            h = apply(g, m)
            gam = engine.gamma(graphical_building_set(h))
            lowered = gamma_le(gam, base)
            ok &= lowered
            row = {"kind": kind, "move": {k: (sorted(v) if isinstance(v, frozenset) else v)
                                          for k, v in vars(m).items()},
                   "result": h.to_dict(), "gamma": gam.to_list(), "lowers_gamma": lowered,
                   "wiener_delta": wiener_index(h) - w0}
            rows.append(row)
    if cfg.fmt == "json":
        _emit(cfg, json.dumps({"gamma": base.to_list(), "wiener": w0, "moves": rows}), out)
    else:
        lines = [f"gamma = {base.to_list()}; wiener = {w0}; {len(rows)} moves"]
        for r in rows:
            lines.append(f"{r['kind']:5s} {r['move']} -> gamma {r['gamma']} "
                         f"{'<=' if r['lowers_gamma'] else 'NOT <='} {base.to_list()}, wiener {r['wiener_delta']:+d}")
        _emit(cfg, "\n".join(lines), out)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_poset(cfg: RunConfig, out) -> int:
    p = build_poset(cfg.max_n, jobs=cfg.jobs)
    report = verify_poset(p, raise_on_failure=False)
    if cfg.fmt == "dot":
        _emit(cfg, p.to_dot(), out)
    elif cfg.fmt == "json":
        data = p.to_dict()
        data["checks"] = [{"name": n, "passed": ok, "detail": d} for n, ok, d in report.checks]
        _emit(cfg, json.dumps(data, indent=2), out)
    else:
        lines = [f"{len(p.nodes)} trees on {p.n} vertices"]
        for t in sorted(p.nodes, key=lambda t: (-t.leaf_count, t.code)):
            lines.append(f"  leaves={t.leaf_count} {t.code} gamma={t.gamma.to_list()}")
        lines.append(f"{len(p.shift_edges)} shift edges, {len(p.floss_edges)} floss edges")
        lines += report.lines()
        _emit(cfg, "\n".join(lines), out)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_wiener(cfg: RunConfig, out) -> int:
    g = _load_graph(cfg)
    w = wiener_index(g)
    _emit(cfg, json.dumps({"wiener": w}) if cfg.fmt == "json" else str(w), out)
    return EXIT_OK


def _run_criterion(args):
    from . import verification as v

    name, kwargs = args
    return getattr(v, name)(**kwargs)


def cmd_verify(cfg: RunConfig, out) -> int:
    from . import verification as v

    tree_n = cfg.max_n
    graph_n = min(6, tree_n)
    chain_n = min(7, tree_n)
    if cfg.jobs > 1:
        tasks = [
            ("criterion_engine_oracle", {"max_n": graph_n}),
            ("criterion_known_values", {}),
            ("criterion_tree_shifts", {"max_tree_n": tree_n, "max_graph_n": graph_n}),
            ("criterion_flossing", {"max_tree_n": tree_n, "max_graph_n": graph_n}),
            ("criterion_tree_bounds", {"max_n": tree_n}),
            ("criterion_poset", {"ns": range(2, tree_n + 1)}),
            ("criterion_seven_vertex", {}),
            ("criterion_structural", {"seed": cfg.seed, "max_n": graph_n}),
            ("criterion_flag_chains", {"max_n": chain_n}),
        ]
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_criterion, tasks))
    else:
        results = v.run_all(seed=cfg.seed, max_tree_n=tree_n, max_graph_n=graph_n, chain_n=chain_n)
    if cfg.fmt == "json":
        _emit(cfg, json.dumps([{"criterion": r.number, "name": r.name, "passed": r.passed,
                                "detail": r.detail} for r in results], indent=2), out)
    else:
        _emit(cfg, "\n".join(r.line() for r in results), out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


HANDLERS = {
    "gamma": cmd_gamma,
    "fvector": cmd_fvector,
    "buildset": cmd_buildset,
    "moves": cmd_moves,
    "poset": cmd_poset,
    "wiener": cmd_wiener,
    "verify": cmd_verify,
}


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        cfg.check()
        return HANDLERS[cfg.command](cfg, out)
    except (GraphParseError, BuildingSetError, ValueError) as exc:
        if isinstance(exc, (CapExceeded, InstanceTooLarge)):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CAP
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nestohedra",
        description="gamma-polynomials of graph-associahedra, tree shifts and flossing moves",
        epilog="exit codes: 0 ok, 2 parse/usage error, 3 size cap exceeded, "
               "4 engine mismatch, 5 verification failure",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph=True):
        if graph:
            p.add_argument("--graph", dest="input", help="graph text file ('n m' then 'u v' lines)")
        p.add_argument("--format", dest="fmt", choices=("text", "json", "dot"), default="text")
        p.add_argument("--override-cap", action="store_true", help="lift the n <= 10 cap")
        p.add_argument("--output", help="write to this file instead of stdout")

    p = sub.add_parser("gamma", help="gamma-polynomial of B(G) or of a JSON building set")
    common(p)
    p.add_argument("--buildset", dest="building_set", help="building set JSON file instead of --graph")
    p.add_argument("--engine", choices=("incremental", "oracle", "both"), default="incremental")

    p = sub.add_parser("fvector", help="nested-set census, f- and h-polynomials")
    common(p)
    p.add_argument("--buildset", dest="building_set")

    p = sub.add_parser("buildset", help="graphical building set and its properties")
    common(p)
    p.add_argument("--buildset", dest="building_set")

    p = sub.add_parser("moves", help="tree shifts and flossing moves of a graph")
    common(p)

    p = sub.add_parser("poset", help="tree-shift poset on n-vertex trees")
    common(p, graph=False)
    p.add_argument("--n", dest="max_n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("wiener", help="Wiener index of a connected graph")
    common(p)

    p = sub.add_parser("verify", help="run the verification suites and print a pass/fail table")
    common(p, graph=False)
    p.add_argument("--max-n", dest="max_n", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__})
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
