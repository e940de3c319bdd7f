"""Command-line front end: run, sweep, render, rule-info."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from datetime import datetime, timezone

from .ca import complement_rule, lambda_param, make_rule, mirror_rule
from .pipeline import RunConfig, build_config, run_batch, run_once, space_time_grids
from .render import grid_to_ascii, write_pgm

DEFAULT_RULES = [90, 150, 182, 22, 60, 102, 105, 153, 165, 180, 195]
DEFAULT_COMBOS = [(2, 4), (2, 8), (4, 4), (4, 8), (8, 8)]

EXIT_SUCCESS = 0
EXIT_FAILED_RUN = 1
EXIT_USAGE = 2


class ConfigError(Exception):
    pass


def _load_config_file(path: str | None) -> dict:
    if path is None:
        return {}
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must contain a JSON object")
    return data


def _merged(args: argparse.Namespace, defaults: dict) -> dict:
    """File values overlaid with any flags the user actually passed."""
    cfg = dict(defaults)
    cfg.update(_load_config_file(args.config))
    for key in ("rule", "iterations", "mappings", "diffuse", "distractor",
                "runs", "seed", "out", "workers"):
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    if getattr(args, "layered", False):
        cfg["layered"] = True
    return cfg


def _run_config_from(cfg: dict) -> RunConfig:
    try:
        rule = cfg["rule"]
    except KeyError:
        raise ConfigError("a rule number is required (--rule or config file)")
    layer2 = cfg.get("layer2") or {}
    layered = bool(cfg.get("layered")) or bool(layer2)
    try:
        return build_config(
            rule=int(rule),
            iterations=int(cfg.get("iterations", 8)),
            mappings=int(cfg.get("mappings", 8)),
            diffuse=int(cfg.get("diffuse", 40)),
            distractor=int(cfg.get("distractor", 200)),
            seed=int(cfg.get("seed", 0)),
            layer2_rule=int(layer2.get("rule", rule)) if layered else None,
            layer2_iterations=layer2.get("iterations"),
            layer2_mappings=layer2.get("mappings"),
            layer2_diffuse=layer2.get("diffuse"),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid configuration: {exc}") from exc


def cmd_run(args: argparse.Namespace) -> int:
    config = _run_config_from(_merged(args, {}))
    result = run_once(config)
    evals = [("layer 1", result.layer1_eval)]
    if result.layer2_eval is not None:
        evals.append(("layer 2", result.layer2_eval))
    for name, ev in evals:
        print(
            f"{name}: {ev.correct_bits}/{ev.total_bits} bits "
            f"({100.0 * ev.accuracy:.2f}%), success={ev.success}"
        )
    return EXIT_SUCCESS if result.success else EXIT_FAILED_RUN


def _parse_combos(raw) -> list[tuple[int, int]]:
    combos = []
    for item in raw:
        pair = tuple(int(v) for v in item)
        if len(pair) != 2:
            raise ConfigError(f"combo must be a pair (I, R), got {item!r}")
        combos.append(pair)
    return combos


def _sweep_tables(cfg: dict, workers: int):
    rules = [int(r) for r in cfg.get("rules", DEFAULT_RULES)]
    if "rule" in cfg:
        rules = [int(cfg["rule"])]
    combos = _parse_combos(cfg.get("combos", DEFAULT_COMBOS))
    if "iterations" in cfg or "mappings" in cfg:
        combos = [(int(cfg.get("iterations", 8)), int(cfg.get("mappings", 8)))]
    if not rules or not combos:
        raise ConfigError("sweep needs at least one rule and one (I, R) combo")
    n_runs = int(cfg.get("runs", 100))
    layered = bool(cfg.get("layered"))
    diffuse = int(cfg.get("diffuse", 40))
    distractor = int(cfg.get("distractor", 200))
    seed = int(cfg.get("seed", 0))

    layer1 = {}
    layer2 = {}
    for rule in rules:
        for iterations, mappings in combos:
            print(
                f"sweep: rule {rule} (I,R)=({iterations},{mappings}) "
                f"x{n_runs} runs",
                file=sys.stderr,
            )
            config = build_config(
                rule=rule,
                iterations=iterations,
                mappings=mappings,
                diffuse=diffuse,
                distractor=distractor,
                seed=seed,
                layer2_rule=rule if layered else None,
            )
            batch = run_batch(config, n_runs, workers=workers)
            layer1[(rule, iterations, mappings)] = batch.layer1_rate
            if layered:
                layer2[(rule, iterations, mappings)] = batch.layer2_rate

    meta = {"ld": diffuse, "td": distractor, "runs": n_runs, "seed": seed}
    tables = [(1, rules, combos, layer1)]
    if layered:
        tables.append((2, rules, combos, layer2))
    return meta, tables


def _format_sweep_csv(meta: dict, tables, timestamp: bool) -> str:
    buf = io.StringIO()
    for key, value in meta.items():
        buf.write(f"# {key}={value}\n")
    if timestamp:
        stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        buf.write(f"# timestamp={stamp}\n")
    for i, (layer, rules, combos, cells) in enumerate(tables):
        if i:
            buf.write("\n")
        buf.write(f"# layer={layer}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["rule"] + [f"({i_},{r_})" for i_, r_ in combos])
        for rule in rules:
            writer.writerow(
                [rule] + [f"{cells[(rule, i_, r_)]:.1f}" for i_, r_ in combos]
            )
    return buf.getvalue()


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _merged(args, {})
    workers = int(cfg.get("workers") or os.cpu_count() or 1)
    meta, tables = _sweep_tables(cfg, workers)
    text = _format_sweep_csv(meta, tables, timestamp=not args.no_timestamp)
    out = cfg.get("out")
    if out:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {out}: {exc}", file=sys.stderr)
            return EXIT_FAILED_RUN
        print(f"wrote {out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return EXIT_SUCCESS


def cmd_render(args: argparse.Namespace) -> int:
    config = _run_config_from(_merged(args, {}))
    grids = space_time_grids(config, pattern_id=args.pattern)
    base = args.out or "spacetime"
    for layer, grid in enumerate(grids, start=1):
        pgm_path = f"{base}_layer{layer}.pgm"
        txt_path = f"{base}_layer{layer}.txt"
        try:
            write_pgm(pgm_path, grid)
            with open(txt_path, "w", encoding="utf-8") as fh:
                fh.write(grid_to_ascii(grid) + "\n")
        except OSError as exc:
            print(f"error: cannot write diagram: {exc}", file=sys.stderr)
            return EXIT_FAILED_RUN
        height, width = grid.shape
        print(f"layer {layer}: {width}x{height} -> {pgm_path}, {txt_path}")
    return EXIT_SUCCESS


def cmd_rule_info(args: argparse.Namespace) -> int:
    rule = make_rule(args.number)
    mirror = mirror_rule(rule)
    comp = complement_rule(rule)
    both = mirror_rule(comp)
    print(f"rule {rule.number}")
    print(f"lambda: {lambda_param(rule)}")
    print(f"mirror equivalent: {mirror.number}")
    print(f"complement equivalent: {comp.number}")
    print(f"mirror+complement equivalent: {both.number}")
    print("transitions:")
    for n in range(7, -1, -1):
        print(f"  {n:03b} -> {rule.table[n]}")
    return EXIT_SUCCESS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reca",
        description="Cellular-automata reservoir computing on the 5-bit memory task.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--rule", type=int, help="CA rule number (0-255)")
        p.add_argument("--iterations", type=int, help="CA iterations per step (I)")
        p.add_argument("--mappings", type=int, help="number of random mappings (R)")
        p.add_argument("--diffuse", type=int, help="diffuse length (L_d)")
        p.add_argument("--distractor", type=int, help="distractor period (T_d)")
        p.add_argument("--seed", type=int, help="base seed")
        p.add_argument("--layered", action="store_true",
                       help="stack a second reservoir")
        p.add_argument("--out", help="output path")

    p_run = sub.add_parser("run", help="one train-and-test run")
    add_common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="rules x (I,R) grid, CSV output")
    add_common(p_sweep)
    p_sweep.add_argument("--runs", type=int, help="runs per cell")
    p_sweep.add_argument("--workers", type=int, help="parallel worker count")
    p_sweep.add_argument("--no-timestamp", action="store_true",
                         help="omit the timestamp metadata line")
    p_sweep.set_defaults(func=cmd_sweep)

    p_render = sub.add_parser("render", help="space-time diagrams (PGM + ASCII)")
    add_common(p_render)
    p_render.add_argument("--pattern", type=int, default=0,
                          help="task pattern to visualize (0-31)")
    p_render.set_defaults(func=cmd_render)

    p_info = sub.add_parser("rule-info", help="lambda, equivalents, transitions")
    p_info.add_argument("number", type=int, help="CA rule number (0-255)")
    p_info.set_defaults(func=cmd_rule_info)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
