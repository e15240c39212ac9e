"""Command-line front door: render, optimize, metrics, generate.

Exit codes: 0 success, 2 input parse error, 3 validation error,
4 exact-optimizer threshold exceeded, 5 I/O error.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import ordering, set_model
from .errors import (
    HoopvizError,
    InvalidSystemError,
    ParseError,
    ThresholdExceededError,
)
from .geometry import StyleConfig, layout_hoop, layout_linear
from .ordering import CYCLIC, LINEAR, Arrangement, segment_counts
from .render import render_svg
from .session import topology_for_kind
from .set_model import MAX_SETS, SetSystem

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_THRESHOLD = 4
EXIT_IO = 5


def generate_system(n_sets: int, n_zones: int, seed: int) -> SetSystem:
    """Random system: distinct non-empty zones covering every set, weights 1.

    Deterministic per seed. Zones are sampled uniformly without
    replacement from the non-empty subsets, resampling until every set is
    covered.
    """
    if not (1 <= n_sets <= MAX_SETS):
        raise ValueError(f"n_sets must be in 1..{MAX_SETS}")
    universe = (1 << n_sets) - 1
    if not (1 <= n_zones <= universe):
        raise ValueError(f"n_zones must be in 1..2^{n_sets}-1")
    rng = random.Random(seed)
    while True:
        masks = rng.sample(range(1, universe + 1), n_zones)
        covered = 0
        for mask in masks:
            covered |= mask
        if covered == universe:
            break
    names = tuple(chr(ord("A") + s) for s in range(n_sets))
    zones = tuple(
        tuple(s for s in range(n_sets) if mask & (1 << s)) for mask in masks
    )
    system = SetSystem(names, zones, (1,) * n_zones)
    return set_model.canonicalize(system)


def _load_system(path: str, input_format: str) -> SetSystem:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if input_format == "items":
        table = set_model.parse_items_text(text)
        system, _ = set_model.zones_from_memberships(table)
        return system
    return set_model.parse_zones_json(text)


def _prepared(
    system: SetSystem, kind: str, optimizer: str, seed: int
) -> tuple[SetSystem, Arrangement]:
    violations = set_model.validate(system)
    if violations:
        raise InvalidSystemError(violations)
    system = set_model.canonicalize(system)
    topology = topology_for_kind(kind)
    if optimizer == "none":
        arrangement = ordering.identity_arrangement(system, topology)
    elif optimizer == "heuristic":
        arrangement = ordering.optimize_heuristic(system, topology, seed)
    else:
        arrangement = ordering.optimize_exact(system, topology)
    return system, arrangement


def _style(args: argparse.Namespace) -> StyleConfig:
    if getattr(args, "canvas", None):
        return StyleConfig(canvas_size=float(args.canvas))
    return StyleConfig()


def _write_output(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_render(args: argparse.Namespace) -> int:
    system, arrangement = _prepared(
        _load_system(args.input, args.input_format), args.kind, args.optimizer, args.seed
    )
    style = _style(args)
    if args.kind == "hoop":
        geometry = layout_hoop(system, arrangement, style)
    else:
        geometry = layout_linear(system, arrangement, style)
    _write_output(args.output, render_svg(geometry))
    return EXIT_OK


def _cmd_optimize(args: argparse.Namespace) -> int:
    system, arrangement = _prepared(
        _load_system(args.input, args.input_format), args.kind, args.optimizer, args.seed
    )
    stats = segment_counts(system, arrangement)
    lines = [
        "zone_order\t" + ",".join(str(z) for z in arrangement.zone_order),
        "zones\t"
        + " ".join(
            "{" + ",".join(system.set_names[s] for s in system.zones[z]) + "}"
            for z in arrangement.zone_order
        ),
    ]
    for s, name in enumerate(system.set_names):
        lines.append(f"runs:{name}\t{stats.runs_per_set[s]}")
    lines.append(f"total\t{stats.total}")
    _write_output(args.output, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_metrics(args: argparse.Namespace) -> int:
    raw = _load_system(args.input, args.input_format)
    lines = ["kind\tmetric\tvalue"]
    for kind, topology in (("hoop", CYCLIC), ("linear", LINEAR)):
        system, arrangement = _prepared(raw, kind, args.optimizer, args.seed)
        stats = segment_counts(system, arrangement)
        style = _style(args)
        if kind == "hoop":
            bbox = layout_hoop(system, arrangement, style).bbox
        else:
            bbox = layout_linear(system, arrangement, style).bbox
        for s, name in enumerate(system.set_names):
            lines.append(f"{kind}\truns:{name}\t{stats.runs_per_set[s]}")
        lines.append(f"{kind}\ttotal\t{stats.total}")
        lines.append(f"{kind}\twidth\t{bbox.width:g}")
        lines.append(f"{kind}\theight\t{bbox.height:g}")
        lines.append(f"{kind}\taspect_ratio\t{bbox.aspect_ratio:g}")
    _write_output(args.output, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_generate(args: argparse.Namespace) -> int:
    try:
        system = generate_system(args.sets, args.zones, args.seed)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    _write_output(args.output, set_model.dumps_zones(system))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hoopviz", description="Hoop and Linear diagram toolkit"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_io(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", required=True, help="input data file")
        p.add_argument(
            "--input-format", choices=("items", "zones"), default="zones",
            help="items: 'id: label, ...' lines; zones: JSON document",
        )
        p.add_argument("--kind", choices=("hoop", "linear"), default="hoop")
        p.add_argument(
            "--optimizer", choices=("none", "heuristic", "exact"), default="heuristic"
        )
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", default=None, help="output path (default stdout)")
        p.add_argument("--canvas", type=float, default=None, help="hoop canvas size in px")

    p_render = sub.add_parser("render", help="write an SVG diagram")
    add_io(p_render)
    p_render.set_defaults(func=_cmd_render)

    p_opt = sub.add_parser("optimize", help="write the zone order and segment stats")
    add_io(p_opt)
    p_opt.set_defaults(func=_cmd_optimize)

    p_metrics = sub.add_parser(
        "metrics", help="segment and bounding-box metrics for both diagram kinds"
    )
    add_io(p_metrics)
    p_metrics.set_defaults(func=_cmd_metrics)

    p_gen = sub.add_parser("generate", help="write a random zones-format file")
    p_gen.add_argument("--sets", type=int, required=True)
    p_gen.add_argument("--zones", type=int, required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--output", default=None, help="output path (default stdout)")
    p_gen.set_defaults(func=_cmd_generate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidSystemError as exc:
        print(f"invalid system: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ThresholdExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_THRESHOLD
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    except HoopvizError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
