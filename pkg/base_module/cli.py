import argparse
import json
import logging
import os
import sys
from typing import List, Optional, TextIO

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from bitgraph_module.bitgraph import BitGraphError, BitMultigraph, canonicalize
from bitgraph_module.export import graph_from_json, graph_to_dot, graph_to_json
from bitgraph_module.fold import ReconstructionError, crossword_multigraph, reconstruct_grid
from conditions_module.conditions import check_all, render_report
from config_module.logging_config import setup_logging
from config_module.settings import Settings, SettingsError, load_settings, settings_overrides
from enumeration_module.experiments import ExperimentKind, run_experiment
from enumeration_module.masks import LimitExceededError
from grid_module.grid import Coord, GridError, answers, grid_to_json, load_grid, serialize_grid, validate
from network_module.licn import (
    build_licn,
    fundamental_graph,
    fundamental_to_document,
    fundamental_to_dot,
    licn_to_document,
    licn_to_dot,
)
from voiding_module.voiding import VoidingError, unvoided_graph, void_cells_traced, voided_from_grid


logger = logging.getLogger("crossgraph")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
# the graph pipeline broke on input that passed its checks
EXIT_INTERNAL = 3

STAGES = ("licn", "fundamental", "multigraph", "voided")

# commands whose output defaults to JSON
JSON_COMMANDS = {"count", "experiment", "canonical"}

# bare --sample falls back to sampling.sample_size
CONFIGURED_SAMPLE = -1


class UsageError(ValueError):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def _load_graph(path: str) -> BitMultigraph:
    try:
        return graph_from_json(_read(path))
    except (BitGraphError, ValueError) as e:
        raise UsageError(f"Bad graph document {path}: {e}") from e


def _parse_cell(text: str) -> Coord:
    try:
        i, j = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"Cell must look like i,j (got {text!r})")
    return Coord(i, j)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"), default=None)
    common.add_argument("--config", default=None, help="YAML settings file")
    common.add_argument("--log-level", default=None)

    parser = argparse.ArgumentParser(prog="crossgraph", description="Crossword grids as bit multigraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the five structure rules")
    p.add_argument("input", help="grid text or JSON file, '-' for stdin")

    p = sub.add_parser("answers", parents=[common], help="list Across and Down answers")
    p.add_argument("input")

    p = sub.add_parser("graph", parents=[common], help="build a graph representation of a grid")
    p.add_argument("input")
    p.add_argument("--stage", choices=STAGES, default="multigraph")

    p = sub.add_parser("void", parents=[common], help="void fundamental-region cells of a graph")
    p.add_argument("input", nargs="?", default=None, help="graph JSON; omit with --n for the template")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--cell", type=_parse_cell, action="append", default=[], help="i,j (repeatable)")

    p = sub.add_parser("reconstruct", parents=[common], help="grid from graph JSON")
    p.add_argument("input")

    p = sub.add_parser("check", parents=[common], help="necessary conditions on a bit multigraph")
    p.add_argument("input")
    p.add_argument("--from-grid", action="store_true", help="input is a grid; check its voided graph")

    p = sub.add_parser("canonical", parents=[common], help="canonical reindexing of graph JSON")
    p.add_argument("input")

    for name in ("count", "experiment"):
        p = sub.add_parser(name, parents=[common])
        if name == "experiment":
            p.add_argument("kind", choices=[k.value for k in ExperimentKind if k is not ExperimentKind.COUNT])
        p.add_argument("--n", type=int, required=True)
        p.add_argument(
            "--sample",
            type=int,
            nargs="?",
            const=CONFIGURED_SAMPLE,
            default=None,
            help="sample this many masks; bare --sample uses the configured sample_size",
        )
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--limit", type=int, default=None)
        p.add_argument("--jobs", type=int, default=None)
        p.add_argument("--density", type=float, default=None)

    return parser


# --- commands ---


def _graph_out(g: BitMultigraph, fmt: str) -> str:
    if fmt == "json":
        return graph_to_json(g)
    if fmt == "dot":
        return graph_to_dot(g)
    return g.describe()


def cmd_validate(args, settings: Settings, out: TextIO) -> int:
    report = validate(load_grid(_read(args.input)))
    if args.format == "json":
        print(report.model_dump_json(), file=out)
    else:
        for rule, verdict in report.verdicts.items():
            line = f"{rule.value:<20} {'pass' if verdict.passed else 'fail'}"
            if not verdict.passed:
                line += f" {verdict.detail or verdict.witness}"
            print(line, file=out)
    return EXIT_OK if report.valid else EXIT_FAILED


def cmd_answers(args, settings: Settings, out: TextIO) -> int:
    answer_list = answers(load_grid(_read(args.input)))
    if args.format == "json":
        print(json.dumps([a.model_dump(mode="json") for a in answer_list]), file=out)
        return EXIT_OK
    for a in answer_list:
        cells = " ".join(f"({c.i},{c.j})" for c in a.coords)
        print(f"{a.orientation.value} {a.line_number}: {cells}", file=out)
    return EXIT_OK


def cmd_graph(args, settings: Settings, out: TextIO) -> int:
    grid = load_grid(_read(args.input))
    if args.stage == "voided":
        print(_graph_out(voided_from_grid(grid), args.format), file=out)
        return EXIT_OK

    licn = build_licn(grid)
    if args.stage == "licn":
        if args.format == "dot":
            print(licn_to_dot(licn), file=out)
        else:
            doc = licn_to_document(licn)
            print(json.dumps(doc) if args.format == "json" else _document_text(doc), file=out)
        return EXIT_OK

    fundamental = fundamental_graph(licn)
    if args.stage == "fundamental":
        if args.format == "dot":
            print(fundamental_to_dot(fundamental), file=out)
        else:
            doc = fundamental_to_document(fundamental)
            print(json.dumps(doc) if args.format == "json" else _document_text(doc), file=out)
        return EXIT_OK

    print(_graph_out(crossword_multigraph(fundamental), args.format), file=out)
    return EXIT_OK


def _document_text(doc: dict) -> str:
    lines = ["Across: " + " ".join(doc["across"]), "Down: " + " ".join(doc["down"])]
    for e in doc["edges"]:
        lines.append(f"({e['across']},{e['down']},{e['label']}) cell=({e['cell'][0]},{e['cell'][1]})")
    return "\n".join(lines)


def cmd_void(args, settings: Settings, out: TextIO) -> int:
    if args.n is not None:
        g = unvoided_graph(args.n)
    elif args.input is not None:
        g = _load_graph(args.input)
    else:
        raise UsageError("void needs a graph input or --n")

    try:
        voided, steps = void_cells_traced(g, args.cell)
    except VoidingError as e:
        raise UsageError(f"Cannot void the given cells: {e}") from e
    if args.format == "json":
        doc = {"graph": json.loads(graph_to_json(voided)), "steps": [s.render() for s in steps]}
        print(json.dumps(doc), file=out)
    elif args.format == "dot":
        for s in steps:
            logger.info("%s", s.render())
        print(graph_to_dot(voided), file=out)
    else:
        for s in steps:
            print(s.render(), file=out)
        print(voided.describe(), file=out)
    return EXIT_OK


def cmd_reconstruct(args, settings: Settings, out: TextIO) -> int:
    try:
        grid = reconstruct_grid(_load_graph(args.input))
    except ReconstructionError as e:
        raise UsageError(f"Graph does not describe a grid: {e}") from e
    print(grid_to_json(grid) if args.format == "json" else serialize_grid(grid), file=out)
    return EXIT_OK


def cmd_check(args, settings: Settings, out: TextIO) -> int:
    if args.from_grid:
        grid = load_grid(_read(args.input))
        report = check_all(voided_from_grid(grid), grid.n)
    else:
        report = check_all(_load_graph(args.input))
    if args.format == "json":
        print(json.dumps({"n": report.n, "passed": report.passed, "conditions": report.to_summary(),
                          "sweep_gaps": report.sweep_gaps}), file=out)
    else:
        print(render_report(report), file=out)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_canonical(args, settings: Settings, out: TextIO) -> int:
    g = canonicalize(_load_graph(args.input))
    print(_graph_out(g, args.format), file=out)
    return EXIT_OK


def cmd_experiment(args, settings: Settings, out: TextIO) -> int:
    kind = ExperimentKind.COUNT if args.command == "count" else ExperimentKind(args.kind)
    sampling = settings.sampling
    sample = sampling.sample_size if args.sample == CONFIGURED_SAMPLE else args.sample
    result = run_experiment(
        kind,
        args.n,
        sample=sample,
        seed=sampling.seed if args.seed is None else args.seed,
        limit=settings.enumeration.exhaustive_limit,
        jobs=settings.enumeration.jobs,
        chunk_size=settings.enumeration.chunk_size,
        density=sampling.void_density,
        max_attempts_factor=sampling.max_attempts_factor,
    )
    if args.format == "text":
        print(
            f"{result.kind.value} n={result.n} examined={result.total_examined} valid={result.valid_grids} "
            f"pass={result.condition_pass} valid_not_pass={len(result.valid_not_pass)} "
            f"pass_not_valid={len(result.pass_not_valid)} equivalence_failures={len(result.equivalence_failures)} "
            f"roundtrip_failures={len(result.roundtrip_failures)} pipeline_errors={len(result.pipeline_errors)}",
            file=out,
        )
    else:
        print(result.model_dump_json(), file=out)
    if result.valid_not_pass or result.equivalence_failures or result.roundtrip_failures or result.pipeline_errors:
        return EXIT_FAILED
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "answers": cmd_answers,
    "graph": cmd_graph,
    "void": cmd_void,
    "reconstruct": cmd_reconstruct,
    "check": cmd_check,
    "canonical": cmd_canonical,
    "count": cmd_experiment,
    "experiment": cmd_experiment,
}


def _settings_for(args) -> Settings:
    settings = load_settings(args.config)
    overrides = {"logging": {"level": args.log_level}}
    if args.command in ("count", "experiment"):
        overrides["enumeration"] = {"exhaustive_limit": args.limit, "jobs": args.jobs}
        overrides["sampling"] = {"void_density": args.density}
    return settings_overrides(settings, overrides)


def run(argv: Optional[List[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    if args.format is None:
        args.format = "json" if args.command in JSON_COMMANDS else "text"

    try:
        settings = _settings_for(args)
        setup_logging(settings.logging.level)
        return COMMANDS[args.command](args, settings, out)
    except (OSError, GridError, LimitExceededError, SettingsError, UsageError) as e:
        logger.error("%s", e)
        return EXIT_USAGE
    except (BitGraphError, VoidingError):
        logger.exception("%s failed on accepted input", args.command)
        return EXIT_INTERNAL
    except ValueError as e:
        # pydantic validation errors on JSON input land here
        logger.error("Invalid input: %s", e)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
