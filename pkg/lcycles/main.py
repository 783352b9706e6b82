"""
lcycles/main.py
lcycles - Main Entry Point

Command-line front end for bounded-length simple cycle enumeration.
"""

import argparse
import logging
import sys
from typing import List, Optional, TextIO

from pydantic import ValidationError

from . import __version__
from .commands.experiments import ExperimentCommands
from .commands.search import SearchCommands, load_graph
from .core.errors import ArgumentError, GraphFormatError
from .models.cli_config import CliConfig
from .util.config_loader import Config, load_config, normalize_log_level

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

logger = logging.getLogger(__name__)


def setup_logging(level: str, log_file: Optional[str] = None) -> None:
    """stderr handler (stdout carries results) plus an optional log file"""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers)
    logging.getLogger("lcycles").setLevel(level)


def _add_search_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--policy", choices=["original", "revised"], help="lock relaxation policy")
    parser.add_argument("--scc-mode", dest="scc_mode", choices=["scc", "whole"],
                        help="search each start node in its SCC or in the whole remaining graph")
    parser.add_argument("--format", dest="output_format", choices=["text", "structured"],
                        help="plain text or JSON lines")


def _add_graph_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input_path", nargs="?", metavar="INPUT",
                        help="graph file ('-' reads standard input)")
    parser.add_argument("--graph", dest="graph_text", metavar="TEXT",
                        help="inline graph text; a literal \\n separates lines")
    parser.add_argument("--input-format", dest="input_format",
                        choices=["auto", "adjlist", "edgelist"])
    parser.add_argument("-k", type=int, help="maximum cycle length")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcycles",
        description="Enumerate simple cycles of length at most k in a directed graph",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", dest="log_level", help="DEBUG, INFO, WARNING, ERROR or CRITICAL")
    parser.add_argument("--env-file", dest="env_file", help="dotenv file with LCYCLES_* settings")

    sub = parser.add_subparsers(dest="command", required=True)

    enumerate_cmd = sub.add_parser("enumerate", help="list canonical cycles of length <= k")
    _add_graph_options(enumerate_cmd)
    _add_search_options(enumerate_cmd)

    trace_cmd = sub.add_parser("trace", help="print the execution log of the search")
    _add_graph_options(trace_cmd)
    _add_search_options(trace_cmd)
    trace_cmd.add_argument("--start", help="trace a single search from this node")
    trace_cmd.add_argument("--show-blocked", dest="show_blocked", action="store_true",
                           help="include successors rejected by their lock")

    compare_cmd = sub.add_parser("compare", help="diff the search against the brute-force oracle")
    _add_graph_options(compare_cmd)
    _add_search_options(compare_cmd)

    mine_cmd = sub.add_parser("mine", help="search small strongly connected digraphs for misses")
    mine_cmd.add_argument("--k-values", dest="k_values", type=int, nargs="+")
    mine_cmd.add_argument("--max-nodes", dest="max_nodes", type=int)
    mine_cmd.add_argument("--budget", type=int, help="stop after this many discrepancies")
    mine_cmd.add_argument("--order-variants", dest="order_variants", type=int,
                          help="extra seeded successor orders per instance")
    mine_cmd.add_argument("--seed", type=int)
    mine_cmd.add_argument("--workers", type=int)
    _add_search_options(mine_cmd)

    probe_cmd = sub.add_parser("probe", help="measure operations against (c+1)*k*(n+e)")
    _add_graph_options(probe_cmd)
    _add_search_options(probe_cmd)
    probe_cmd.add_argument("--n", type=int, help="nodes per random graph")
    probe_cmd.add_argument("--p", type=float, help="edge probability (default 2/n)")
    probe_cmd.add_argument("--count", type=int, help="number of random graphs")
    probe_cmd.add_argument("--seed", type=int)

    return parser


def build_cli_config(args: argparse.Namespace, settings: Config) -> CliConfig:
    """Flags over settings; unset flags take the configured default"""

    def pick(name: str, default):
        value = getattr(args, name, None)
        return default if value is None else value

    graph_text = getattr(args, "graph_text", None)
    if graph_text is not None:
        graph_text = graph_text.replace("\\n", "\n")

    policy = pick("policy", settings.policy)
    if args.command == "mine" and args.policy is None:
        # The miner hunts for misses of the unrevised rule
        policy = "original"

    return CliConfig(
        command=args.command,
        input_path=getattr(args, "input_path", None),
        graph_text=graph_text,
        input_format=pick("input_format", settings.input_format),
        k=getattr(args, "k", None),
        k_values=getattr(args, "k_values", None) or [],
        policy=policy,
        scc_mode=pick("scc_mode", settings.scc_mode),
        output_format=pick("output_format", settings.output_format),
        start=getattr(args, "start", None),
        show_blocked=getattr(args, "show_blocked", False),
        seed=pick("seed", settings.seed),
        n=getattr(args, "n", None),
        p=getattr(args, "p", None),
        count=pick("count", settings.probe_count),
        max_nodes=pick("max_nodes", settings.miner_max_nodes),
        budget=pick("budget", settings.miner_budget),
        order_variants=pick("order_variants", settings.miner_order_variants),
        workers=pick("workers", settings.workers),
    )


def run_command(config: CliConfig, stdin: TextIO, stdout: TextIO) -> int:
    """Execute one validated command; returns the exit status"""
    logger.info(f"Running {config.command} (policy={config.policy.value})")

    if config.command == "mine":
        return ExperimentCommands(config, stdout).mine()
    if config.command == "probe":
        graph = load_graph(config, stdin) if config.has_graph_input else None
        return ExperimentCommands(config, stdout).probe(graph)

    graph = load_graph(config, stdin)
    commands = SearchCommands(config, stdout)
    if config.command == "enumerate":
        return commands.enumerate(graph)
    if config.command == "trace":
        return commands.trace(graph)
    return commands.compare(graph)


def _validation_message(error: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(part) for part in e['loc']) + ': ' if e['loc'] else ''}{e['msg']}"
        for e in error.errors()
    )


def main(
    argv: Optional[List[str]] = None,
    stdout: Optional[TextIO] = None,
    stdin: Optional[TextIO] = None,
) -> int:
    """
    Parse arguments, run the command and map failures to exit statuses.

    Returns:
        0 on success, 1 when compare finds a discrepancy, 2 on bad input
    """
    if stdout is None:
        stdout = sys.stdout
    if stdin is None:
        stdin = sys.stdin
    args = build_parser().parse_args(argv)

    try:
        settings = load_config(args.env_file)
        if args.log_level:
            settings.log_level = normalize_log_level(args.log_level)
        setup_logging(settings.log_level, settings.log_file)
        config = build_cli_config(args, settings)
        return run_command(config, stdin, stdout)
    except (GraphFormatError, ArgumentError) as e:
        print(f"error: {e}", file=sys.stderr)
    except ValidationError as e:
        print(f"error: {_validation_message(e)}", file=sys.stderr)
    except ValueError as e:
        # invalid --log-level
        print(f"error: {e}", file=sys.stderr)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
    except Exception as e:
        logger.error(f"Unexpected failure: {e}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
    return 2


def run():
    """Run the CLI"""
    sys.exit(main())


if __name__ == "__main__":
    run()
