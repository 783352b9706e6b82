"""
lcycles/commands/search.py
Graph-level commands

Commands:
- enumerate - canonical cycles of length <= k, one per line, plus a count
- trace - rendered execution log of the lock-based search
- compare - differential check against the brute-force oracle
"""

import logging
import sys
from typing import Optional, TextIO

from ..core.graph import Graph, format_cycle, induced_subgraph
from ..core.parsers import parse_graph
from ..core.scc import component_of
from ..models.cli_config import CliConfig
from ..models.records import (
    CycleRecord,
    DiscrepancyRecord,
    MatchRecord,
    SummaryRecord,
    TraceEventRecord,
)
from ..services.harness import diff_test
from ..services.locked_dfs import GsMode, canonical, lc_cycles, search_from
from ..services.oracle import count_cycles
from ..services.trace import (
    ALL_KINDS,
    LISTING_KINDS,
    LoggingTraceSink,
    TeeSink,
    TraceRecorder,
    TraceSink,
    count_by_kind,
    render,
)

logger = logging.getLogger(__name__)


def debug_sink() -> Optional[TraceSink]:
    """Per-event DEBUG logging, only when someone listens"""
    sink = LoggingTraceSink()
    return sink if sink.target.isEnabledFor(logging.DEBUG) else None


def load_graph(config: CliConfig, stdin: TextIO) -> Graph:
    """Read the graph named by the config ('-' is standard input)"""
    if config.graph_text is not None:
        text = config.graph_text
    elif config.input_path == "-":
        text = stdin.read()
    else:
        with open(config.input_path, encoding="utf-8") as handle:
            text = handle.read()
    return parse_graph(text, config.input_format)


class SearchCommands:
    """enumerate / trace / compare"""

    def __init__(self, config: CliConfig, out: TextIO = sys.stdout):
        self.config = config
        self.out = out

    def _write(self, line: str) -> None:
        self.out.write(line + "\n")

    def enumerate(self, graph: Graph) -> int:
        """Print canonical cycles in emission order and a trailing count"""
        cfg = self.config
        cycles, counters = lc_cycles(graph, cfg.k, cfg.policy, cfg.scc_mode, sink=debug_sink())
        canon = [canonical(c, graph) for c in cycles]

        if cfg.output_format == "structured":
            for cycle in canon:
                self._write(CycleRecord.from_cycle(cycle).model_dump_json())
            summary = SummaryRecord.from_run(len(canon), cfg.k, cfg.policy.value, counters)
            self._write(summary.model_dump_json())
        else:
            for cycle in canon:
                self._write(str(cycle))
            self._write(f"{len(canon)} cycle{'' if len(canon) == 1 else 's'}")

        logger.info(f"Enumerated {len(canon)} cycles (k={cfg.k}, {cfg.policy.value})")
        return 0

    def trace(self, graph: Graph) -> int:
        """Print the event log of a full run, or of one search with --start"""
        cfg = self.config
        recorder = TraceRecorder(ALL_KINDS if cfg.show_blocked else LISTING_KINDS)
        logging_sink = debug_sink()
        sink = recorder if logging_sink is None else TeeSink(recorder, logging_sink)

        if cfg.start is not None:
            gs = graph
            if cfg.scc_mode is GsMode.SCC:
                gs = induced_subgraph(graph, component_of(graph, cfg.start))
            search_from(gs, cfg.start, cfg.k, cfg.policy, sink=sink)
        else:
            lc_cycles(graph, cfg.k, cfg.policy, cfg.scc_mode, sink=sink)
        logger.info(f"Recorded {len(recorder.events)} events: {count_by_kind(recorder.events)}")

        if cfg.output_format == "structured":
            for event in recorder.events:
                self._write(TraceEventRecord.from_event(event).model_dump_json())
        else:
            self.out.write(render(recorder.events))
        return 0

    def compare(self, graph: Graph) -> int:
        """Report missing/spurious cycles; exit 1 iff a discrepancy exists"""
        cfg = self.config
        discrepancy = diff_test(graph, cfg.k, cfg.policy, cfg.scc_mode)

        if discrepancy is None:
            total = count_cycles(graph, cfg.k)
            if cfg.output_format == "structured":
                record = MatchRecord(policy=cfg.policy.value, k=cfg.k, cycles=total)
                self._write(record.model_dump_json())
            else:
                self._write(
                    f"no discrepancy: policy={cfg.policy.value} k={cfg.k} "
                    f"matches the oracle ({total} cycles)"
                )
            return 0

        logger.info(
            f"Discrepancy under {cfg.policy.value}: {len(discrepancy.missing)} missing, "
            f"{len(discrepancy.spurious)} spurious"
        )
        if cfg.output_format == "structured":
            self._write(DiscrepancyRecord.from_discrepancy(discrepancy).model_dump_json())
        else:
            self._write(f"discrepancy: policy={cfg.policy.value} k={cfg.k}")
            self._write(f"missing ({len(discrepancy.missing)}):")
            for nodes in discrepancy.missing:
                self._write(f"  {format_cycle(nodes)}")
            self._write(f"spurious ({len(discrepancy.spurious)}):")
            for nodes in discrepancy.spurious:
                self._write(f"  {format_cycle(nodes)}")
        return 1
