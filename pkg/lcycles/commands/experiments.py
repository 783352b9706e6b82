"""
lcycles/commands/experiments.py
Experiment commands

Commands:
- mine - exhaustive search of small strongly connected digraphs for discrepancies
- probe - operation counts against the (c+1)*k*(n+e) bound
"""

import logging
import sys
from typing import List, Optional, TextIO

from ..core.graph import Graph, format_cycle
from ..core.parsers import to_adjlist
from ..models.cli_config import CliConfig
from ..models.records import ComplexityReportRecord, DiscrepancyRecord, ProbeRunRecord
from ..services.harness import (
    ComplexityReport,
    Discrepancy,
    complexity_probe,
    lock_budget_respected,
    mine_counterexamples,
    random_digraph,
    random_sparse_family,
)

logger = logging.getLogger(__name__)


class ExperimentCommands:
    """mine / probe"""

    def __init__(self, config: CliConfig, out: TextIO = sys.stdout):
        self.config = config
        self.out = out
        self._mined = 0

    def _write(self, line: str) -> None:
        self.out.write(line + "\n")

    # ---- mine -------------------------------------------------------------------

    def _print_discrepancy(self, d: Discrepancy) -> None:
        self._mined += 1
        if self.config.output_format == "structured":
            self._write(DiscrepancyRecord.from_discrepancy(d).model_dump_json())
            self.out.flush()
            return

        header = f"discrepancy {self._mined}: policy={d.policy.value} k={d.k}"
        if d.instance is not None:
            n, mask, variant = d.instance
            header += f" nodes={n} mask={mask} variant={variant}"
        self._write(f"{header} signature={d.degree_signature}")
        for line in to_adjlist(d.graph).splitlines():
            self._write(f"  {line}")
        self._write("  missing: " + " ".join(format_cycle(c) for c in d.missing))
        self._write("  spurious: " + " ".join(format_cycle(c) for c in d.spurious))
        self.out.flush()

    def mine(self) -> int:
        """Print each discrepancy as the miner accepts it, then the total"""
        cfg = self.config
        self._mined = 0
        found = mine_counterexamples(
            max_nodes=cfg.max_nodes,
            k_values=cfg.k_values,
            budget=cfg.budget,
            order_variants=cfg.order_variants,
            seed=cfg.seed,
            workers=cfg.workers,
            policy=cfg.policy,
            on_found=self._print_discrepancy,
        )
        if cfg.output_format == "text":
            self._write(f"{len(found)} discrepanc{'y' if len(found) == 1 else 'ies'}")
        return 0

    # ---- probe ------------------------------------------------------------------

    def _family(self) -> List[Graph]:
        cfg = self.config
        if cfg.p is None:
            return random_sparse_family(cfg.n, cfg.count, cfg.seed)
        return [random_digraph(cfg.n, cfg.p, cfg.seed + i) for i in range(cfg.count)]

    def probe(self, graph: Optional[Graph] = None) -> int:
        """Probe one input graph, or a seeded random family"""
        cfg = self.config
        graphs = [graph] if graph is not None else self._family()
        report = complexity_probe(graphs, cfg.k, cfg.policy, cfg.scc_mode)
        budget_ok = lock_budget_respected(report)

        if cfg.output_format == "structured":
            for run in report.runs:
                self._write(ProbeRunRecord.from_run(run).model_dump_json())
            self._write(ComplexityReportRecord.from_report(report, budget_ok).model_dump_json())
        else:
            self._print_report(report, budget_ok)
        return 0

    def _print_report(self, report: ComplexityReport, budget_ok: bool) -> None:
        spread = report.spread
        self._write(f"policy={report.policy.value} k={self.config.k} runs={len(report.runs)}")
        self._write(f"fitted_constant={report.fitted_constant:.6f}")
        self._write(f"median_ratio={report.median_ratio:.6f}")
        self._write(f"spread={'inf' if spread == float('inf') else f'{spread:.3f}'}")
        self._write(f"max_lock_decreases={max(run.max_lock_decreases for run in report.runs)}")
        self._write(f"lock_budget_respected={'yes' if budget_ok else 'no'}")
