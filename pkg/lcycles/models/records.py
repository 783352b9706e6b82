"""
lcycles/models/records.py
Line-delimited record schema for structured output

Every record is one JSON object per line with a "type" discriminator.
Graphs are adjacency-list lines, cycles are label lists, extended integers
are numbers or the string "inf".
"""

import math
from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field

from ..core.graph import Cycle
from ..core.parsers import to_adjlist
from ..services.harness import ComplexityReport, Discrepancy, ProbeRun
from ..services.locked_dfs import RunCounters
from ..services.trace import TraceEvent

ExtendedValue = Union[int, Literal["inf"]]


def extended(value: float) -> ExtendedValue:
    return "inf" if value == math.inf else int(value)


class CycleRecord(BaseModel):
    type: Literal["cycle"] = "cycle"
    nodes: List[str]
    length: int

    @classmethod
    def from_cycle(cls, cycle: Cycle) -> "CycleRecord":
        return cls(nodes=list(cycle.nodes), length=cycle.length)


class SummaryRecord(BaseModel):
    type: Literal["summary"] = "summary"
    count: int
    k: int
    policy: str
    counters: Dict[str, int]

    @classmethod
    def from_run(cls, count: int, k: int, policy: str, counters: RunCounters) -> "SummaryRecord":
        return cls(count=count, k=k, policy=policy, counters=counters.as_dict())


class TraceEventRecord(BaseModel):
    type: Literal["event"] = "event"
    step: int
    kind: str
    stack: List[str]
    node: Optional[str] = None
    values: Dict[str, ExtendedValue] = Field(default_factory=dict)
    cycle: Optional[List[str]] = None
    peer: Optional[str] = None

    @classmethod
    def from_event(cls, event: TraceEvent) -> "TraceEventRecord":
        return cls(
            step=event.step,
            kind=event.kind.value,
            stack=list(event.stack),
            node=event.node,
            values={name: extended(x) for name, x in event.values.items()},
            cycle=list(event.cycle) if event.cycle is not None else None,
            peer=event.peer,
        )


class DiscrepancyRecord(BaseModel):
    type: Literal["discrepancy"] = "discrepancy"
    policy: str
    k: int
    graph: List[str]
    missing: List[List[str]]
    spurious: List[List[str]]
    degree_signature: str
    instance: Optional[Dict[str, int]] = None

    @classmethod
    def from_discrepancy(cls, d: Discrepancy) -> "DiscrepancyRecord":
        instance = None
        if d.instance is not None:
            n, mask, variant = d.instance
            instance = {"nodes": n, "edge_mask": mask, "variant": variant}
        return cls(
            policy=d.policy.value,
            k=d.k,
            graph=to_adjlist(d.graph).splitlines(),
            missing=[list(c) for c in d.missing],
            spurious=[list(c) for c in d.spurious],
            degree_signature=d.degree_signature,
            instance=instance,
        )


class MatchRecord(BaseModel):
    type: Literal["match"] = "match"
    policy: str
    k: int
    cycles: int


class ProbeRunRecord(BaseModel):
    type: Literal["probe_run"] = "probe_run"
    n: int
    e: int
    k: int
    c: int
    total_ops: int
    ratio: float
    max_lock_decreases: int

    @classmethod
    def from_run(cls, run: ProbeRun) -> "ProbeRunRecord":
        return cls(n=run.n, e=run.e, k=run.k, c=run.c, total_ops=run.total_ops,
                   ratio=run.ratio, max_lock_decreases=run.max_lock_decreases)


class ComplexityReportRecord(BaseModel):
    type: Literal["complexity_report"] = "complexity_report"
    policy: str
    runs: int
    fitted_constant: float
    median_ratio: float
    spread: Optional[float]
    lock_budget_respected: bool

    @classmethod
    def from_report(cls, report: ComplexityReport, budget_ok: bool) -> "ComplexityReportRecord":
        spread = report.spread
        return cls(
            policy=report.policy.value,
            runs=len(report.runs),
            fitted_constant=report.fitted_constant,
            median_ratio=report.median_ratio,
            spread=None if math.isinf(spread) else spread,
            lock_budget_respected=budget_ok,
        )
