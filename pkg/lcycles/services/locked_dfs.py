"""
lcycles/services/locked_dfs.py
Lock-based bounded-length cycle search

Features:
- LC_CYCLES outer loop over start nodes with SCC-restricted subgraphs
- CYCLE_SEARCH recursion with numeric locks and blocked lists (Blists)
- RELAX_LOCKS under two policies:
    ORIGINAL - lock[u] <- k - blen + 1 (misses cycles, kept to reproduce that)
    REVISED  - lock[u] <- INFINITY (complete for every cycle of length <= k)
- Operation counters for checking the O((c+1)*k*(n+e)) bound
- Optional trace sink; tracing never changes results
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, NamedTuple, Optional

from ..core.errors import SearchInvariantError
from ..core.graph import Cycle, Graph, check_k, induced_subgraph, remove_node, validate_cycle
from ..core.scc import scc_indices
from .trace import EventKind, TraceSink

logger = logging.getLogger(__name__)

INFINITY = math.inf


class RelaxPolicy(str, Enum):
    """How RELAX_LOCKS raises a lock after a cycle is found"""

    ORIGINAL = "original"
    REVISED = "revised"


class GsMode(str, Enum):
    """Subgraph searched for each start node"""

    SCC = "scc"
    WHOLE = "whole"


@dataclass
class RunCounters:
    """Unit-cost operations charged by the complexity argument"""

    edge_visits: int = 0
    lock_writes: int = 0
    relax_calls: int = 0
    blist_adds: int = 0
    cycles_found: int = 0
    pushes: int = 0
    max_lock_decreases: int = 0

    @property
    def total_ops(self) -> int:
        return self.edge_visits + self.lock_writes + self.relax_calls + self.blist_adds

    def merge(self, other: "RunCounters") -> None:
        self.edge_visits += other.edge_visits
        self.lock_writes += other.lock_writes
        self.relax_calls += other.relax_calls
        self.blist_adds += other.blist_adds
        self.cycles_found += other.cycles_found
        self.pushes += other.pushes
        self.max_lock_decreases = max(self.max_lock_decreases, other.max_lock_decreases)

    def as_dict(self) -> Dict[str, int]:
        return {
            "edge_visits": self.edge_visits,
            "lock_writes": self.lock_writes,
            "relax_calls": self.relax_calls,
            "blist_adds": self.blist_adds,
            "cycles_found": self.cycles_found,
            "pushes": self.pushes,
            "max_lock_decreases": self.max_lock_decreases,
            "total_ops": self.total_ops,
        }


@dataclass
class SearchState:
    """Per-start mutable state of one CYCLE_SEARCH; single owner, single thread"""

    graph: Graph
    k: int
    policy: RelaxPolicy
    lock: List[float]
    # insertion-ordered sets, so relaxation order is reproducible
    blist: List[Dict[int, None]]
    stack: List[int] = field(default_factory=list)
    on_stack: List[bool] = field(default_factory=list)
    found_cycles: List[Cycle] = field(default_factory=list)
    counters: RunCounters = field(default_factory=RunCounters)
    # strictly decreasing lock writes per node since its last relaxation to INFINITY
    decreases: List[int] = field(default_factory=list)
    sink: Optional[TraceSink] = None

    @classmethod
    def fresh(cls, graph: Graph, k: int, policy: RelaxPolicy,
              sink: Optional[TraceSink] = None) -> "SearchState":
        n = len(graph)
        return cls(
            graph=graph,
            k=k,
            policy=RelaxPolicy(policy),
            lock=[INFINITY] * n,
            blist=[{} for _ in range(n)],
            on_stack=[False] * n,
            decreases=[0] * n,
            sink=sink,
        )

    def stack_labels(self) -> List[str]:
        return [self.graph.label(i) for i in self.stack]

    def write_lock(self, v: int, value: float) -> None:
        if value == INFINITY:
            self.decreases[v] = 0
        elif value < self.lock[v]:
            self.decreases[v] += 1
            if self.decreases[v] > self.counters.max_lock_decreases:
                self.counters.max_lock_decreases = self.decreases[v]
        self.lock[v] = value
        self.counters.lock_writes += 1


class SearchResult(NamedTuple):
    cycles: List[Cycle]
    counters: RunCounters


def _emit(state: SearchState, kind: EventKind, node: Optional[int], values, cycle=None, peer=None):
    g = state.graph
    state.sink.emit(
        kind,
        state.stack_labels(),
        g.label(node) if node is not None else None,
        values,
        cycle,
        g.label(peer) if peer is not None else None,
    )


def cycle_search(gs: Graph, v: int, k: int, flen: int, state: SearchState) -> float:
    """
    One CYCLE_SEARCH call; returns blen (INFINITY when no cycle was found below v).

    Recursion depth is bounded by k through the `flen + 1 < k` guard.
    """
    tracing = state.sink is not None
    counters = state.counters

    blen = INFINITY
    if tracing:
        _emit(state, EventKind.PUSH, v, {"k": k, "flen": flen, "lock_after": flen})
    state.write_lock(v, flen)
    state.stack.append(v)
    state.on_stack[v] = True
    counters.pushes += 1

    start = state.stack[0]
    for w in gs.successor_indices(v):
        counters.edge_visits += 1
        if w == start:
            cycle = Cycle(tuple(state.stack_labels()) + (gs.label(start),))
            _record_cycle(state, cycle)
            blen = 1
            if tracing:
                _emit(state, EventKind.CYCLE_FOUND, v, {"blen": 1}, cycle=cycle.nodes)
        elif flen + 1 < state.lock[w] and flen + 1 < k:
            blen = min(blen, 1 + cycle_search(gs, w, k, flen + 1, state))
            if tracing:
                _emit(state, EventKind.BLEN_UPDATE, v, {"blen": blen})
        elif tracing:
            _emit(state, EventKind.BLOCKED, w, {"k": k, "flen": flen, "lock": state.lock[w]})

    if blen < INFINITY:
        relax_locks(v, k, int(blen), state)
    else:
        for w in gs.successor_indices(v):
            counters.edge_visits += 1
            if v not in state.blist[w]:
                state.blist[w][v] = None
                counters.blist_adds += 1
                if tracing:
                    _emit(state, EventKind.BLIST_ADD, v, {}, peer=w)

    if tracing:
        _emit(state, EventKind.POP, v, {"flen": flen, "lock": state.lock[v], "blen": blen})
    state.stack.pop()
    state.on_stack[v] = False
    return blen


def _relax_one(u: int, k: int, blen: int, state: SearchState) -> bool:
    """Single RELAX_LOCKS body without the Blist recursion; True when the lock was raised"""
    tracing = state.sink is not None
    state.counters.relax_calls += 1
    before = state.lock[u]
    if tracing:
        _emit(state, EventKind.RELAX_CHECK, u, {"k": k, "blen": blen, "lock_before": before})

    if state.policy is RelaxPolicy.ORIGINAL:
        target = k - blen + 1
        if not before < target:
            return False
    else:
        if before == INFINITY:
            return False
        target = INFINITY

    state.write_lock(u, target)
    if tracing:
        _emit(state, EventKind.RELAX_WRITE, u,
              {"k": k, "blen": blen, "lock_before": before, "lock_after": target})
    return True


def relax_locks(u: int, k: int, blen: int, state: SearchState) -> None:
    """
    RELAX_LOCKS(u, k, blen) under the state's policy.

    ORIGINAL raises lock[u] to k - blen + 1 when lower; REVISED sets any finite
    lock to INFINITY (blen is passed along but unused). Either way a raised lock
    propagates to Blist entries not on the stack with blen + 1, in pre-order.
    """
    if not _relax_one(u, k, blen, state):
        return

    pending = [(iter(state.blist[u]), blen)]
    while pending:
        entries, level = pending[-1]
        w = next(entries, None)
        if w is None:
            pending.pop()
            continue
        if state.on_stack[w]:
            continue
        if _relax_one(w, k, level + 1, state):
            pending.append((iter(state.blist[w]), level + 1))


def _record_cycle(state: SearchState, cycle: Cycle) -> None:
    problem = validate_cycle(cycle, state.graph, state.k)
    if problem is None and cycle.nodes[0] != state.graph.label(state.stack[0]):
        problem = f"{cycle} does not start at the search origin"
    if problem is not None:
        raise SearchInvariantError(problem)
    state.found_cycles.append(cycle)
    state.counters.cycles_found += 1


def search_from(
    g: Graph,
    start: str,
    k: int,
    policy: RelaxPolicy,
    sink: Optional[TraceSink] = None,
) -> SearchResult:
    """Single CYCLE_SEARCH(g, start, k, 0) with fresh locks and Blists, then HALT"""
    check_k(k)
    state = SearchState.fresh(g, k, policy, sink)
    cycle_search(g, g.index(start), k, 0, state)
    if sink is not None:
        sink.emit(EventKind.HALT, [], None, {})
    return SearchResult(state.found_cycles, state.counters)


def lc_cycles(
    g: Graph,
    k: int,
    policy: RelaxPolicy,
    gs_mode: GsMode = GsMode.SCC,
    sink: Optional[TraceSink] = None,
) -> SearchResult:
    """
    LC_CYCLES: search every start node in graph order, then remove it.

    Locks and Blists are reset before every start node. With GsMode.SCC the
    search runs on the strongly connected component of the start node in the
    remaining graph; singleton components without a self-loop are skipped.

    Raises:
        ArgumentError: k < 1
    """
    check_k(k)
    policy = RelaxPolicy(policy)
    gs_mode = GsMode(gs_mode)

    cycles: List[Cycle] = []
    counters = RunCounters()
    working = g

    for label in g.nodes:
        gs = _subgraph_for(working, label, gs_mode)
        if gs is not None:
            state = SearchState.fresh(gs, k, policy, sink)
            cycle_search(gs, gs.index(label), k, 0, state)
            cycles.extend(state.found_cycles)
            counters.merge(state.counters)
            logger.debug(
                f"Start {label}: searched {len(gs)} nodes / {gs.edge_count} edges, "
                f"{len(state.found_cycles)} cycles"
            )
        working = remove_node(working, label)

    if sink is not None:
        sink.emit(EventKind.HALT, [], None, {})

    logger.debug(f"lc_cycles({policy.value}, k={k}) found {len(cycles)} cycles")
    return SearchResult(cycles, counters)


def _subgraph_for(working: Graph, label: str, gs_mode: GsMode) -> Optional[Graph]:
    """G^s for a start node, or None when no cycle can pass through it"""
    if gs_mode is GsMode.WHOLE:
        return working

    s = working.index(label)
    component = next(c for c in scc_indices(working) if s in c)
    if len(component) == 1 and not working.has_edge_index(s, s):
        return None
    return induced_subgraph(working, [working.label(i) for i in component])


def canonical(c: Cycle, g: Graph) -> Cycle:
    """Rotation of c starting at its graph-order-minimal node; direction is kept"""
    body = c.nodes[:-1]
    pivot = min(range(len(body)), key=lambda i: g.index(body[i]))
    rotated = body[pivot:] + body[:pivot]
    return Cycle(rotated + (rotated[0],))


def canonical_set(cycles, g: Graph) -> frozenset:
    """Canonical node tuples of a cycle collection"""
    return frozenset(canonical(c, g).nodes for c in cycles)
