"""
lcycles/services/harness.py
Differential testing, counter-example mining and complexity probing

Features:
- Compare lock-based search output against the brute-force oracle
- Exhaustive scan of small strongly connected digraphs for order-sensitive misses
- Seeded random digraphs (numpy PCG64) for property suites
- Operation-count probe of the O((c+1)*k*(n+e)) bound
"""

import logging
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..core.errors import ArgumentError
from ..core.graph import Graph, GraphBuilder, degree_signature, permuted
from .locked_dfs import GsMode, RelaxPolicy, canonical_set, lc_cycles
from .oracle import brute_force_cycles

logger = logging.getLogger(__name__)

MAX_MINER_NODES = 5
MINER_CHUNK_SIZE = 4096


@dataclass(frozen=True)
class Discrepancy:
    """Oracle and lock-based search disagree on a graph"""

    graph: Graph
    k: int
    policy: RelaxPolicy
    missing: Tuple[Tuple[str, ...], ...]
    spurious: Tuple[Tuple[str, ...], ...]
    degree_signature: str = ""
    # (nodes, edge mask, order variant) for mined instances
    instance: Optional[Tuple[int, int, int]] = None


@dataclass(frozen=True)
class ProbeRun:
    n: int
    e: int
    k: int
    c: int
    total_ops: int
    max_lock_decreases: int

    @property
    def bound(self) -> int:
        return (self.c + 1) * self.k * (self.n + self.e)

    @property
    def ratio(self) -> float:
        return self.total_ops / self.bound if self.bound else 0.0


@dataclass(frozen=True)
class ComplexityReport:
    """Measured operations against (c+1)*k*(n+e) over a family of runs"""

    policy: RelaxPolicy
    runs: Tuple[ProbeRun, ...] = field(default_factory=tuple)

    @property
    def fitted_constant(self) -> float:
        return max(run.ratio for run in self.runs)

    @property
    def median_ratio(self) -> float:
        return statistics.median(run.ratio for run in self.runs)

    @property
    def spread(self) -> float:
        median = self.median_ratio
        return self.fitted_constant / median if median > 0 else float("inf")


def _sorted_cycles(keys, g: Graph) -> Tuple[Tuple[str, ...], ...]:
    return tuple(sorted(keys, key=lambda nodes: (len(nodes), [g.index(x) for x in nodes])))


def diff_test(
    g: Graph,
    k: int,
    policy: RelaxPolicy,
    gs_mode: GsMode = GsMode.SCC,
) -> Optional[Discrepancy]:
    """Compare canonical lc_cycles output with the oracle; None when they agree"""
    found, _ = lc_cycles(g, k, policy, gs_mode)
    actual = canonical_set(found, g)
    expected = brute_force_cycles(g, k).keys()
    if actual == expected:
        return None

    return Discrepancy(
        graph=g,
        k=k,
        policy=RelaxPolicy(policy),
        missing=_sorted_cycles(expected - actual, g),
        spurious=_sorted_cycles(actual - expected, g),
        degree_signature=degree_signature(g),
    )


# ---- instance generation ----------------------------------------------------


def node_labels(n: int) -> List[str]:
    """A, B, C, ... up to 26 nodes, v0, v1, ... beyond"""
    if n <= 26:
        return [chr(ord("A") + i) for i in range(n)]
    return [f"v{i}" for i in range(n)]


@lru_cache(maxsize=None)
def ordered_pairs(n: int) -> Tuple[Tuple[int, int], ...]:
    """Edge positions in generation order: (u-order, v-order), no self-loops"""
    return tuple((u, v) for u in range(n) for v in range(n) if u != v)


def graph_from_mask(n: int, mask: int) -> Graph:
    """Graph whose edges are the set bits of mask over ordered_pairs(n)"""
    labels = node_labels(n)
    builder = GraphBuilder()
    for label in labels:
        builder.add_node(label)
    for bit, (u, v) in enumerate(ordered_pairs(n)):
        if mask >> bit & 1:
            builder.add_edge(labels[u], labels[v])
    return builder.build()


def _adjacency_bits(n: int, mask: int) -> Tuple[List[int], List[int]]:
    out = [0] * n
    into = [0] * n
    for bit, (u, v) in enumerate(ordered_pairs(n)):
        if mask >> bit & 1:
            out[u] |= 1 << v
            into[v] |= 1 << u
    return out, into


def _closure(start: int, adjacency: List[int]) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        grown = 0
        bits = frontier
        while bits:
            low = bits & -bits
            grown |= adjacency[low.bit_length() - 1]
            bits ^= low
        frontier = grown & ~seen
        seen |= frontier
    return seen


def is_strongly_connected_mask(n: int, mask: int) -> bool:
    """Every node reaches node 0 and is reached from it"""
    if n == 0:
        return False
    out, into = _adjacency_bits(n, mask)
    full = (1 << n) - 1
    return _closure(0, out) == full and _closure(0, into) == full


def extend_counterexample(
    g: Graph,
    extra: int,
    exit_node: str = "D",
    entry_node: str = "A",
    path_length: int = 1,
) -> Graph:
    """
    Attach `extra` fresh paths exit_node -> X1 -> ... -> Xm -> entry_node (m = path_length).

    The new nodes touch g only through an edge out of exit_node and an edge
    into entry_node. They follow the existing nodes, and each path's first
    edge is appended to exit_node's successor list, so the adjacency order of
    g itself is unchanged. On the five-node counter-example every member of
    the family still hides AECBDA from the unrevised rule at k = 5.

    Raises:
        ArgumentError: extra < 0, path_length < 1, or an unknown endpoint
    """
    if extra < 0:
        raise ArgumentError(f"extra must be non-negative, got {extra}")
    if path_length < 1:
        raise ArgumentError(f"path_length must be at least 1, got {path_length}")
    g.index(exit_node)
    g.index(entry_node)

    total = extra * path_length
    fresh = [label for label in node_labels(len(g) + total) if label not in g][:total]

    builder = GraphBuilder()
    for label in g.nodes:
        builder.add_node(label)
    for u, v in g.edges():
        builder.add_edge(u, v)
    for label in fresh:
        builder.add_node(label)
    for i in range(extra):
        path = [exit_node] + fresh[i * path_length:(i + 1) * path_length] + [entry_node]
        for u, v in zip(path, path[1:]):
            builder.add_edge(u, v)
    return builder.build()


def order_variant(g: Graph, seed: int, n: int, mask: int, variant: int) -> Graph:
    """Seeded reshuffle of every successor list; variant 0 is g itself"""
    if variant == 0:
        return g
    rng = np.random.default_rng(np.random.SeedSequence([seed, n, mask, variant]))
    orders = {}
    for label in g.nodes:
        succ = list(g.successors(label))
        orders[label] = [succ[i] for i in rng.permutation(len(succ))]
    return permuted(g, successor_orders=orders)


def diff_instances(
    instances: Iterable[Tuple[Tuple[int, int, int], Graph]],
    k_values: Sequence[int],
    policy: RelaxPolicy = RelaxPolicy.ORIGINAL,
) -> List[Discrepancy]:
    """Diff-test explicit (instance key, graph) pairs at every k"""
    results = []
    for key, g in instances:
        for k in k_values:
            found = diff_test(g, k, policy)
            if found is not None:
                results.append(_with_instance(found, key))
    return results


def _with_instance(d: Discrepancy, key: Tuple[int, int, int]) -> Discrepancy:
    return Discrepancy(d.graph, d.k, d.policy, d.missing, d.spurious, d.degree_signature, key)


def _strongly_connected_instances(
    n: int, masks: Sequence[int], order_variants: int, seed: int
) -> Iterator[Tuple[Tuple[int, int, int], Graph]]:
    for mask in masks:
        if not is_strongly_connected_mask(n, mask):
            continue
        g = graph_from_mask(n, mask)
        for variant in range(order_variants + 1):
            yield (n, mask, variant), order_variant(g, seed, n, mask, variant)


def _mine_chunk(args) -> List[Discrepancy]:
    n, masks, k_values, order_variants, seed, policy = args
    instances = _strongly_connected_instances(n, masks, order_variants, seed)
    return diff_instances(instances, k_values, policy)


def _chunks(min_nodes, max_nodes, masks, chunk_size, k_values, order_variants, seed, policy):
    for n in range(min_nodes, max_nodes + 1):
        total = 1 << len(ordered_pairs(n))
        if masks is None:
            window: Sequence[int] = range(total)
        else:
            window = tuple(m for m in masks if m < total)
        for start in range(0, len(window), chunk_size):
            yield (n, window[start:start + chunk_size], tuple(k_values), order_variants, seed, policy)


def mine_counterexamples(
    max_nodes: int,
    k_values: Sequence[int],
    budget: int,
    order_variants: int = 0,
    seed: int = 0,
    workers: int = 1,
    policy: RelaxPolicy = RelaxPolicy.ORIGINAL,
    on_found: Optional[Callable[[Discrepancy], None]] = None,
    min_nodes: int = 1,
    masks: Optional[Iterable[int]] = None,
    chunk_size: int = MINER_CHUNK_SIZE,
) -> List[Discrepancy]:
    """
    Scan every strongly connected digraph on min_nodes..max_nodes nodes.

    Instances are visited by node count, then edge mask, then order variant,
    then k; the first `budget` discrepancies are returned. `masks` restricts
    the scan to the given edge masks (ascending, each node count keeps those
    below 2^(n(n-1))). With workers > 1 chunks of `chunk_size` masks run in a
    process pool and are merged in chunk order, so the result equals the
    sequential scan. on_found is called for each accepted discrepancy as soon
    as its chunk completes.

    Raises:
        ArgumentError: budget < 1, node counts outside 1..5, empty or invalid
            k_values, negative order_variants or mask, chunk_size < 1
    """
    if budget < 1:
        raise ArgumentError(f"budget must be at least 1, got {budget}")
    if not 1 <= max_nodes <= MAX_MINER_NODES:
        raise ArgumentError(f"max_nodes must be in 1..{MAX_MINER_NODES}, got {max_nodes}")
    if not 1 <= min_nodes <= max_nodes:
        raise ArgumentError(f"min_nodes must be in 1..{max_nodes}, got {min_nodes}")
    if not k_values or any(k < 1 for k in k_values):
        raise ArgumentError(f"k_values must be positive integers, got {list(k_values)}")
    if order_variants < 0:
        raise ArgumentError("order_variants must be non-negative")
    if chunk_size < 1:
        raise ArgumentError(f"chunk_size must be at least 1, got {chunk_size}")
    if masks is not None:
        masks = sorted(set(masks))
        if masks and masks[0] < 0:
            raise ArgumentError(f"edge masks must be non-negative, got {masks[0]}")

    k_values = sorted(set(k_values))
    policy = RelaxPolicy(policy)
    chunks = _chunks(min_nodes, max_nodes, masks, chunk_size, k_values, order_variants, seed, policy)
    found: List[Discrepancy] = []

    def accept(batch: List[Discrepancy]) -> bool:
        for d in batch[: budget - len(found)]:
            found.append(d)
            if on_found is not None:
                on_found(d)
        return len(found) >= budget

    if workers <= 1:
        for chunk in chunks:
            if accept(_mine_chunk(chunk)):
                break
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for batch in pool.map(_mine_chunk, chunks):
                if accept(batch):
                    pool.shutdown(wait=False, cancel_futures=True)
                    break

    logger.info(
        f"Miner (max_nodes={max_nodes}, k={k_values}, {policy.value}) "
        f"collected {len(found)} discrepancies"
    )
    return found


# ---- random graphs ------------------------------------------------------------


def random_digraph(n: int, edge_probability: float, seed: int) -> Graph:
    """
    Each ordered pair (u, v), u != v, is an edge with the given probability.

    Generator: numpy PCG64 via default_rng(seed); one rng.random((n, n)) draw,
    edge (u, v) kept iff matrix[u, v] < edge_probability. Successors follow
    (u-order, v-order).
    """
    if n < 0:
        raise ArgumentError(f"n must be non-negative, got {n}")
    if not 0.0 <= edge_probability <= 1.0:
        raise ArgumentError(f"edge probability must be in [0, 1], got {edge_probability}")

    labels = node_labels(n)
    builder = GraphBuilder()
    for label in labels:
        builder.add_node(label)
    if n:
        draws = np.random.default_rng(seed).random((n, n))
        for u in range(n):
            for v in range(n):
                if u != v and draws[u, v] < edge_probability:
                    builder.add_edge(labels[u], labels[v])
    return builder.build()


def random_sparse_family(n: int, count: int, seed: int, mean_degree: float = 2.0) -> List[Graph]:
    """count graphs with p = mean_degree / n and seeds seed, seed + 1, ..."""
    p = min(1.0, mean_degree / n) if n else 0.0
    return [random_digraph(n, p, seed + i) for i in range(count)]


# ---- complexity ---------------------------------------------------------------


def complexity_probe(
    graphs: Sequence[Graph],
    k: int,
    policy: RelaxPolicy,
    gs_mode: GsMode = GsMode.SCC,
) -> ComplexityReport:
    """
    Run lc_cycles on each graph and relate total_ops to (c+1)*k*(n+e).

    c is the number of cycles the run emitted.

    Raises:
        ArgumentError: empty collection
    """
    if not graphs:
        raise ArgumentError("complexity_probe needs at least one graph")

    runs = []
    for g in graphs:
        cycles, counters = lc_cycles(g, k, policy, gs_mode)
        runs.append(
            ProbeRun(
                n=len(g),
                e=g.edge_count,
                k=k,
                c=len(cycles),
                total_ops=counters.total_ops,
                max_lock_decreases=counters.max_lock_decreases,
            )
        )

    report = ComplexityReport(RelaxPolicy(policy), tuple(runs))
    logger.info(
        f"Probe ({report.policy.value}, k={k}): {len(runs)} runs, "
        f"fitted constant {report.fitted_constant:.4f}, spread {report.spread:.2f}"
    )
    return report


def lock_budget_respected(report: ComplexityReport) -> bool:
    """No node saw more than k strictly decreasing lock writes between relaxations"""
    return all(run.max_lock_decreases <= run.k for run in report.runs)
