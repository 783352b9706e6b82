"""
lcycles/core/graph.py
Directed graph data model

Features:
- Immutable graph with dense node indices and insertion-ordered successor lists
- Single-owner builder that rejects parallel edges
- Node removal and induced subgraphs that never reorder surviving successors
- Cycle value type and validation against a graph
"""

import hashlib
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .errors import ArgumentError, GraphFormatError


class Graph:
    """Immutable directed graph; node order and successor order are part of its identity"""

    __slots__ = ("_labels", "_index", "_succ", "_succ_sets", "_edge_count")

    def __init__(self, labels: Sequence[str], successors: Sequence[Sequence[int]]):
        if len(labels) != len(successors):
            raise ArgumentError("labels and successor lists differ in length")

        self._labels: Tuple[str, ...] = tuple(labels)
        self._index: Dict[str, int] = {label: i for i, label in enumerate(self._labels)}
        if len(self._index) != len(self._labels):
            raise ArgumentError("node labels must be unique")

        n = len(self._labels)
        self._succ: Tuple[Tuple[int, ...], ...] = tuple(tuple(s) for s in successors)
        self._succ_sets: Tuple[frozenset, ...] = tuple(frozenset(s) for s in self._succ)
        for u, succ in enumerate(self._succ):
            if len(succ) != len(self._succ_sets[u]):
                raise ArgumentError(f"parallel edge in successors of {self._labels[u]}")
            if any(not 0 <= w < n for w in succ):
                raise ArgumentError(f"successor of {self._labels[u]} is not a node")
        self._edge_count = sum(len(s) for s in self._succ)

    # ---- size and identity -------------------------------------------------

    @property
    def nodes(self) -> Tuple[str, ...]:
        return self._labels

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def __len__(self) -> int:
        return len(self._labels)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._labels == other._labels and self._succ == other._succ

    def __hash__(self) -> int:
        return hash((self._labels, self._succ))

    def __repr__(self) -> str:
        return f"Graph(nodes={len(self)}, edges={self._edge_count})"

    # ---- label access -------------------------------------------------------

    def index(self, label: str) -> int:
        """Dense index of a node label"""
        try:
            return self._index[label]
        except KeyError:
            raise ArgumentError(f"unknown node: {label!r}") from None

    def label(self, index: int) -> str:
        return self._labels[index]

    def successors(self, label: str) -> Tuple[str, ...]:
        return tuple(self._labels[w] for w in self._succ[self.index(label)])

    def has_edge(self, u: str, v: str) -> bool:
        if u not in self._index or v not in self._index:
            return False
        return self._index[v] in self._succ_sets[self._index[u]]

    def edges(self) -> Iterator[Tuple[str, str]]:
        """Edges in adjacency order"""
        for u, succ in enumerate(self._succ):
            for w in succ:
                yield self._labels[u], self._labels[w]

    def self_loops(self) -> Tuple[str, ...]:
        return tuple(label for i, label in enumerate(self._labels) if i in self._succ_sets[i])

    # ---- index access (hot paths) -----------------------------------------

    def successor_indices(self, index: int) -> Tuple[int, ...]:
        return self._succ[index]

    def has_edge_index(self, u: int, v: int) -> bool:
        return v in self._succ_sets[u]


def check_label(label: str) -> None:
    """Labels must read back as one token of the text formats"""
    if not label or label.startswith("#") or any(ch.isspace() for ch in label):
        raise ArgumentError(f"invalid node label {label!r}")


def check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ArgumentError(f"k must be a positive integer, got {k!r}")


class GraphBuilder:
    """Single-owner mutable builder; `build()` freezes the result"""

    def __init__(self):
        self._labels: List[str] = []
        self._index: Dict[str, int] = {}
        self._succ: List[List[int]] = []
        self._succ_sets: List[set] = []

    def add_node(self, label: str) -> int:
        """
        Add a node if absent; returns its index.

        Raises:
            ArgumentError: label is empty, contains whitespace or starts with '#'
        """
        if label not in self._index:
            check_label(label)
            self._index[label] = len(self._labels)
            self._labels.append(label)
            self._succ.append([])
            self._succ_sets.append(set())
        return self._index[label]

    def add_edge(self, u: str, v: str, line_number: Optional[int] = None) -> None:
        """Append v to the successors of u; parallel edges raise GraphFormatError"""
        ui = self.add_node(u)
        vi = self.add_node(v)
        if vi in self._succ_sets[ui]:
            raise GraphFormatError(f"duplicate edge {u} -> {v}", line_number)
        self._succ[ui].append(vi)
        self._succ_sets[ui].add(vi)

    def build(self) -> Graph:
        return Graph(self._labels, self._succ)


def remove_node(g: Graph, v: str) -> Graph:
    """Return g without v and its incident edges; surviving order is unchanged"""
    g.index(v)
    return induced_subgraph(g, [label for label in g.nodes if label != v])


def induced_subgraph(g: Graph, keep: Iterable[str]) -> Graph:
    """Restrict g to the nodes in keep, preserving node and successor order"""
    keep_set = set(keep)
    for label in keep_set:
        g.index(label)

    old_indices = [i for i, label in enumerate(g.nodes) if label in keep_set]
    remap = {old: new for new, old in enumerate(old_indices)}
    successors = [
        [remap[w] for w in g.successor_indices(old) if w in remap]
        for old in old_indices
    ]
    return Graph([g.label(i) for i in old_indices], successors)


def permuted(
    g: Graph,
    node_order: Optional[Sequence[str]] = None,
    successor_orders: Optional[Mapping[str, Sequence[str]]] = None,
) -> Graph:
    """
    Same edge set as g with a different node order and/or successor order.

    Args:
        node_order: every node of g exactly once
        successor_orders: per-node reordering of its successors (others keep their order)
    """
    order = list(node_order) if node_order is not None else list(g.nodes)
    if sorted(order) != sorted(g.nodes) or len(set(order)) != len(order):
        raise ArgumentError("node_order must list every node exactly once")

    successor_orders = successor_orders or {}
    builder = GraphBuilder()
    for label in order:
        builder.add_node(label)
    for label in order:
        succ = successor_orders.get(label, g.successors(label))
        if sorted(succ) != sorted(g.successors(label)):
            raise ArgumentError(f"successor order for {label} is not a permutation")
        for w in succ:
            builder.add_edge(label, w)
    return builder.build()


def degree_signature(g: Graph) -> str:
    """Short hash of the sorted (out, in) degree pairs; for reports only"""
    indeg = [0] * len(g)
    for u in range(len(g)):
        for w in g.successor_indices(u):
            indeg[w] += 1
    pairs = sorted((len(g.successor_indices(u)), indeg[u]) for u in range(len(g)))
    return hashlib.sha256(repr(pairs).encode()).hexdigest()[:12]


@dataclass(frozen=True)
class Cycle:
    """Closed node sequence (v0, ..., vm) with v0 == vm"""

    nodes: Tuple[str, ...]

    def __post_init__(self):
        if len(self.nodes) < 2 or self.nodes[0] != self.nodes[-1]:
            raise ArgumentError(f"not a closed node sequence: {self.nodes}")

    @property
    def length(self) -> int:
        return len(self.nodes) - 1

    def __str__(self) -> str:
        return format_cycle(self.nodes)


def format_cycle(labels: Sequence[str]) -> str:
    """Compact "ADBECA" notation for single-character labels, space-separated otherwise"""
    if all(len(label) == 1 for label in labels):
        return "".join(labels)
    return " ".join(labels)


def validate_cycle(cycle: Cycle, g: Graph, k: Optional[int] = None) -> Optional[str]:
    """Return the reason cycle is not a simple cycle of g (of length <= k), or None"""
    body = cycle.nodes[:-1]
    if len(set(body)) != len(body):
        return f"repeated node in {cycle}"
    if k is not None and cycle.length > k:
        return f"{cycle} longer than k={k}"
    for u, v in zip(cycle.nodes, cycle.nodes[1:]):
        if not g.has_edge(u, v):
            return f"{cycle} uses missing edge {u} -> {v}"
    return None
