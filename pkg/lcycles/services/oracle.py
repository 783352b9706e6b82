"""
lcycles/services/oracle.py
Brute-force enumerators used as ground truth

No locks, no blocking: a plain depth-first search with an on-path marker and a
depth cutoff, plus an even simpler permutation enumerator for tiny graphs.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Dict, FrozenSet, Iterator, List, Tuple

from ..core.errors import ArgumentError
from ..core.graph import Cycle, Graph, check_k

logger = logging.getLogger(__name__)

PERMUTATION_LIMIT = 8


@dataclass(frozen=True)
class CycleSet:
    """Canonical, pairwise distinct cycles in discovery order"""

    cycles: Tuple[Cycle, ...]
    by_length: Dict[int, int] = field(default_factory=dict)

    @classmethod
    def of(cls, cycles: List[Cycle]) -> "CycleSet":
        counts = Counter(c.length for c in cycles)
        return cls(tuple(cycles), dict(sorted(counts.items())))

    def keys(self) -> FrozenSet[Tuple[str, ...]]:
        return frozenset(c.nodes for c in self.cycles)

    def __len__(self) -> int:
        return len(self.cycles)

    def __iter__(self) -> Iterator[Cycle]:
        return iter(self.cycles)

    def __contains__(self, item: object) -> bool:
        nodes = item.nodes if isinstance(item, Cycle) else item
        return nodes in self.keys()


def brute_force_cycles(g: Graph, k: int) -> CycleSet:
    """
    Every simple cycle of length <= k, each reported once from its minimal node.

    A cycle is emitted only when the path closes at its start node and the
    start node is the graph-order-minimal node of the cycle.
    """
    check_k(k)
    found: List[Cycle] = []

    for s in range(len(g)):
        path = [s]
        on_path = [False] * len(g)
        on_path[s] = True
        # (node, position of the next successor to examine)
        work = [(s, 0)]

        while work:
            v, pos = work[-1]
            succ = g.successor_indices(v)
            if pos == len(succ):
                work.pop()
                path.pop()
                on_path[v] = False
                continue
            work[-1] = (v, pos + 1)
            w = succ[pos]

            if w == s:
                if min(path) == s:
                    found.append(Cycle(tuple(g.label(i) for i in path) + (g.label(s),)))
            elif not on_path[w] and len(path) < k:
                path.append(w)
                on_path[w] = True
                work.append((w, 0))

    result = CycleSet.of(found)
    logger.debug(f"Oracle: {len(result)} cycles of length <= {k} in {g!r}")
    return result


def count_cycles(g: Graph, k: int) -> int:
    """Number of simple cycles of length <= k"""
    return len(brute_force_cycles(g, k))


def permutation_cycles(g: Graph, k: int) -> CycleSet:
    """
    Check every ordering of every node subset for being a cycle.

    Raises:
        ArgumentError: more than PERMUTATION_LIMIT nodes
    """
    check_k(k)
    if len(g) > PERMUTATION_LIMIT:
        raise ArgumentError(f"permutation enumerator is limited to {PERMUTATION_LIMIT} nodes")

    found: List[Cycle] = []
    for size in range(1, min(k, len(g)) + 1):
        for subset in combinations(range(len(g)), size):
            first, rest = subset[0], subset[1:]
            for order in permutations(rest):
                ring = (first,) + order
                closed = ring + (first,)
                if all(g.has_edge_index(a, b) for a, b in zip(closed, closed[1:])):
                    found.append(Cycle(tuple(g.label(i) for i in closed)))
    return CycleSet.of(found)
