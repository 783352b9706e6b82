"""
lcycles/core/scc.py
Strongly connected components (iterative Tarjan)

Components are listed by their graph-order-minimal node; nodes inside a
component follow graph order.
"""

from typing import List, Tuple

from .graph import Graph


def scc_indices(g: Graph) -> List[List[int]]:
    """Partition node indices into strongly connected components"""
    n = len(g)
    index = [-1] * n
    lowlink = [0] * n
    on_stack = [False] * n
    stack: List[int] = []
    components: List[List[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue

        # (node, position of the next successor to examine)
        work = [(root, 0)]
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True

        while work:
            v, pos = work[-1]
            succ = g.successor_indices(v)
            if pos < len(succ):
                work[-1] = (v, pos + 1)
                w = succ[pos]
                if index[w] == -1:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    lowlink[v] = min(lowlink[v], index[w])
                continue

            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])

            if lowlink[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    component.append(w)
                    if w == v:
                        break
                components.append(sorted(component))

    components.sort(key=lambda c: c[0])
    return components


def strongly_connected_components(g: Graph) -> List[Tuple[str, ...]]:
    """Ordered component list of node labels"""
    return [tuple(g.label(i) for i in comp) for comp in scc_indices(g)]


def component_of(g: Graph, label: str) -> Tuple[str, ...]:
    """The component containing label"""
    target = g.index(label)
    comp = next(c for c in scc_indices(g) if target in c)
    return tuple(g.label(i) for i in comp)
