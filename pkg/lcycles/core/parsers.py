"""
lcycles/core/parsers.py
Text formats for directed graphs

Formats:
- adjacency list: one source per line followed by its successors, in order
- edge list: one "u v" edge per line, lines define insertion order
- a token starting with "#" comments out the rest of its line

Node order: first appearance as a line head / edge source, then nodes that only
ever appear as successors, in first-appearance order.
"""

import logging
from typing import Iterator, List, Literal, Tuple

from .errors import GraphFormatError
from .graph import Graph, GraphBuilder

logger = logging.getLogger(__name__)

GraphFormat = Literal["auto", "adjlist", "edgelist"]


def _lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    """Yield (line_number, tokens) for non-blank lines; a token starting with '#' opens a comment"""
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        for i, token in enumerate(tokens):
            if token.startswith("#"):
                del tokens[i:]
                break
        if tokens:
            yield number, tokens


def _build(rows: List[Tuple[int, str, List[str]]]) -> Graph:
    builder = GraphBuilder()
    for _, head, _ in rows:
        builder.add_node(head)
    for number, head, succ in rows:
        for w in succ:
            builder.add_edge(head, w, line_number=number)
    return builder.build()


def parse_adjlist(text: str) -> Graph:
    """
    Parse adjacency-list text.

    A repeated line head extends that node's successor list.

    Raises:
        GraphFormatError: duplicate edge (with its line number)
    """
    rows = [(number, tokens[0], tokens[1:]) for number, tokens in _lines(text)]
    graph = _build(rows)
    logger.debug(f"Parsed adjacency list: {len(graph)} nodes, {graph.edge_count} edges")
    return graph


def parse_edgelist(text: str) -> Graph:
    """
    Parse edge-list text ("u v" per line).

    Raises:
        GraphFormatError: malformed line or duplicate edge (with its line number)
    """
    rows = []
    for number, tokens in _lines(text):
        if len(tokens) != 2:
            raise GraphFormatError(
                f"expected 'u v', got {len(tokens)} token(s)", number
            )
        rows.append((number, tokens[0], [tokens[1]]))
    graph = _build(rows)
    logger.debug(f"Parsed edge list: {len(graph)} nodes, {graph.edge_count} edges")
    return graph


def detect_format(text: str) -> Literal["adjlist", "edgelist"]:
    """
    Edge list iff the first non-comment line has exactly two tokens. Later lines are
    not consulted.
    """
    first = next(_lines(text), None)
    if first is not None and len(first[1]) == 2:
        return "edgelist"
    return "adjlist"


def parse_graph(text: str, fmt: GraphFormat = "auto") -> Graph:
    """Parse text in the given format, detecting it when fmt is "auto" """
    if fmt == "auto":
        fmt = detect_format(text)
    if fmt == "edgelist":
        return parse_edgelist(text)
    return parse_adjlist(text)


def to_adjlist(g: Graph) -> str:
    """One line per node in graph order; parse_adjlist(to_adjlist(g)) == g"""
    lines = [" ".join((label,) + g.successors(label)) for label in g.nodes]
    return "\n".join(lines) + ("\n" if lines else "")


def to_edgelist(g: Graph) -> str:
    """One "u v" line per edge in adjacency order (isolated nodes are not representable)"""
    lines = [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + ("\n" if lines else "")
