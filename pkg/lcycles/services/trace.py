"""
lcycles/services/trace.py
Structured execution log of the lock-based cycle search

Features:
- Typed trace events emitted by the search engine through a sink
- Recording sink with step numbering and kind filtering
- Logging sink for live inspection at DEBUG level
- Line rendering in the classic "step: function stack=... v='...'" layout
- Line-by-line trace comparison for golden files

Line grammar (one event per line, whitespace-insensitive):
    <step>: cycle_search stack=<stack> v='<v>' k=<k> flen=<flen>: push <v>, blen←inf, lock[<v>]←<flen>
    <step>: cycle_search stack=<stack> v='<v>' ##### cycle <cycle> found, blen←<blen> #####
    <step>: cycle_search stack=<stack> v='<w>' flen+1=<d> lock[<w>]=<lock> k=<k>: blocked
    <step>: cycle_search stack=<stack> v='<v>' blen←<blen>
    <step>: cycle_search stack=<stack> v='<v>': blist[<w>] += <v>
    <step>: cycle_search stack=<stack> v='<v>' flen=<flen> lock[<v>]=<lock>: pop <v>, return blen=<blen>
    <step>:  relax_locks stack=<stack> v='<u>' k=<k> blen=<blen> lock[<u>]=<lock>
    <step>:  relax_locks stack=<stack> v='<u>' k=<k> blen=<blen> lock[<u>]←<new>[ (=k-blen+1)]
    <step>: halt
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Mapping, Optional, Protocol, Sequence, Tuple, Union

logger = logging.getLogger(__name__)

Extended = Union[int, float]


class EventKind(str, Enum):
    PUSH = "PUSH"
    CYCLE_FOUND = "CYCLE_FOUND"
    BLOCKED = "BLOCKED"
    BLEN_UPDATE = "BLEN_UPDATE"
    BLIST_ADD = "BLIST_ADD"
    RELAX_CHECK = "RELAX_CHECK"
    RELAX_WRITE = "RELAX_WRITE"
    POP = "POP"
    HALT = "HALT"


ALL_KINDS: FrozenSet[EventKind] = frozenset(EventKind)
# Everything the classic listing prints; BLOCKED checks are silent there
LISTING_KINDS: FrozenSet[EventKind] = ALL_KINDS - {EventKind.BLOCKED}


@dataclass(frozen=True)
class TraceEvent:
    """One step of the execution log"""

    step: int
    kind: EventKind
    stack: Tuple[str, ...]
    node: Optional[str]
    values: Mapping[str, Extended] = field(default_factory=dict)
    cycle: Optional[Tuple[str, ...]] = None
    peer: Optional[str] = None

    @property
    def stack_text(self) -> str:
        return join_labels(self.stack)


class TraceSink(Protocol):
    def emit(
        self,
        kind: EventKind,
        stack: Sequence[str],
        node: Optional[str],
        values: Mapping[str, Extended],
        cycle: Optional[Sequence[str]] = None,
        peer: Optional[str] = None,
    ) -> None: ...


class TraceRecorder:
    """Collects events of the selected kinds, numbering them 1, 2, ..."""

    def __init__(self, kinds: FrozenSet[EventKind] = ALL_KINDS):
        self.kinds = kinds
        self.events: List[TraceEvent] = []

    def emit(self, kind, stack, node, values, cycle=None, peer=None) -> None:
        if kind not in self.kinds:
            return
        self.events.append(
            TraceEvent(
                step=len(self.events) + 1,
                kind=kind,
                stack=tuple(stack),
                node=node,
                values=dict(values),
                cycle=tuple(cycle) if cycle is not None else None,
                peer=peer,
            )
        )

    def render(self) -> str:
        return render(self.events)


class LoggingTraceSink:
    """Forwards rendered events to a logger"""

    def __init__(self, target: Optional[logging.Logger] = None, level: int = logging.DEBUG):
        self.target = target or logger
        self.level = level
        self._step = 0

    def emit(self, kind, stack, node, values, cycle=None, peer=None) -> None:
        if not self.target.isEnabledFor(self.level):
            return
        self._step += 1
        event = TraceEvent(self._step, kind, tuple(stack), node, dict(values),
                           tuple(cycle) if cycle is not None else None, peer)
        self.target.log(self.level, render_event(event))


class TeeSink:
    """Fans one event stream out to several sinks"""

    def __init__(self, *sinks: TraceSink):
        self.sinks = sinks

    def emit(self, kind, stack, node, values, cycle=None, peer=None) -> None:
        for sink in self.sinks:
            sink.emit(kind, stack, node, values, cycle, peer)


def join_labels(labels: Sequence[str]) -> str:
    """Compact stack/cycle text: concatenated single characters, else comma-separated"""
    if all(len(label) == 1 for label in labels):
        return "".join(labels)
    return ",".join(labels)


def format_value(value: Extended) -> str:
    """Extended integers render as digits or "inf" """
    if value == math.inf:
        return "inf"
    return str(int(value))


def render_event(event: TraceEvent) -> str:
    """Single line for one event"""
    v = event.node
    vals = {name: format_value(x) for name, x in event.values.items()}
    head = f"{event.step:>3}: cycle_search stack={event.stack_text:<8} v='{v}'"
    kind = event.kind

    if kind is EventKind.PUSH:
        return (f"{head} k={vals['k']} flen={vals['flen']}: "
                f"push {v}, blen←inf, lock[{v}]←{vals['lock_after']}")
    if kind is EventKind.CYCLE_FOUND:
        return f"{head} ##### cycle {join_labels(event.cycle or ())} found, blen←{vals['blen']} #####"
    if kind is EventKind.BLOCKED:
        depth = format_value(event.values["flen"] + 1)
        return f"{head} flen+1={depth} lock[{v}]={vals['lock']} k={vals['k']}: blocked"
    if kind is EventKind.BLEN_UPDATE:
        return f"{head} blen←{vals['blen']}"
    if kind is EventKind.BLIST_ADD:
        return f"{head}: blist[{event.peer}] += {v}"
    if kind is EventKind.POP:
        return (f"{head} flen={vals['flen']} lock[{v}]={vals['lock']}: "
                f"pop {v}, return blen={vals['blen']}")
    if kind in (EventKind.RELAX_CHECK, EventKind.RELAX_WRITE):
        relax = (f"{event.step:>3}:  relax_locks stack={event.stack_text:<8} v='{v}' "
                 f"k={vals['k']} blen={vals['blen']}")
        if kind is EventKind.RELAX_CHECK:
            return f"{relax} lock[{v}]={vals['lock_before']}"
        suffix = "" if event.values["lock_after"] == math.inf else " (=k-blen+1)"
        return f"{relax} lock[{v}]←{vals['lock_after']}{suffix}"
    return f"{event.step:>3}: halt"


def render(events: Sequence[TraceEvent]) -> str:
    """One line per event, newline-terminated"""
    return "".join(render_event(event) + "\n" for event in events)


def _normalized_lines(text: str) -> List[str]:
    lines = [" ".join(line.split()) for line in text.splitlines()]
    while lines and not lines[-1]:
        lines.pop()
    return lines


def diff_traces(a: str, b: str) -> Optional[int]:
    """1-based index of the first differing line after whitespace normalization, or None"""
    left, right = _normalized_lines(a), _normalized_lines(b)
    for number, (x, y) in enumerate(zip(left, right), start=1):
        if x != y:
            return number
    if len(left) != len(right):
        return min(len(left), len(right)) + 1
    return None


def event_tuples(events: Sequence[TraceEvent]) -> List[Tuple]:
    """Normalized event stream for golden comparisons"""
    return [
        (
            e.step,
            e.kind.value,
            e.stack_text,
            e.node,
            tuple(sorted((name, format_value(x)) for name, x in e.values.items())),
            join_labels(e.cycle) if e.cycle is not None else None,
            e.peer,
        )
        for e in events
    ]


def count_by_kind(events: Sequence[TraceEvent]) -> Dict[str, int]:
    counts: Dict[str, int] = {}
    for event in events:
        counts[event.kind.value] = counts.get(event.kind.value, 0) + 1
    return counts
