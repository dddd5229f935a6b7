"""Maximal reconcilers, conflict classification and confluence."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from .commands import Command, independent
from .errors import ContractViolation
from .fs import D, E, NodePath
from .refluence import intersect_tp, minus_tp, refluent
from .rewriting import SimpleSequence

__all__ = [
    "Conflict",
    "ConflictKind",
    "ReconcileResult",
    "classify_conflicts",
    "confluent",
    "intersect_tp",
    "minus_tp",
    "reconcile",
    "reconciler_for",
]


class ConflictKind(enum.Enum):
    CONTENT = "content"
    TYPE_CHANGE = "type-change"
    ORDER = "order"

    @property
    def structural(self) -> bool:
        return self is not ConflictKind.CONTENT


@dataclass(frozen=True)
class Conflict:
    """A command that cannot be propagated, with the command that blocks it.

    ``side`` names the input the blocked command came from.
    """

    kind: ConflictKind
    node: NodePath
    blocked: Command
    blocking: Command
    side: str

    def key(self) -> tuple[ConflictKind, frozenset[Command]]:
        """Orientation-free identity, stable under swapping the replicas."""
        return self.kind, frozenset((self.blocked, self.blocking))


@dataclass(frozen=True)
class ReconcileResult:
    apply_after_alpha: SimpleSequence
    apply_after_beta: SimpleSequence
    conflicts: tuple[Conflict, ...]

    @property
    def clean(self) -> bool:
        return not self.conflicts


class _Blockers:
    """Answers "which command of ``cmds`` is not independent of tau?" fast.

    Only commands on comparable nodes can fail independence, so ancestors are
    looked up directly and, for descendants, the least-path non E->E command
    below each node is precomputed.
    """

    def __init__(self, cmds):
        self.by_node = {c.node: c for c in cmds}
        below: dict[NodePath, Command] = {}
        for c in cmds:
            if c.input is E and c.output is E:
                continue
            for m in c.node.ancestors():
                cur = below.get(m)
                if cur is None or c.node < cur.node:
                    below[m] = c
        self.below = below

    def blocker(self, t: Command) -> Optional[Command]:
        same = self.by_node.get(t.node)
        if same is not None:
            return same
        for m in t.node.ancestors():
            s = self.by_node.get(m)
            if s is not None and not independent(s, t):
                return s
        if not (t.input is D and t.output is D):
            return self.below.get(t.node)
        return None


def _require_refluent(a, b) -> None:
    if not refluent(a, b)[0]:
        raise ContractViolation("sequences are not refluent")


def _reconciler(a, b) -> SimpleSequence:
    blockers = _Blockers(minus_tp(a, b))
    candidates = minus_tp(b, a)
    return SimpleSequence(t for t in b if t in candidates and blockers.blocker(t) is None)


def reconciler_for(a: Sequence[Command], b: Sequence[Command]) -> SimpleSequence:
    """The maximal part of ``b`` that can run after ``a``, in ``b``'s order."""
    _require_refluent(a, b)
    return _reconciler(a, b)


def _conflicts(a, b) -> list[Conflict]:
    out = []
    a_shared = {c.node: c for c in intersect_tp(a, b)}
    for t in b:
        s = a_shared.get(t.node)
        if s is not None and s.replacement != t.replacement:
            out.append(Conflict(ConflictKind.CONTENT, t.node, t, s, "b"))
    seen = set()
    for side, mine, other in (("b", b, a), ("a", a, b)):
        blockers = _Blockers(minus_tp(other, mine))
        candidates = minus_tp(mine, other)
        other_nodes = {c.node: c for c in other}
        for t in mine:
            if t not in candidates:
                continue
            s = blockers.blocker(t)
            if s is None:
                continue
            pair = frozenset((t, s))
            if pair in seen:
                continue
            seen.add(pair)
            kind = ConflictKind.TYPE_CHANGE if t.node in other_nodes else ConflictKind.ORDER
            out.append(Conflict(kind, t.node, t, s, side))
    return out


def classify_conflicts(a: Sequence[Command], b: Sequence[Command]) -> list[Conflict]:
    """Every change that cannot be propagated, one entry per unordered pair.

    Content conflicts pair same-typed commands storing different values.
    Structural conflicts name a command left out of a reconciler and the
    command of the other replica that excludes it.
    """
    _require_refluent(a, b)
    return _conflicts(a, b)


def reconcile(a: Sequence[Command], b: Sequence[Command]) -> ReconcileResult:
    _require_refluent(a, b)
    return ReconcileResult(_reconciler(a, b), _reconciler(b, a), tuple(_conflicts(a, b)))


def confluent(a: Sequence[Command], b: Sequence[Command]) -> bool:
    """Whether both replicas can be brought to the same state without conflict."""
    _require_refluent(a, b)
    if intersect_tp(a, b) != intersect_tp(b, a):
        return False
    return len(_reconciler(a, b)) == len(minus_tp(b, a))
