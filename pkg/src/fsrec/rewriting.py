"""Rewriting of command sequences and the structure of simple sequences.

A sequence is simple when it holds at most one command per node.  Every
sequence either rewrites to the breaking command or to a simple sequence that
semantically extends it, and a non-breaking simple sequence is determined (up
to equivalence) by its set of commands.
"""
from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .commands import (
    BROKEN,
    Broken,
    Command,
    apply_seq,
    independent,
    is_down,
    is_up,
    node_map,
    precedes,
)
from .errors import ContractViolation, TreeViolation
from .fs import CANONICAL, D, E, Filesystem, NodePath, TypeTag, ValueUniverse


class RewriteKind(enum.Enum):
    COMMUTE = "commute"
    BREAK = "break"
    MERGE = "merge"
    NO_RULE = "no-rule"


@dataclass(frozen=True)
class RewriteOutcome:
    kind: RewriteKind
    merged: Optional[Command] = None


COMMUTE = RewriteOutcome(RewriteKind.COMMUTE)
BREAK = RewriteOutcome(RewriteKind.BREAK)
NO_RULE = RewriteOutcome(RewriteKind.NO_RULE)


def rewrite_pair(s: Command, t: Command) -> RewriteOutcome:
    """The rule that applies to the adjacent pair ``s t``.

    ``NO_RULE`` means ``s`` must precede ``t`` and the pair is left alone.
    """
    if s.node == t.node:
        if s.replacement.tag is t.input:
            return RewriteOutcome(RewriteKind.MERGE, Command(s.node, s.input, t.replacement))
        return BREAK
    if precedes(s, t):
        return NO_RULE
    if independent(s, t):
        return COMMUTE
    return BREAK


class SimpleSequence(tuple):
    """A tuple of commands on pairwise distinct nodes.

    ``merged`` records whether producing it used a merge rule, in which case
    it only semantically extends its source rather than being equivalent.
    """

    merged: bool

    def __new__(cls, commands: Iterable[Command] = (), merged: bool = False):
        self = super().__new__(cls, commands)
        if len({c.node for c in self}) != len(self):
            raise ContractViolation("a simple sequence holds at most one command per node")
        self.merged = merged
        return self

    def __repr__(self) -> str:
        return "[" + ", ".join(str(c) for c in self) + "]"

    def __eq__(self, other):
        if isinstance(other, (list, tuple)):
            return tuple(self) == tuple(other)
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = tuple.__hash__


def is_simple(seq: Iterable[Command]) -> bool:
    seen = set()
    for c in seq:
        if c.node in seen:
            return False
        seen.add(c.node)
    return True


def _require_simple(seq: Sequence[Command]) -> dict[NodePath, Command]:
    try:
        return node_map(seq)
    except ContractViolation:
        raise ContractViolation("input is not a simple sequence") from None


def _children(by_node: dict[NodePath, Command]) -> dict[NodePath, list[Command]]:
    out: dict[NodePath, list[Command]] = {}
    for n, c in by_node.items():
        if not n.is_root:
            out.setdefault(n.parent, []).append(c)
    return out


def honors_order(seq: Sequence[Command]) -> bool:
    by_node = _require_simple(seq)
    pos = {c.node: i for i, c in enumerate(seq)}
    for c in seq:
        if c.node.is_root:
            continue
        p = by_node.get(c.node.parent)
        if p is None:
            continue
        if precedes(c, p) and pos[c.node] > pos[p.node]:
            return False
        if precedes(p, c) and pos[p.node] > pos[c.node]:
            return False
    return True


def leaders(commands: Iterable[Command]) -> set[Command]:
    """The ``<<``-minimal commands of a set on distinct nodes."""
    by_node = _require_simple(list(commands))
    kids = _children(by_node)
    out = set()
    for n, c in by_node.items():
        if not n.is_root:
            p = by_node.get(n.parent)
            if p is not None and precedes(p, c):
                continue
        if any(precedes(k, c) for k in kids.get(n, ())):
            continue
        out.add(c)
    return out


def _chain_ok(c: Command, by_node: dict[NodePath, Command]) -> bool:
    # walk up from c; a non-independent ancestor must be joined to it by an
    # unbroken, single-direction chain of << links
    prev = c
    down = up = True
    for m in c.node.ancestors():
        r = by_node.get(m)
        if r is None:
            down = up = False
            continue
        if down or up:
            down = down and precedes(prev, r)
            up = up and precedes(r, prev)
        prev = r
        if not (down or up) and not independent(r, c):
            return False
    return True


def _simple_set_ok(by_node: dict[NodePath, Command]) -> bool:
    return all(_chain_ok(c, by_node) for c in by_node.values())


def is_simple_set(commands: Iterable[Command]) -> bool:
    try:
        by_node = node_map(commands)
    except ContractViolation:
        return False
    return _simple_set_ok(by_node)


def is_breaking_simple(seq: Sequence[Command]) -> bool:
    """True iff the simple sequence breaks every filesystem."""
    by_node = _require_simple(seq)
    return not (_simple_set_ok(by_node) and honors_order(seq))


def order_simple_set(commands: Iterable[Command]) -> SimpleSequence:
    """Order a simple set so that it honors ``<<``.

    Unconstrained commands come out in path order.
    """
    cmds = list(commands)
    by_node = _require_simple(cmds)
    if not _simple_set_ok(by_node):
        raise ContractViolation("commands do not form a simple set")
    succ: dict[NodePath, list[NodePath]] = {}
    indeg = {n: 0 for n in by_node}
    for n, c in by_node.items():
        if n.is_root:
            continue
        p = by_node.get(n.parent)
        if p is None:
            continue
        if precedes(c, p):
            succ.setdefault(n, []).append(p.node)
            indeg[p.node] += 1
        elif precedes(p, c):
            succ.setdefault(p.node, []).append(n)
            indeg[n] += 1
    heap = [n for n, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        n = heapq.heappop(heap)
        out.append(by_node[n])
        for m in succ.get(n, ()):
            indeg[m] -= 1
            if indeg[m] == 0:
                heapq.heappush(heap, m)
    assert len(out) == len(cmds), "<< has no cycles"
    return SimpleSequence(out)


@dataclass(frozen=True)
class Subtree:
    root: NodePath
    nodes: frozenset[NodePath]
    direction: str  # "up", "down", or "transient" for a lone F->F command

    def leaves(self) -> frozenset[NodePath]:
        return frozenset(
            n for n in self.nodes if not any(n.is_above(m) for m in self.nodes)
        )


@dataclass(frozen=True)
class NodeClassification:
    n_d: frozenset[NodePath]
    n_e: frozenset[NodePath]
    subtrees: tuple[Subtree, ...]

    def leader_nodes(self) -> frozenset[NodePath]:
        out = set(self.n_d) | set(self.n_e)
        for t in self.subtrees:
            if t.direction == "down":
                out |= t.leaves()
            else:
                out.add(t.root)
        return frozenset(out)


def classify_simple_set(commands: Iterable[Command]) -> NodeClassification:
    by_node = _require_simple(list(commands))
    if not _simple_set_ok(by_node):
        raise ContractViolation("commands do not form a simple set")
    n_d, n_e, star = set(), set(), set()
    for n, c in by_node.items():
        if c.input is D and c.output is D:
            n_d.add(n)
        elif c.input is E and c.output is E:
            n_e.add(n)
        else:
            star.add(n)
    groups: dict[NodePath, set[NodePath]] = {}
    for n in star:
        root = n
        while not root.is_root and root.parent in star:
            root = root.parent
        groups.setdefault(root, set()).add(n)
    subtrees = []
    for root in sorted(groups):
        c = by_node[root]
        if is_up(c):
            direction = "up"
        elif is_down(c):
            direction = "down"
        else:
            direction = "transient"
        subtrees.append(Subtree(root, frozenset(groups[root]), direction))
    return NodeClassification(frozenset(n_d), frozenset(n_e), tuple(subtrees))


def is_noop(c: Command, universe: Optional[ValueUniverse]) -> bool:
    """A transient command that cannot change anything in ``universe``."""
    if universe is None or c.input is not c.output:
        return False
    vals = universe.values(c.input)
    return vals is not None and vals == {c.replacement}


def strip_noops(seq: Iterable[Command], universe: Optional[ValueUniverse]) -> list[Command]:
    return [c for c in seq if not is_noop(c, universe)]


def log_applies_somewhere(log: Sequence[Command]) -> bool:
    """Whether any filesystem survives ``log``, for arbitrary (non-simple) logs.

    Success only depends on value types.  A mentioned node starts with the
    input type of its first command and its later types are fixed by the
    log; an unmentioned ancestor keeps one type throughout, and a directory
    is the best choice unless some node above it is ever a non-directory,
    in which case it has to be empty.  So the log applies somewhere iff it
    applies to that one canonical filesystem.
    """
    initial: dict[NodePath, TypeTag] = {}
    always_dir: dict[NodePath, bool] = {}
    for c in log:
        initial.setdefault(c.node, c.input)
        always_dir[c.node] = always_dir.get(c.node, True) and c.input is D and c.output is D
    entries = {}
    free: set[NodePath] = set()
    for n in initial:
        for m in n.ancestors():
            if m in initial or m in free:
                break
            free.add(m)
    for m in sorted(free, key=lambda p: p.depth):
        if all(always_dir[a] if a in always_dir else a in entries for a in m.ancestors()):
            entries[m] = CANONICAL[D]
    for n, t in initial.items():
        entries[n] = CANONICAL[t]
    try:
        f = Filesystem(entries)
    except TreeViolation:
        return False
    return apply_seq(log, f) is not BROKEN


class Simplifier:
    """Incremental simplification of a command log.

    Commands are pushed one at a time.  The working sequence stays simple,
    non-breaking and ``<<``-honoring.  Rewriting commits to merges as they
    arrive, and a merge can hide a break that a later command would expose,
    so :attr:`result` also checks the raw log and reports :data:`BROKEN`
    exactly when the log breaks every filesystem.
    """

    def __init__(self):
        self._log: list[Command] = []
        self._out: list[Command] = []
        self._by_node: dict[NodePath, Command] = {}
        self.broken = False
        self.merged = False

    def copy(self) -> Simplifier:
        other = Simplifier.__new__(Simplifier)
        other._log = list(self._log)
        other._out = list(self._out)
        other._by_node = dict(self._by_node)
        other.broken = self.broken
        other.merged = self.merged
        return other

    @property
    def result(self) -> Union[SimpleSequence, Broken]:
        if not self.broken and self.merged and not log_applies_somewhere(self._log):
            self.broken = True
        if self.broken:
            return BROKEN
        return SimpleSequence(self._out, merged=self.merged)

    def push(self, s: Command) -> None:
        if self.broken:
            return
        self._log.append(s)
        t = self._by_node.get(s.node)
        if t is None:
            self._append(s)
        else:
            self._merge(t, s)

    def _append(self, s: Command) -> None:
        # appending keeps the sequence non-breaking iff s is not forced
        # before anything already there and the chain condition still holds
        # for every pair involving s
        self._by_node[s.node] = s
        ok = _chain_ok(s, self._by_node)
        for r in self._out:
            if not ok:
                break
            if precedes(s, r) or (s.node.is_above(r.node) and not _chain_ok(r, self._by_node)):
                ok = False
        if not ok:
            self.broken = True
            return
        self._out.append(s)

    def _merge(self, t: Command, s: Command) -> None:
        outcome = rewrite_pair(t, s)
        if outcome.kind is RewriteKind.BREAK:
            self.broken = True
            return
        w = self._out
        i = w.index(t)
        w.append(s)
        k = len(w) - 1
        # commute t rightwards and s leftwards until they meet
        while k > i + 1:
            step = rewrite_pair(t, w[i + 1])
            if step.kind is RewriteKind.COMMUTE:
                w[i], w[i + 1] = w[i + 1], w[i]
                i += 1
                continue
            if step.kind is RewriteKind.BREAK:
                self.broken = True
                return
            step = rewrite_pair(w[k - 1], s)
            if step.kind is RewriteKind.COMMUTE:
                w[k - 1], w[k] = w[k], w[k - 1]
                k -= 1
                continue
            if step.kind is RewriteKind.BREAK:
                self.broken = True
                return
            raise AssertionError(f"stuck merging {t} with {s}")
        w[i:k + 1] = [outcome.merged]
        self._by_node[s.node] = outcome.merged
        self.merged = True
        if is_breaking_simple(w):
            self.broken = True


def simplify(
    seq: Iterable[Command], universe: Optional[ValueUniverse] = None
) -> Union[SimpleSequence, Broken]:
    """Rewrite a command sequence to a simple one, or to :data:`BROKEN`.

    If ``universe`` is given, transient commands that are provably no-ops in
    it (a type with a single value) are dropped from the result.
    """
    sim = Simplifier()
    for c in seq:
        sim.push(c)
        if sim.broken:
            return BROKEN
    result = sim.result
    if result is BROKEN:
        return BROKEN
    if universe is not None:
        result = SimpleSequence(strip_noops(result, universe), merged=result.merged)
    return result


def equivalent_simple(
    a: Sequence[Command], b: Sequence[Command], universe: Optional[ValueUniverse] = None
) -> bool:
    """Semantic equivalence of simple sequences, decided syntactically.

    Complete when every type has at least two values; with singleton types,
    pass the ``universe`` so no-op commands are ignored.
    """
    ba, bb = is_breaking_simple(a), is_breaking_simple(b)
    if ba or bb:
        return ba and bb
    return set(strip_noops(a, universe)) == set(strip_noops(b, universe))
