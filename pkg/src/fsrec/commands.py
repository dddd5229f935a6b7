"""Commands, their action on filesystems, and the pair relations.

A command ``(n, t, x)`` replaces the value at node ``n`` with ``x`` provided
the current value has type ``t`` and the result keeps the tree property.
Otherwise the filesystem breaks and the outcome is :data:`BROKEN`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import ContractViolation
from .fs import D, E, E0, F, Filesystem, NodePath, PathLike, TypeTag, Value, as_path


class Broken(enum.Enum):
    BROKEN = "broken"

    def __repr__(self) -> str:
        return "BROKEN"


BROKEN = Broken.BROKEN
Outcome = Union[Filesystem, Broken]


@dataclass(frozen=True, order=True, slots=True)
class Command:
    node: NodePath
    input: TypeTag
    replacement: Value

    def __post_init__(self):
        if not isinstance(self.node, NodePath):
            object.__setattr__(self, "node", as_path(self.node))
        if not isinstance(self.input, TypeTag):
            object.__setattr__(self, "input", TypeTag(self.input))

    @property
    def output(self) -> TypeTag:
        return self.replacement.tag

    def __str__(self) -> str:
        return f"({self.node},{self.input.value},{self.replacement})"

    def __repr__(self) -> str:
        return f"Command{self}"


def cmd(node: PathLike, input: Union[TypeTag, str], replacement: Value) -> Command:
    return Command(as_path(node), TypeTag(input), replacement)


@dataclass(frozen=True, order=True, slots=True)
class CommandType:
    node: NodePath
    input: TypeTag
    output: TypeTag


def cmd_type(c: Command) -> CommandType:
    return CommandType(c.node, c.input, c.replacement.tag)


class CommandKind(enum.Enum):
    TRANSIENT_D = "transient-D"
    TRANSIENT_F = "transient-F"
    TRANSIENT_E = "transient-E"
    UP = "up"
    DOWN = "down"


_RANK = {E: 0, F: 1, D: 2}
_TRANSIENT = {D: CommandKind.TRANSIENT_D, F: CommandKind.TRANSIENT_F, E: CommandKind.TRANSIENT_E}


def category(c: Command) -> CommandKind:
    i, o = _RANK[c.input], _RANK[c.replacement.tag]
    if i == o:
        return _TRANSIENT[c.input]
    return CommandKind.UP if o > i else CommandKind.DOWN


def is_structural(c: Command) -> bool:
    return c.input is not c.replacement.tag


def is_up(c: Command) -> bool:
    return _RANK[c.replacement.tag] > _RANK[c.input]


def is_down(c: Command) -> bool:
    return _RANK[c.replacement.tag] < _RANK[c.input]


def matches(c: Command, inputs: str, outputs: str) -> bool:
    """Pattern match, e.g. ``matches(c, "DF", "E")`` for ``(., DF, E)``."""
    return c.input.value in inputs and c.replacement.tag.value in outputs


def precedes(s: Command, t: Command) -> bool:
    """The forced-order relation: ``s`` must run before ``t``.

    Holds for ``(n,DF,E) << (parent n,D,FE)`` and ``(parent n,EF,D) << (n,E,FD)``.
    """
    sn, tn = s.node, t.node
    if len(sn.segments) == len(tn.segments) + 1:
        return (
            sn.segments[:-1] == tn.segments
            and s.input is not E
            and s.replacement.tag is E
            and t.input is D
            and t.replacement.tag is not D
        )
    if len(tn.segments) == len(sn.segments) + 1:
        return (
            tn.segments[:-1] == sn.segments
            and s.input is not D
            and s.replacement.tag is D
            and t.input is E
            and t.replacement.tag is not E
        )
    return False


def independent(s: Command, t: Command) -> bool:
    """Commands on different nodes whose order is irrelevant."""
    if s.node == t.node:
        raise ContractViolation("independence is only defined for commands on different nodes")
    if s.node.is_above(t.node):
        high, low = s, t
    elif t.node.is_above(s.node):
        high, low = t, s
    else:
        return True
    return (high.input is D and high.replacement.tag is D) or (
        low.input is E and low.replacement.tag is E
    )


class _State:
    """Mutable working copy used while folding a sequence over a filesystem."""

    __slots__ = ("entries", "nonempty_children")

    def __init__(self, f: Filesystem):
        self.entries = f.as_dict()
        counts: dict[NodePath, int] = {}
        for n, v in self.entries.items():
            if v.tag is not E and not n.is_root:
                p = n.parent
                counts[p] = counts.get(p, 0) + 1
        self.nonempty_children = counts

    def step(self, c: Command) -> bool:
        entries = self.entries
        node = c.node
        old = entries.get(node, E0)
        if old.tag is not c.input:
            return False
        new = c.replacement
        root = node.is_root
        if new.tag is not E and not root and entries.get(node.parent, E0).tag is not D:
            return False
        if new.tag is not D and self.nonempty_children.get(node, 0):
            return False
        if new == E0:
            entries.pop(node, None)
        else:
            entries[node] = new
        if not root and (old.tag is E) != (new.tag is E):
            p = node.parent
            self.nonempty_children[p] = self.nonempty_children.get(p, 0) + (1 if old.tag is E else -1)
        return True


def apply(c: Command, f: Filesystem) -> Outcome:
    state = _State(f)
    if not state.step(c):
        return BROKEN
    return Filesystem._trusted(state.entries)


def apply_seq(seq: Iterable[Command], f: Union[Filesystem, Broken]) -> Outcome:
    """Left-to-right application; :data:`BROKEN` is absorbing."""
    if f is BROKEN:
        return BROKEN
    state = _State(f)
    for c in seq:
        if not state.step(c):
            return BROKEN
    return Filesystem._trusted(state.entries)


def node_map(seq: Iterable[Command]) -> dict[NodePath, Command]:
    """Index commands of a sequence by node; raises if a node repeats."""
    out: dict[NodePath, Command] = {}
    for c in seq:
        if c.node in out:
            raise ContractViolation(f"more than one command on node {c.node}")
        out[c.node] = c
    return out
