"""Namespace, values and filesystem states.

A filesystem is a finitely supported map from node paths to values.  Nodes
that are not mapped hold the default empty value ``E0``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Union

from .errors import ContractViolation, TreeViolation

SEP = "/"


@dataclass(frozen=True, order=True, slots=True)
class NodePath:
    """A node of the namespace: a non-empty tuple of name segments."""

    segments: tuple[str, ...]

    def __post_init__(self):
        if not isinstance(self.segments, tuple):
            object.__setattr__(self, "segments", tuple(self.segments))
        if not self.segments:
            raise ValueError("a node path needs at least one segment")
        for seg in self.segments:
            if not seg or SEP in seg or "\t" in seg or "\n" in seg:
                raise ValueError(f"invalid path segment {seg!r}")

    @classmethod
    def parse(cls, text: str) -> NodePath:
        return cls(tuple(text.split(SEP)))

    def __str__(self) -> str:
        return SEP.join(self.segments)

    def __repr__(self) -> str:
        return f"NodePath({str(self)!r})"

    @property
    def depth(self) -> int:
        return len(self.segments)

    @property
    def is_root(self) -> bool:
        return len(self.segments) == 1

    @property
    def parent(self) -> NodePath:
        if len(self.segments) == 1:
            raise ContractViolation(f"root node {self} has no parent")
        return NodePath(self.segments[:-1])

    def child(self, name: str) -> NodePath:
        return NodePath(self.segments + (name,))

    def ancestors(self) -> Iterator[NodePath]:
        """Strict ancestors, nearest first."""
        segs = self.segments
        for i in range(len(segs) - 1, 0, -1):
            yield NodePath(segs[:i])

    def is_above(self, other: NodePath) -> bool:
        """Strict prefix order."""
        n = len(self.segments)
        return n < len(other.segments) and other.segments[:n] == self.segments

    def is_at_or_above(self, other: NodePath) -> bool:
        n = len(self.segments)
        return n <= len(other.segments) and other.segments[:n] == self.segments

    def comparable(self, other: NodePath) -> bool:
        return self.is_at_or_above(other) or other.is_at_or_above(self)


PathLike = Union[NodePath, str]


def as_path(p: PathLike) -> NodePath:
    return p if isinstance(p, NodePath) else NodePath.parse(p)


class TypeTag(str, enum.Enum):
    D = "D"
    F = "F"
    E = "E"

    def __str__(self) -> str:
        return self.value


D, F, E = TypeTag.D, TypeTag.F, TypeTag.E


@dataclass(frozen=True, order=True, slots=True)
class Value:
    tag: TypeTag
    token: str

    def __post_init__(self):
        if not isinstance(self.tag, TypeTag):
            object.__setattr__(self, "tag", TypeTag(self.tag))
        if not self.token or any(c in self.token for c in "\t\n"):
            raise ValueError(f"invalid value token {self.token!r}")

    @classmethod
    def parse(cls, text: str) -> Value:
        """Parse ``TAG:token``."""
        tag, sep, token = text.partition(":")
        if not sep:
            raise ValueError(f"value {text!r} is not of the form TAG:token")
        return cls(TypeTag(tag), token)

    def __str__(self) -> str:
        return f"{self.tag.value}:{self.token}"

    def __repr__(self) -> str:
        return f"Value({self.tag.value}:{self.token})"


D0, D1 = Value(D, "d0"), Value(D, "d1")
F0, F1 = Value(F, "f0"), Value(F, "f1")
E0, E1 = Value(E, "e0"), Value(E, "e1")
#: the single directory value produced when scanning real directories
DIR = Value(D, "dir")

CANONICAL = {D: D0, F: F0, E: E0}


def tp(v: Value) -> TypeTag:
    return v.tag


@dataclass(frozen=True)
class ValueUniverse:
    """The values available per type.

    ``None`` for a type means an unbounded set (file contents of real trees).
    The default empty value ``E0`` must belong to the empty type.
    """

    directories: Optional[frozenset[Value]]
    files: Optional[frozenset[Value]]
    empties: Optional[frozenset[Value]]

    def __post_init__(self):
        for tag, vals in zip((D, F, E), (self.directories, self.files, self.empties)):
            if vals is None:
                continue
            if not vals:
                raise ValueError(f"value set for {tag} must be non-empty")
            if any(v.tag is not tag for v in vals):
                raise ValueError(f"value set for {tag} holds values of another type")
        if self.empties is not None and E0 not in self.empties:
            raise ValueError("the default empty value must be in the universe")

    @classmethod
    def synthetic(cls, per_type: int = 2) -> ValueUniverse:
        def make(tag):
            return frozenset(Value(tag, f"{tag.value.lower()}{i}") for i in range(per_type))

        return cls(make(D), make(F), make(E))

    @classmethod
    def ingestion(cls) -> ValueUniverse:
        """Values produced by :func:`fsrec.formats.scan_directory`."""
        return cls(frozenset({DIR}), None, frozenset({E0}))

    def values(self, tag: TypeTag) -> Optional[frozenset[Value]]:
        return {D: self.directories, F: self.files, E: self.empties}[tag]

    def all_values(self) -> list[Value]:
        out = []
        for tag in (D, F, E):
            vals = self.values(tag)
            if vals is None:
                raise ContractViolation(f"universe is unbounded in type {tag}")
            out.extend(sorted(vals))
        return out

    def is_singleton(self, tag: TypeTag) -> bool:
        vals = self.values(tag)
        return vals is not None and len(vals) == 1

    def contains(self, v: Value) -> bool:
        vals = self.values(v.tag)
        return vals is None or v in vals


def is_tree(entries: Mapping[NodePath, Value]) -> bool:
    return _tree_violation(entries) is None


def _tree_violation(entries: Mapping[NodePath, Value]) -> Optional[NodePath]:
    for node, v in entries.items():
        if v.tag is E or node.is_root:
            continue
        parent = entries.get(node.parent, E0)
        if parent.tag is not D:
            return node
    return None


class Filesystem:
    """An immutable, finitely supported filesystem.

    ``fs[n]`` returns the value at ``n``, which is ``E0`` for unmapped nodes.
    Iteration yields the mapped nodes in path order.
    """

    __slots__ = ("_entries", "_hash", "_children")

    def __init__(self, entries: Union[Mapping[PathLike, Value], Iterable[tuple[PathLike, Value]]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        clean = {}
        for node, v in items:
            if v != E0:
                clean[as_path(node)] = v
        bad = _tree_violation(clean)
        if bad is not None:
            raise TreeViolation(bad)
        self._entries = clean
        self._hash = None
        self._children = None

    @classmethod
    def _trusted(cls, entries: dict[NodePath, Value]) -> Filesystem:
        fs = cls.__new__(cls)
        fs._entries = entries
        fs._hash = None
        fs._children = None
        return fs

    def __getitem__(self, node: PathLike) -> Value:
        if isinstance(node, str):
            node = NodePath.parse(node)
        return self._entries.get(node, E0)

    def __contains__(self, node: PathLike) -> bool:
        if isinstance(node, str):
            node = NodePath.parse(node)
        return node in self._entries

    def __iter__(self) -> Iterator[NodePath]:
        return iter(sorted(self._entries))

    def __len__(self) -> int:
        return len(self._entries)

    def items(self) -> list[tuple[NodePath, Value]]:
        return sorted(self._entries.items())

    def as_dict(self) -> dict[NodePath, Value]:
        return dict(self._entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Filesystem):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._entries.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{n}:{v}" for n, v in self.items())
        return "{" + body + "}"

    def children(self, node: NodePath) -> list[NodePath]:
        """Mapped children of ``node``."""
        if self._children is None:
            idx: dict[NodePath, list[NodePath]] = {}
            for n in self._entries:
                if not n.is_root:
                    idx.setdefault(n.parent, []).append(n)
            self._children = idx
        return self._children.get(node, [])

    def descendants(self, node: NodePath) -> Iterator[NodePath]:
        """Mapped strict descendants of ``node``."""
        stack = list(self.children(node))
        while stack:
            n = stack.pop()
            yield n
            stack.extend(self.children(n))


def replace(f: Filesystem, node: PathLike, x: Value) -> dict[NodePath, Value]:
    """Pointwise copy of ``f`` with ``x`` at ``node``; not checked for the tree property."""
    out = f.as_dict()
    node = as_path(node)
    if x == E0:
        out.pop(node, None)
    else:
        out[node] = x
    return out


def diff(f0: Filesystem, f1: Filesystem) -> set[tuple[NodePath, Value, Value]]:
    """Nodes where the filesystems differ, with both values."""
    out = set()
    for node in f0._entries.keys() | f1._entries.keys():
        v0, v1 = f0[node], f1[node]
        if v0 != v1:
            out.add((node, v0, v1))
    return out
