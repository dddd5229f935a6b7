"""Brute-force semantics over a small finite domain.

Every filesystem over a closed set of nodes is enumerated, each command is
compiled once into a transition table over those filesystems, and sequence
relations are decided by running the tables on every start state.  This is
the ground truth the syntactic algorithms are tested against.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .commands import BROKEN, Command, apply
from .fs import D, E, Filesystem, NodePath, PathLike, TypeTag, Value, ValueUniverse, as_path


class Domain:
    """A finite set of nodes closed under parent, with a finite universe.

    Sizes grow as roughly ``|values| ** |nodes|``; the default 5-node domain
    with two values per type has 1632 filesystems.
    """

    def __init__(self, nodes: Iterable[PathLike], universe: Optional[ValueUniverse] = None):
        self.nodes = tuple(sorted({as_path(n) for n in nodes}))
        self.universe = universe or ValueUniverse.synthetic(2)
        node_set = self._node_set = set(self.nodes)
        for n in self.nodes:
            if not n.is_root and n.parent not in node_set:
                raise ValueError(f"domain is not closed under parent: {n}")
        self.values = tuple(self.universe.all_values())
        self._filesystems: Optional[tuple[Filesystem, ...]] = None
        self._index: Optional[dict[Filesystem, int]] = None
        self._tables: dict[Command, np.ndarray] = {}

    @classmethod
    def default(cls) -> Domain:
        return cls(["a", "b", "a/b", "a/c", "a/b/x"])

    @property
    def filesystems(self) -> tuple[Filesystem, ...]:
        if self._filesystems is None:
            self._filesystems = tuple(self._enumerate())
            self._index = {f: i for i, f in enumerate(self._filesystems)}
        return self._filesystems

    @property
    def size(self) -> int:
        return len(self.filesystems)

    @property
    def broken_index(self) -> int:
        """Index standing for the broken outcome in result vectors."""
        return self.size

    def index(self, f: Filesystem) -> int:
        self.filesystems
        return self._index[f]

    def _enumerate(self) -> Iterator[Filesystem]:
        nodes = self.nodes
        empties = tuple(v for v in self.values if v.tag is E)
        assigned: dict[NodePath, Value] = {}

        def rec(i):
            if i == len(nodes):
                yield Filesystem(assigned)
                return
            n = nodes[i]
            if n.is_root or assigned[n.parent].tag is D:
                choices = self.values
            else:
                choices = empties
            for v in choices:
                assigned[n] = v
                yield from rec(i + 1)
            del assigned[n]

        # parents sort before their children, so they are assigned first
        yield from rec(0)

    def commands(self) -> list[Command]:
        """Every command on a domain node with a universe value."""
        return [Command(n, t, v) for n in self.nodes for t in TypeTag for v in self.values]

    def table(self, c: Command) -> np.ndarray:
        """Outcome index of ``c`` on every filesystem, plus the broken sink."""
        tab = self._tables.get(c)
        if tab is None:
            if c.node not in self._node_set or c.replacement not in self.values:
                raise ValueError(f"command {c} leaves the domain")
            fss = self.filesystems
            tab = np.empty(len(fss) + 1, dtype=np.int32)
            for i, f in enumerate(fss):
                r = apply(c, f)
                tab[i] = self.size if r is BROKEN else self._index[r]
            tab[-1] = self.size
            self._tables[c] = tab
        return tab

    def run(self, seq: Sequence[Command]) -> np.ndarray:
        """Outcome index of ``seq`` from every filesystem (``broken_index`` if it breaks)."""
        out = np.arange(self.size, dtype=np.int32)
        for c in seq:
            out = self.table(c)[out]
        return out

    def applies(self, seq: Sequence[Command]) -> np.ndarray:
        """Boolean mask of filesystems ``seq`` does not break."""
        return self.run(seq) != self.size


def enumerate_filesystems(d: Domain) -> Iterator[Filesystem]:
    return iter(d.filesystems)


def sem_equivalent(a: Sequence[Command], b: Sequence[Command], d: Domain) -> bool:
    return bool(np.array_equal(d.run(a), d.run(b)))


def sem_extends(a: Sequence[Command], b: Sequence[Command], d: Domain) -> bool:
    """``b`` agrees with ``a`` wherever ``a`` does not break."""
    ra, rb = d.run(a), d.run(b)
    ok = ra != d.size
    return bool(np.array_equal(ra[ok], rb[ok]))


def breaks_everywhere(a: Sequence[Command], d: Domain) -> bool:
    return not d.applies(a).any()


def models(premises: Iterable[Sequence[Command]], c: Sequence[Command], d: Domain) -> bool:
    """Wherever no premise breaks, ``c`` does not break either."""
    ok = np.ones(d.size, dtype=bool)
    for p in premises:
        ok &= d.applies(p)
    return bool(d.applies(c)[ok].all())


def refluent_oracle(a: Sequence[Command], b: Sequence[Command], d: Domain) -> Optional[Filesystem]:
    """The first filesystem (in enumeration order) both sequences apply to."""
    both = d.applies(a) & d.applies(b)
    hits = np.flatnonzero(both)
    return d.filesystems[hits[0]] if len(hits) else None
