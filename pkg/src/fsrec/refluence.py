"""Joint applicability (refluence) of simple sequences."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .commands import Command, cmd_type, independent, matches
from .errors import ContractViolation, TreeViolation
from .fs import CANONICAL, D, E, Filesystem, NodePath, TypeTag
from .rewriting import SimpleSequence, is_breaking_simple, leaders


@dataclass(frozen=True)
class ClauseFailure:
    command: Command
    clause: str  # "a" input type, "b" ancestors of an up leader, "c" below a down command
    node: NodePath

    def __str__(self) -> str:
        return f"clause ({self.clause}) fails for {self.command} at {self.node}"


@dataclass(frozen=True)
class ApplicabilityReport:
    failures: tuple[ClauseFailure, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.passed


def _require_non_breaking(seq: Sequence[Command]) -> None:
    if is_breaking_simple(seq):
        raise ContractViolation("sequence breaks every filesystem")


def applicable_by_characterization(seq: Sequence[Command], f: Filesystem) -> ApplicabilityReport:
    """Decide whether ``seq`` applies to ``f`` without running it.

    (a) every command finds its input type; (b) every up leader creating a
    file or directory has only directories above it; (c) below every command
    turning a directory into a file or empty, every non-empty node is itself
    mentioned in ``seq``.
    """
    _require_non_breaking(seq)
    mentioned = {c.node for c in seq}
    lead = leaders(seq)
    failures = []
    for c in seq:
        n = c.node
        if f[n].tag is not c.input:
            failures.append(ClauseFailure(c, "a", n))
        if c in lead and matches(c, "E", "FD"):
            for m in n.ancestors():
                if f[m].tag is not D:
                    failures.append(ClauseFailure(c, "b", m))
        if matches(c, "D", "FE"):
            for m in sorted(f.descendants(n)):
                if f[m].tag is not E and m not in mentioned:
                    failures.append(ClauseFailure(c, "c", m))
    return ApplicabilityReport(tuple(failures))


def witness(seq: Sequence[Command]) -> Filesystem:
    """A filesystem the non-breaking simple sequence applies to."""
    _require_non_breaking(seq)
    entries = {}
    for c in sorted(leaders(seq)):
        if matches(c, "E", "E"):
            continue
        for m in c.node.ancestors():
            entries[m] = CANONICAL[D]
        entries[c.node] = CANONICAL[c.input]
    f = Filesystem(entries)
    assert applicable_by_characterization(seq, f).passed
    return f


def refluent_node_disjoint(a: Sequence[Command], b: Sequence[Command]) -> bool:
    """Refluence of node-disjoint non-breaking simple sequences, by leader conditions."""
    if {c.node for c in a} & {c.node for c in b}:
        raise ContractViolation("sequences share a node")
    _require_non_breaking(a)
    _require_non_breaking(b)
    return _leaders_ok(a, b) and _leaders_ok(b, a)


def _leaders_ok(a: Sequence[Command], b: Sequence[Command]) -> bool:
    b_by_node = {c.node: c for c in b}
    b_leaders = leaders(b)
    for s in leaders(a):
        if all(independent(s, t) for t in b):
            continue
        n = s.node
        if matches(s, "E", "FD") and not n.is_root:
            p = b_by_node.get(n.parent)
            if p is not None and matches(p, "D", "FE"):
                continue
        if matches(s, "D", "FE") and any(
            matches(t, "E", "FD") and not t.node.is_root and t.node.parent == n
            for t in b_leaders
        ):
            continue
        return False
    return True


def refluent(a: Sequence[Command], b: Sequence[Command]) -> tuple[bool, Optional[Filesystem]]:
    """Decide whether some filesystem admits both sequences, with a witness.

    Applicability only depends on value types at command nodes and their
    ancestors.  Command nodes have their type fixed by the input types; every
    other ancestor is made a directory unless a non-directory above it or a
    directory-removing command above it forces it empty, which is never worse
    for either sequence.  The single resulting candidate is then checked.
    Breaking sequences are never refluent.
    """
    if is_breaking_simple(a) or is_breaking_simple(b):
        return False, None
    types: dict[NodePath, TypeTag] = {}
    for c in list(a) + list(b):
        if types.setdefault(c.node, c.input) is not c.input:
            return False, None
    clears = {c.node for c in list(a) + list(b) if matches(c, "D", "FE")}
    free = set()
    for n in types:
        for m in n.ancestors():
            if m in types or m in free:
                break
            free.add(m)
    for m in sorted(free, key=lambda p: p.depth):
        forced_empty = False
        for anc in m.ancestors():
            if types[anc] is not D or anc in clears:
                forced_empty = True
                break
        types[m] = E if forced_empty else D
    try:
        f = Filesystem({n: CANONICAL[t] for n, t in types.items()})
    except TreeViolation:
        return False, None
    if applicable_by_characterization(a, f) and applicable_by_characterization(b, f):
        return True, f
    return False, None


def intersect_tp(a: Sequence[Command], b: Sequence[Command]) -> set[Command]:
    """Commands of ``a`` with the same node, input and output type as one in ``b``."""
    types = {cmd_type(t) for t in b}
    return {s for s in a if cmd_type(s) in types}


def minus_tp(a: Sequence[Command], b: Sequence[Command]) -> set[Command]:
    types = {cmd_type(t) for t in b}
    return {s for s in a if cmd_type(s) not in types}


@dataclass(frozen=True)
class ReductionSplit:
    alpha1: SimpleSequence
    alpha2: SimpleSequence
    beta1: SimpleSequence
    beta2: SimpleSequence


def reduce(a: Sequence[Command], b: Sequence[Command]) -> ReductionSplit:
    """Split refluent sequences into their shared-type parts and the rest."""
    if not refluent(a, b)[0]:
        raise ContractViolation("sequences are not refluent")
    a_shared, b_shared = intersect_tp(a, b), intersect_tp(b, a)
    return ReductionSplit(
        SimpleSequence(c for c in a if c in a_shared),
        SimpleSequence(c for c in a if c not in a_shared),
        SimpleSequence(c for c in b if c in b_shared),
        SimpleSequence(c for c in b if c not in b_shared),
    )
