import itertools

import numpy as np
import pytest

from fsrec import (BROKEN, D, D0, D1, E, E0, E1, F, F0, F1, CommandKind, Filesystem,
                   apply, apply_seq, category, cmd, cmd_type, independent, precedes)
from fsrec.errors import ContractViolation


def test_apply_examples():
    assert apply(cmd("a/b", "E", F0), Filesystem({"a": D0})) == Filesystem({"a": D0, "a/b": F0})
    assert apply(cmd("a", "D", E0), Filesystem({"a": D0, "a/b": F0})) is BROKEN
    assert apply(cmd("a", "F", F1), Filesystem({"a": D0})) is BROKEN


def test_apply_under_missing_parent_breaks():
    assert apply(cmd("a/b", "E", F0), Filesystem()) is BROKEN


def test_apply_seq_examples():
    f = Filesystem({"a": D0})
    assert apply_seq([], f) == f
    assert apply_seq([cmd("a", "E", D0), cmd("a/b", "E", F0)], Filesystem()) == Filesystem({"a": D0, "a/b": F0})
    assert apply_seq([cmd("a", "E", D0), cmd("a", "E", F0)], Filesystem()) is BROKEN


def test_category():
    assert category(cmd("a", "E", F0)) is CommandKind.UP
    assert category(cmd("a", "D", F0)) is CommandKind.DOWN
    assert category(cmd("a", "D", D1)) is CommandKind.TRANSIENT_D
    kinds = {category(cmd("a", t, v)) for t in "DFE" for v in (D0, F0, E0)}
    assert len(kinds) == 5


def test_precedes_examples():
    assert precedes(cmd("a/b", "F", E0), cmd("a", "D", E0))
    assert precedes(cmd("a", "E", D0), cmd("a/b", "E", F0))
    assert not precedes(cmd("a", "D", D1), cmd("a/b", "E", F0))


def test_independent_examples():
    assert independent(cmd("a", "D", D1), cmd("a/b", "F", F1))
    assert independent(cmd("a", "D", E0), cmd("a/b", "E", E1))
    assert not independent(cmd("a", "F", D0), cmd("a/b", "E", F0))
    with pytest.raises(ContractViolation):
        independent(cmd("a", "F", F0), cmd("a", "F", F1))


def test_cmd_type():
    assert cmd_type(cmd("a", "E", F0)) == cmd_type(cmd("a", "E", F1))
    t = cmd_type(cmd("a/b", "D", E1))
    assert (str(t.node), t.input, t.output) == ("a/b", D, E)


def _pairs(d):
    cs = d.commands()
    return [(s, t) for s in cs for t in cs if s.node != t.node]


def test_pair_relations_against_oracle(dom5):
    """Trichotomy, ordering and independence of different-node pairs."""
    for s, t in _pairs(dom5):
        st, ts = dom5.run([s, t]), dom5.run([t, s])
        n = dom5.size
        same = np.array_equal(st, ts)
        assert independent(s, t) == (same and bool((st != n).any())), (s, t)
        if not independent(s, t):
            assert precedes(s, t) == bool((st != n).any()), (s, t)
        # pairs that break in both orders count as commuting here
        assert [precedes(s, t), precedes(t, s), same].count(True) == 1, (s, t)


def test_precedes_shape(dom5):
    for s, t in itertools.product(dom5.commands(), repeat=2):
        if precedes(s, t):
            assert not precedes(t, s)
            assert category(s) is category(t)
            assert category(s) in (CommandKind.UP, CommandKind.DOWN)
            assert s.node.comparable(t.node)
            assert abs(s.node.depth - t.node.depth) == 1
