import pytest

from fsrec import (BROKEN, D0, D1, E0, E1, F0, F1, Filesystem, apply_seq,
                   applicable_by_characterization, cmd, detect, intersect_tp,
                   is_breaking_simple, minus_tp, reduce,
                   refluent, refluent_node_disjoint, witness)
from fsrec.errors import ContractViolation
from fsrec.oracle import refluent_oracle

import gen

RMDIR = [cmd("a/b", "F", E0), cmd("a", "D", E0)]


class TestCharacterization:
    def test_examples(self):
        assert applicable_by_characterization(RMDIR, Filesystem({"a": D0, "a/b": F0})).passed
        rep = applicable_by_characterization(RMDIR, Filesystem({"a": D0, "a/b": F0, "a/c": F0}))
        assert not rep
        (fail,) = rep.failures
        assert fail.clause == "c" and fail.command == cmd("a", "D", E0) and str(fail.node) == "a/c"
        assert apply_seq(RMDIR, Filesystem({"a": D0, "a/b": F0, "a/c": F0})) is BROKEN
        assert applicable_by_characterization([cmd("a", "E", E1)], Filesystem()).passed

    def test_up_leader_needs_directories_above(self):
        rep = applicable_by_characterization([cmd("a/b", "E", F0)], Filesystem({"a": F0}))
        assert [f.clause for f in rep.failures] == ["b"]

    def test_rejects_breaking(self):
        with pytest.raises(ContractViolation):
            applicable_by_characterization(RMDIR[::-1], Filesystem())

    def test_random_agreement(self, dom5):
        r = gen.rng(21)
        for _ in range(400):
            s = gen.random_simple(dom5, r)
            mask = dom5.applies(s)
            for i in r.sample(range(dom5.size), 25):
                f = dom5.filesystems[i]
                assert applicable_by_characterization(s, f).passed == bool(mask[i]), (s, f)


class TestWitness:
    def test_examples(self):
        assert witness([cmd("a", "E", D0), cmd("a/b", "E", F0)]) == Filesystem()
        assert witness(RMDIR) == Filesystem({"a": D0, "a/b": F0})
        assert witness([cmd("a", "E", E1)]) == Filesystem()

    def test_applies(self, dom5):
        r = gen.rng(22)
        for _ in range(500):
            s = gen.random_simple(dom5, r)
            assert apply_seq(s, witness(s)) is not BROKEN


class TestNodeDisjoint:
    def test_examples(self, dom5):
        assert refluent_node_disjoint([cmd("a/b", "F", F1)], [cmd("a/c", "E", F0)])
        assert refluent_oracle([cmd("a/b", "F", F1)], [cmd("a/c", "E", F0)], dom5) is not None
        assert refluent_node_disjoint([cmd("a/b", "E", F0)], [cmd("a", "D", E0)])
        assert not refluent_node_disjoint([cmd("a/b", "E", F0)], [cmd("a", "F", E0)])
        assert refluent_oracle([cmd("a/b", "E", F0)], [cmd("a", "F", E0)], dom5) is None

    def test_shared_node_is_a_contract_violation(self):
        with pytest.raises(ContractViolation):
            refluent_node_disjoint([cmd("a", "F", F1)], [cmd("a", "F", F0)])


class TestRefluent:
    def test_examples(self):
        assert refluent([cmd("a", "F", F0)], [cmd("a", "F", F1)]) == (True, Filesystem({"a": F0}))
        assert refluent([cmd("a", "F", F0)], [cmd("a", "D", D1)]) == (False, None)
        assert refluent([cmd("a/b", "E", F0)], [cmd("a", "F", E0)]) == (False, None)

    def test_breaking_input_is_not_refluent(self):
        assert refluent(RMDIR[::-1], [])[0] is False

    def test_agrees_with_oracle(self, dom5):
        r = gen.rng(23)
        for _ in range(3000):
            a, b = gen.random_simple(dom5, r), gen.random_simple(dom5, r)
            ok, f = refluent(a, b)
            assert ok == (refluent_oracle(a, b, dom5) is not None), (a, b)
            if ok:
                assert apply_seq(a, f) is not BROKEN and apply_seq(b, f) is not BROKEN

    def test_common_prefix(self, dom5):
        # prefixing both sides with the same sequence keeps refluence
        r = gen.rng(24)
        hits, seen = 0, set()
        while hits < 500:
            f0 = gen.random_fs(dom5, r)
            g0 = f0 if r.random() < 0.5 else gen.random_fs(dom5, r)
            ga, gb = detect(f0, gen.random_fs(dom5, r)), detect(g0, gen.random_fs(dom5, r))
            shared = set(ga) & set(gb)
            pre = [c for c in ga if c in shared]
            a = [c for c in ga if c not in shared]
            b = [c for c in gb if c not in shared]
            if any(is_breaking_simple(s) for s in (pre + a, pre + b, a, b)):
                continue
            hits += 1
            ok = refluent(pre + a, pre + b)[0]
            assert ok == refluent(a, b)[0], (pre, a, b)
            seen.add((ok, bool(pre)))
        assert seen == {(True, True), (True, False), (False, True), (False, False)}


def test_tp_sets():
    assert intersect_tp([cmd("a", "F", F1)], [cmd("a", "F", F0)]) == {cmd("a", "F", F1)}
    assert intersect_tp([cmd("a", "F", F1)], [cmd("a", "F", E0)]) == set()
    assert intersect_tp([cmd("a", "F", F1)], [cmd("b", "F", F1)]) == set()
    assert minus_tp([cmd("a", "F", F1)], [cmd("a", "F", F0)]) == set()
    assert minus_tp([cmd("a", "F", F1)], [cmd("a", "F", E0)]) == {cmd("a", "F", F1)}
    assert minus_tp([cmd("a", "F", F1)], [cmd("b", "F", F1)]) == {cmd("a", "F", F1)}


class TestReduce:
    def test_examples(self):
        sp = reduce([cmd("a", "F", F1), cmd("b", "E", D0)], [cmd("a", "F", F0), cmd("c", "E", F0)])
        assert (sp.alpha1, sp.alpha2) == ([cmd("a", "F", F1)], [cmd("b", "E", D0)])
        assert (sp.beta1, sp.beta2) == ([cmd("a", "F", F0)], [cmd("c", "E", F0)])
        sp = reduce([cmd("a", "F", F1)], [cmd("a", "F", F1)])
        assert sp.alpha1 == sp.beta1 == [cmd("a", "F", F1)] and sp.alpha2 == sp.beta2 == []
        sp = reduce(RMDIR, [cmd("a/b", "F", F1)])
        assert sp.alpha1 == [] and sp.alpha2 == RMDIR and sp.beta2 == [cmd("a/b", "F", F1)]

    def test_non_refluent(self):
        with pytest.raises(ContractViolation):
            reduce([cmd("a", "F", F0)], [cmd("a", "D", D1)])

    def test_split_properties(self, dom5):
        r = gen.rng(25)
        for _ in range(400):
            a, b = gen.random_refluent_pair(dom5, r)
            sp = reduce(a, b)
            assert set(sp.alpha1) | set(sp.alpha2) == set(a)
            assert set(sp.beta1) | set(sp.beta2) == set(b)
            assert refluent(sp.alpha2, sp.beta2)[0]
            assert dom5.run(list(sp.alpha1) + list(sp.alpha2)).tolist() == dom5.run(a).tolist()
