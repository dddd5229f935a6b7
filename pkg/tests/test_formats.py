import logging
import os

import pytest

from fsrec import D0, E0, E1, F, F0, Filesystem, Value, cmd
from fsrec.formats import (FormatError, parse_fs, parse_seq, scan_directory, serialize_fs,
                           serialize_seq)
from fsrec.fs import DIR

import gen

HI_SHA256 = "8f434346648f6b96df89dda901c5176b10a6d83961dd3c1ac88b59b2dc327aa4"


class TestSnapshot:
    def test_serialize(self):
        f = Filesystem({"a": D0, "a/b": F0})
        assert serialize_fs(f) == "fsrec-snapshot v1\na\tD\td0\na/b\tF\tf0\n"

    def test_empty_body(self):
        assert parse_fs("fsrec-snapshot v1\n") == Filesystem()

    def test_tree_violation(self):
        with pytest.raises(FormatError, match="non-empty node a/b under non-directory a"):
            parse_fs("fsrec-snapshot v1\na\tF\tf0\na/b\tF\tf0")

    @pytest.mark.parametrize("body,line", [
        ("a\tD\n", 2),
        ("a\tQ\tq\n", 2),
        ("a\tD\td0\na\tD\td1\n", 3),
        ("a\tE\te0\n", 2),
    ])
    def test_errors_carry_line(self, body, line):
        with pytest.raises(FormatError) as ei:
            parse_fs("fsrec-snapshot v1\n" + body)
        assert ei.value.line == line

    def test_missing_header(self):
        with pytest.raises(FormatError):
            parse_fs("a\tD\td0\n")

    def test_round_trip(self, dom5):
        for f in dom5.filesystems[::7]:
            text = serialize_fs(f)
            assert parse_fs(text) == f
            assert serialize_fs(parse_fs(text)) == text

    def test_non_default_empty_is_stored(self):
        f = Filesystem({"a": E1})
        assert parse_fs(serialize_fs(f)) == f


class TestSequence:
    def test_serialize(self):
        assert serialize_seq([cmd("a/b", "F", E0)]) == "a/b\tF\tE:e0\n"
        assert serialize_seq([]) == ""

    def test_unknown_tag(self):
        with pytest.raises(FormatError, match="unknown type tag"):
            parse_seq("a\tQ\tF:f0")

    def test_error_line(self):
        with pytest.raises(FormatError) as ei:
            parse_seq("a\tF\tF:f0\na\tF\tf0\n")
        assert ei.value.line == 2

    def test_round_trip_keeps_order(self, dom5):
        r = gen.rng(51)
        cs = dom5.commands()
        for _ in range(50):
            s = [r.choice(cs) for _ in range(r.randint(0, 6))]
            assert parse_seq(serialize_seq(s)) == s

    def test_token_with_colon(self):
        s = [cmd("a", "E", Value(F, "x:y"))]
        assert parse_seq(serialize_seq(s)) == s


class TestScan:
    def test_file(self, tmp_path):
        (tmp_path / "x").write_bytes(b"hi")
        f = scan_directory(tmp_path, root="r")
        assert f == Filesystem({"r": DIR, "r/x": Value(F, HI_SHA256)})

    def test_empty_dir(self, tmp_path):
        assert scan_directory(tmp_path, root="r") == Filesystem({"r": DIR})

    def test_default_root_is_base_name(self, tmp_path):
        d = tmp_path / "tree"
        d.mkdir()
        assert scan_directory(d) == Filesystem({"tree": DIR})

    def test_symlink_skipped(self, tmp_path, caplog):
        (tmp_path / "target").mkdir()
        d = tmp_path / "t"
        d.mkdir()
        os.symlink(tmp_path / "target", d / "link")
        with caplog.at_level(logging.WARNING):
            assert scan_directory(d, root="r") == Filesystem({"r": DIR})
        assert "symlink" in caplog.text

    def test_nested(self, tmp_path):
        (tmp_path / "s" / "t").mkdir(parents=True)
        (tmp_path / "s" / "t" / "f").write_bytes(b"hi")
        f = scan_directory(tmp_path, root="r")
        assert f["r/s/t/f"] == Value(F, HI_SHA256)
        assert f["r/s"] == DIR

    def test_not_a_directory(self, tmp_path):
        (tmp_path / "x").write_bytes(b"")
        with pytest.raises(NotADirectoryError):
            scan_directory(tmp_path / "x")
