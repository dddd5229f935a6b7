"""Line-based file formats and ingestion of real directory trees.

Snapshot::

    fsrec-snapshot v1
    <path>\t<D|F|E>\t<token>        one line per non-default node, path order

Sequence::

    <path>\t<input D|F|E>\t<output D|F|E>:<token>   one command per line
"""
from __future__ import annotations

import hashlib
import logging
import os
from pathlib import Path
from typing import Iterable, Optional, Union

from .commands import Command
from .errors import TreeViolation
from .fs import DIR, E0, F, Filesystem, NodePath, TypeTag, Value

log = logging.getLogger(__name__)

SNAPSHOT_HEADER = "fsrec-snapshot v1"


class FormatError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def serialize_fs(f: Filesystem) -> str:
    lines = [SNAPSHOT_HEADER]
    for node, v in f.items():
        lines.append(f"{node}\t{v.tag.value}\t{v.token}")
    return "\n".join(lines) + "\n"


def _tag(text: str, lineno: int) -> TypeTag:
    try:
        return TypeTag(text)
    except ValueError:
        raise FormatError(f"unknown type tag {text!r}", lineno) from None


def _path(text: str, lineno: int) -> NodePath:
    try:
        return NodePath.parse(text)
    except ValueError as e:
        raise FormatError(str(e), lineno) from None


def _lines(text: str) -> Iterable[tuple[int, str]]:
    if text and not text.endswith("\n"):
        text += "\n"
    for i, line in enumerate(text.split("\n")[:-1], 1):
        yield i, line


def parse_fs(text: str) -> Filesystem:
    lines = list(_lines(text))
    if not lines or lines[0][1] != SNAPSHOT_HEADER:
        raise FormatError(f"missing header {SNAPSHOT_HEADER!r}", 1)
    entries: dict[NodePath, Value] = {}
    for lineno, line in lines[1:]:
        parts = line.split("\t")
        if len(parts) != 3:
            raise FormatError("expected <path> TAB <type> TAB <token>", lineno)
        node = _path(parts[0], lineno)
        try:
            v = Value(_tag(parts[1], lineno), parts[2])
        except ValueError as e:
            raise FormatError(str(e), lineno) from None
        if v == E0:
            raise FormatError(f"default empty value stored for {node}", lineno)
        if node in entries:
            raise FormatError(f"duplicate node {node}", lineno)
        entries[node] = v
    try:
        return Filesystem(entries)
    except TreeViolation as e:
        parent = e.node.parent
        raise FormatError(f"non-empty node {e.node} under non-directory {parent}") from None


def serialize_seq(seq: Iterable[Command]) -> str:
    return "".join(f"{c.node}\t{c.input.value}\t{c.replacement}\n" for c in seq)


def parse_seq(text: str) -> list[Command]:
    out = []
    for lineno, line in _lines(text):
        parts = line.split("\t")
        if len(parts) != 3:
            raise FormatError("expected <path> TAB <input> TAB <output>:<token>", lineno)
        node = _path(parts[0], lineno)
        tag = _tag(parts[1], lineno)
        out_tag, sep, token = parts[2].partition(":")
        if not sep:
            raise FormatError(f"replacement {parts[2]!r} is not <type>:<token>", lineno)
        try:
            v = Value(_tag(out_tag, lineno), token)
        except ValueError as e:
            raise FormatError(str(e), lineno) from None
        out.append(Command(node, tag, v))
    return out


def hash_file(path: Union[str, os.PathLike], blocksize: int = 1 << 16) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fp:
        while True:
            block = fp.read(blocksize)
            if not block:
                break
            h.update(block)
    return h.hexdigest()


def scan_directory(path: Union[str, os.PathLike], root: Optional[str] = None) -> Filesystem:
    """Snapshot a directory tree.

    The directory itself becomes the root node ``root`` (its base name by
    default).  Directories map to ``D:dir`` and regular files to
    ``F:<sha256 of contents>``.  Symlinks and special files are skipped with a
    warning.
    """
    base = Path(path)
    if not base.is_dir():
        raise NotADirectoryError(str(base))
    top = NodePath((root or base.resolve().name,))
    entries: dict[NodePath, Value] = {top: DIR}
    stack = [(base, top)]
    while stack:
        here, node = stack.pop()
        with os.scandir(here) as it:
            for entry in it:
                child = node.child(entry.name)
                if entry.is_symlink():
                    log.warning("skipping symlink %s", entry.path)
                elif entry.is_dir(follow_symlinks=False):
                    entries[child] = DIR
                    stack.append((Path(entry.path), child))
                elif entry.is_file(follow_symlinks=False):
                    entries[child] = Value(F, hash_file(entry.path))
                else:
                    log.warning("skipping special file %s", entry.path)
    return Filesystem(entries)
