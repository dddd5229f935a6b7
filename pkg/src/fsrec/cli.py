"""Command-line interface.

Exit status: 0 on success, 1 when reconcile reports conflicts or a check
answers no, 2 on breaking sequences, parse errors and I/O errors.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from . import formats
from .commands import BROKEN, apply_seq
from .detect import detect, normalize_log
from .errors import ContractViolation
from .fs import ValueUniverse
from .reconcile import Conflict, reconcile
from .refluence import refluent
from .rewriting import is_breaking_simple, is_simple



class CliError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fp:
        return fp.read()


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fp:
        fp.write(text)


def _read_simple(path: str):
    seq = formats.parse_seq(_read(path))
    if not is_simple(seq):
        raise CliError(f"{path}: not a simple sequence (run normalize first)")
    if is_breaking_simple(seq):
        raise CliError(f"{path}: sequence breaks every filesystem")
    return seq


def format_conflict(c: Conflict) -> str:
    return f"{c.kind.value}\t{c.node}\t{c.blocked}\t{c.blocking}\n"


def cmd_scan(args) -> int:
    f = formats.scan_directory(args.dir, root=args.root)
    _write(args.output, formats.serialize_fs(f))
    return 0


def cmd_detect(args) -> int:
    base = formats.parse_fs(_read(args.base))
    replica = formats.parse_fs(_read(args.replica))
    _write(args.output, formats.serialize_seq(detect(base, replica)))
    return 0


def cmd_normalize(args) -> int:
    seq = formats.parse_seq(_read(args.seq))
    universe = None if args.keep_noops else ValueUniverse.ingestion()
    result = normalize_log(seq, universe)
    if result is BROKEN:
        raise CliError("sequence breaks every filesystem")
    _write(args.output, formats.serialize_seq(result))
    return 0


def cmd_apply(args) -> int:
    f = formats.parse_fs(_read(args.snapshot))
    seq = formats.parse_seq(_read(args.seq))
    result = apply_seq(seq, f)
    if result is BROKEN:
        raise CliError("sequence breaks the snapshot")
    _write(args.output, formats.serialize_fs(result))
    return 0


def cmd_check(args) -> int:
    a, b = _read_simple(args.refluent[0]), _read_simple(args.refluent[1])
    ok, witness = refluent(a, b)
    if ok:
        sys.stdout.write("refluent\n")
        sys.stdout.write(formats.serialize_fs(witness))
        return 0
    sys.stdout.write("not refluent\n")
    return 1


def cmd_reconcile(args) -> int:
    a, b = _read_simple(args.seq_a), _read_simple(args.seq_b)
    if not refluent(a, b)[0]:
        raise CliError("sequences are not refluent: no common original filesystem")
    result = reconcile(a, b)
    if args.to_a:
        _write(args.to_a, formats.serialize_seq(result.apply_after_alpha))
    if args.to_b:
        _write(args.to_b, formats.serialize_seq(result.apply_after_beta))
    report = "".join(format_conflict(c) for c in result.conflicts)
    if args.conflicts:
        _write(args.conflicts, report)
    elif report:
        sys.stderr.write(report)
    return 1 if result.conflicts else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fsrec", description="file-synchronization reconciler")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("scan", help="snapshot a directory tree")
    s.add_argument("dir")
    s.add_argument("--root", help="root node name (default: the directory's base name)")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("detect", help="commands taking the base snapshot to the replica")
    s.add_argument("--base", required=True)
    s.add_argument("--replica", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_detect)

    s = sub.add_parser("normalize", help="reduce an operation log to a simple sequence")
    s.add_argument("seq")
    s.add_argument("--keep-noops", action="store_true",
                   help="keep E->e0 and D->dir commands instead of eliding them")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("apply", help="apply a sequence to a snapshot")
    s.add_argument("snapshot")
    s.add_argument("seq")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_apply)

    s = sub.add_parser("check", help="decide properties of sequence pairs")
    s.add_argument("--refluent", nargs=2, metavar="SEQ", required=True)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("reconcile", help="maximal reconcilers and conflicts")
    s.add_argument("seq_a")
    s.add_argument("seq_b")
    s.add_argument("--to-a", help="commands to apply to replica A")
    s.add_argument("--to-b", help="commands to apply to replica B")
    s.add_argument("--conflicts", help="conflict report (default: stderr)")
    s.set_defaults(func=cmd_reconcile)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="fsrec: %(levelname)s: %(message)s",
    )
    try:
        return args.func(args)
    except (CliError, formats.FormatError, ContractViolation, OSError) as e:
        sys.stderr.write(f"fsrec: error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
