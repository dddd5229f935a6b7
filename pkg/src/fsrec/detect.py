"""State-based and log-based update detection."""
from __future__ import annotations

from typing import Iterable, Optional, Union

from .commands import Broken, Command
from .fs import Filesystem, ValueUniverse, diff
from .rewriting import SimpleSequence, order_simple_set, simplify


def detect(f0: Filesystem, f1: Filesystem) -> SimpleSequence:
    """The canonical simple sequence taking ``f0`` to ``f1``.

    One command per differing node, ordered to honor ``<<``.
    """
    changes = (Command(n, v0.tag, v1) for n, v0, v1 in diff(f0, f1))
    return order_simple_set(changes)


def normalize_log(
    log: Iterable[Command], universe: Optional[ValueUniverse] = None
) -> Union[SimpleSequence, Broken]:
    """Reduce an operation log to a simple sequence with the same effect
    wherever the log itself applies."""
    return simplify(log, universe)
