"""Reconciliation of diverged filesystem replicas by command-sequence algebra."""

from .commands import (
    BROKEN,
    Broken,
    Command,
    CommandKind,
    CommandType,
    apply,
    apply_seq,
    category,
    cmd,
    cmd_type,
    independent,
    precedes,
)
from .detect import detect, normalize_log
from .errors import ContractViolation, TreeViolation
from .fs import (
    D,
    D0,
    D1,
    DIR,
    E,
    E0,
    E1,
    F,
    F0,
    F1,
    Filesystem,
    NodePath,
    TypeTag,
    Value,
    ValueUniverse,
    diff,
    is_tree,
    replace,
    tp,
)
from .reconcile import (
    Conflict,
    ConflictKind,
    ReconcileResult,
    classify_conflicts,
    confluent,
    reconcile,
    reconciler_for,
)
from .refluence import (
    ApplicabilityReport,
    ReductionSplit,
    applicable_by_characterization,
    intersect_tp,
    minus_tp,
    reduce,
    refluent,
    refluent_node_disjoint,
    witness,
)
from .rewriting import (
    NodeClassification,
    RewriteKind,
    RewriteOutcome,
    SimpleSequence,
    Simplifier,
    classify_simple_set,
    equivalent_simple,
    honors_order,
    is_breaking_simple,
    is_simple,
    is_simple_set,
    leaders,
    order_simple_set,
    rewrite_pair,
    simplify,
)

__version__ = "0.1.0"
