"""Finite-horizon toolkit for homogeneous-solution problems on the space of
strictly increasing sequences: codes and their transformations, exact
bounded-universe solvers, an executable reduction catalog, and a checked
database of degree facts."""

from .backend import backend, force_backend
from .core import (
    Classification,
    ClopenCode,
    HorizonTooSmall,
    HSReport,
    OpenCode,
    Universe,
    classify,
    complement_clopen,
    dominates,
    full_strings,
    is_subsequence,
    member_prefix,
    string,
    union_codes,
    validate_clopen,
)
from .solvers import (
    AvoidEvidence,
    DomainViolation,
    NotInDomain,
    ProblemKind,
    avigad_extract,
    solve,
    solve_brute,
    solve_pruned,
)
from .trees import TreeGen, bounded_subtree, find_full_path, kb_order, prefix_closure

__all__ = [
    "AvoidEvidence",
    "Classification",
    "ClopenCode",
    "DomainViolation",
    "HSReport",
    "HorizonTooSmall",
    "NotInDomain",
    "OpenCode",
    "ProblemKind",
    "TreeGen",
    "Universe",
    "avigad_extract",
    "backend",
    "bounded_subtree",
    "classify",
    "complement_clopen",
    "dominates",
    "find_full_path",
    "force_backend",
    "full_strings",
    "is_subsequence",
    "kb_order",
    "member_prefix",
    "prefix_closure",
    "solve",
    "solve_brute",
    "solve_pruned",
    "string",
    "union_codes",
    "validate_clopen",
]

__version__ = "0.1.0"
