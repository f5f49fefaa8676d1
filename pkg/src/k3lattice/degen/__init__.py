"""Degeneration records, table loading and the verification battery."""

from .grammar import (
    Component,
    DegenerationError,
    DegenerationType,
    Diagram,
    Group,
    Matrix,
    pairwise_anomalies,
    parse_degeneration,
    parse_diagram,
)
from .records import (
    DegenerationRecord,
    GroupInfo,
    LoadError,
    MarkingRecord,
    OldCaseRecord,
    Reduction,
    TableModel,
    default_paths,
    load_tables,
)
from .verify import (
    CheckResult,
    check_reduction,
    genus_lookup,
    root_form,
    verify_all,
    verify_marking_bounds,
    verify_old_case,
    verify_record,
    verify_reduction,
)

__all__ = [
    "Component",
    "Diagram",
    "Group",
    "Matrix",
    "DegenerationType",
    "DegenerationError",
    "parse_degeneration",
    "parse_diagram",
    "pairwise_anomalies",
    "DegenerationRecord",
    "GroupInfo",
    "LoadError",
    "MarkingRecord",
    "OldCaseRecord",
    "Reduction",
    "TableModel",
    "default_paths",
    "load_tables",
    "CheckResult",
    "check_reduction",
    "genus_lookup",
    "root_form",
    "verify_all",
    "verify_marking_bounds",
    "verify_old_case",
    "verify_record",
    "verify_reduction",
]
