"""Sheaf computations over support schemes of infinitesimal group families."""

from ._core import (
    Group,
    InputError,
    Module,
    PreconditionError,
    f_report,
    group,
    h_report,
    is_projective_at,
    jordan_type,
    module,
    sample_jordan_types,
    sample_points,
    support_ideal,
    theta,
)

__all__ = [
    "Group",
    "InputError",
    "Module",
    "PreconditionError",
    "f_report",
    "group",
    "h_report",
    "is_projective_at",
    "jordan_type",
    "module",
    "sample_jordan_types",
    "sample_points",
    "support_ideal",
    "theta",
]
