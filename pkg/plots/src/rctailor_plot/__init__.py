"""Figure rendering for rctailor sweep CSVs."""

from .figures import (
    AXIS_SCALES,
    GD_PREFIX,
    KINDS,
    REQUIRED_COLUMNS,
    FigureSpec,
    SchemaError,
    check_columns,
    read_table,
    render,
)

__all__ = [
    "AXIS_SCALES",
    "GD_PREFIX",
    "KINDS",
    "REQUIRED_COLUMNS",
    "FigureSpec",
    "SchemaError",
    "check_columns",
    "read_table",
    "render",
]
