"""Batch renderer for the bestshot figure CSVs."""

from figplot.render import SCHEMAS, SchemaError, load_rows, render

__version__ = "0.1.0"

__all__ = ["SCHEMAS", "SchemaError", "load_rows", "render"]
