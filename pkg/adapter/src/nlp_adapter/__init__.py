"""Batch NLP adapter producing CoNLL-U parses from source records."""

from .backends import BuiltinParser, Row, SpacyParser, load_parser
from .config import BUILTIN_MODEL, DEFAULT_MODEL, AdapterConfig
from .errors import AdapterError
from .pipeline import AdapterStats, format_block, parse_records, read_records

__version__ = "0.1.0"

__all__ = [
    "AdapterConfig",
    "AdapterError",
    "AdapterStats",
    "BUILTIN_MODEL",
    "BuiltinParser",
    "DEFAULT_MODEL",
    "Row",
    "SpacyParser",
    "format_block",
    "load_parser",
    "parse_records",
    "read_records",
    "__version__",
]
