"""
Command line surface and file formats
"""
from cli.commands import EXIT_ERROR, EXIT_FAIL, EXIT_OK, EXIT_UNKNOWN, build_parser, dispatch
from cli.files import (
    FamilyFile,
    FiniteDoctrineFile,
    ModelFile,
    PairFile,
    QueryResult,
    WitnessFile,
    parse_free1_query,
    parse_sequent,
    parse_theory,
    render_theory,
)

__all__ = [
    "EXIT_ERROR",
    "EXIT_FAIL",
    "EXIT_OK",
    "EXIT_UNKNOWN",
    "build_parser",
    "dispatch",
    "FamilyFile",
    "FiniteDoctrineFile",
    "ModelFile",
    "PairFile",
    "QueryResult",
    "WitnessFile",
    "parse_free1_query",
    "parse_sequent",
    "parse_theory",
    "render_theory",
]
