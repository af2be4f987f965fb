"""
bmg_lab Services Package
Graph formats, axiom checks, structural algorithms, constructions and enumeration.
"""

from .enumeration_service import EnumerationService
from .export_service import ExportService
from .fixture_service import FixtureService
from .random_source import LinearGenerator

__all__ = [
    "EnumerationService",
    "ExportService",
    "FixtureService",
    "LinearGenerator",
]
