"""
bmg_lab Agents Package
Classification, extension-scan and quality-check agents.
"""

from .base_agent import BaseAgent
from .scan_agent import ScanAgent
from .classifier_agent import ClassifierAgent
from .quality_checker import QualityChecker

__all__ = [
    "BaseAgent",
    "ScanAgent",
    "ClassifierAgent",
    "QualityChecker",
]
