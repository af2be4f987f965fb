"""
Scan Agent
Runs the raw mask scans behind extension enumeration and the forbidden-pattern report.
"""

import asyncio
from typing import Any, Dict, Optional

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

from models import CanonicalForm, ColoredDigraph, EnumerationResult, FilterSet
from services.enumeration_service import EnumerationService, Flags
from .base_agent import BaseAgent


class ScanAgent(BaseAgent):
    """Agent responsible for scanning edge subsets of K(i, n - i) and edge supersets of a base."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        super().__init__(config)
        self.service = EnumerationService(
            workers=self.config.get("workers"),
            chunk_bits=self.config.get("chunk_bits"),
            pair_budget=self.config.get("pair_budget"),
            convention=self.config.get("convention"),
        )

    @property
    def convention(self) -> str:
        return self.service.convention

    def scan_raw(self, n: int, i: int, filters: FilterSet) -> Dict[CanonicalForm, Flags]:
        """Scan with arbitrary filters, pruning structural ones inside the workers."""
        colors = tuple([0] * i + [1] * (n - i))
        return self.service.scan(colors, (), filters, prune=True)

    def extend(self, base: ColoredDigraph, filters: Optional[FilterSet] = None) -> EnumerationResult:
        """Extension classes of base; the default filter is the extension preset X."""
        filters = filters or FilterSet.preset("X")
        self.log_activity("extension_scan_started", {"n": base.n, "base_edges": base.edge_count})
        result = self.service.enumerate_extensions(base, filters)
        self.log_activity("extension_scan_completed", {"classes": result.count})
        return result

    async def execute(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        self.require_fields(input_data, ["base"])
        base = input_data["base"]
        try:
            result = await asyncio.to_thread(self.extend, base, input_data.get("filters"))
        except Exception as e:
            self.handle_error(e, context=f"extend base with {base.n} vertices")
            raise
        return {"base": base, "result": result}
