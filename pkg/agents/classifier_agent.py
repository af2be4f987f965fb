"""
Classifier Agent
Produces classification rows and the member lists of the sets A..E for one split.
"""

import asyncio
from typing import Any, Dict, List, Optional, Tuple

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

from models import CanonicalForm, ClassificationRow
from services.enumeration_service import EnumerationService
from .base_agent import BaseAgent

Members = Dict[str, List[CanonicalForm]]


class ClassifierAgent(BaseAgent):
    """Agent wrapping EnumerationService.classify for the classification pipeline."""

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
        return self.service.classify_convention

    def classify(self, n: int, i: int, force: bool = False) -> Tuple[ClassificationRow, Members]:
        self.log_activity("classification_started", {"n": n, "i": i, "convention": self.convention})
        row, members = self.service.classify(n, i, force=force)
        self.log_activity("row_classified", {"n": n, "i": i, "counts": list(row.counts)})
        return row, members

    async def execute(self, input_data: Dict[str, Any]) -> Dict[str, Any]:
        self.require_fields(input_data, ["n", "i"])
        n, i = input_data["n"], input_data["i"]
        try:
            row, members = await asyncio.to_thread(self.classify, n, i, input_data.get("force", False))
        except Exception as e:
            self.handle_error(e, context=f"classify n={n} i={i}")
            raise
        return {"row": row, "members": members}
