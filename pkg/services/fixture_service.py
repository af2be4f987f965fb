"""
Fixture Service
JSON-backed catalogue of named reference graphs: the worked examples, the
elementary bases and the published classification members.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple
from loguru import logger

import sys
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import FIXTURES_FILE, PUBLISHED_E_LISTS, PUBLISHED_EXTENSION_LISTS
from models import ColoredDigraph
from exceptions import GraphFormatError
from services.notation_service import parse_graph


def _unique_keys(pairs: List[Tuple[str, Any]]) -> Dict[str, Any]:
    """object_pairs_hook rejecting repeated keys."""
    seen: Dict[str, Any] = {}
    for key, value in pairs:
        if key in seen:
            raise GraphFormatError(f"duplicate fixture key '{key}'")
        seen[key] = value
    return seen


class FixtureService:
    """Service for looking up reference graphs by name."""

    def __init__(self, fixtures_file: Optional[Path] = None):
        self.fixtures_file = Path(fixtures_file or FIXTURES_FILE)
        self._data: Optional[Dict[str, Dict]] = None
        self._graphs: Dict[str, ColoredDigraph] = {}

    def _load_data(self) -> Dict[str, Dict]:
        """Load the fixture manifest from JSON."""
        if self._data is not None:
            return self._data

        if not self.fixtures_file.exists():
            raise GraphFormatError(f"fixture manifest not found: {self.fixtures_file}")
        try:
            with open(self.fixtures_file, "r") as f:
                document = json.load(f, object_pairs_hook=_unique_keys)
        except json.JSONDecodeError as e:
            raise GraphFormatError(f"fixture manifest {self.fixtures_file} is not valid JSON: {e}") from e

        self._data = document.get("graphs", {})
        logger.debug(f"Loaded {len(self._data)} fixtures from {self.fixtures_file}")
        return self._data

    def names(self) -> List[str]:
        return sorted(self._load_data())

    def entry(self, name: str) -> Dict:
        """Raw manifest entry: graph text, colors sidecar and a short description."""
        data = self._load_data()
        if name not in data:
            raise GraphFormatError(f"unknown fixture '{name}'")
        return data[name]

    def get_graph(self, name: str) -> ColoredDigraph:
        if name not in self._graphs:
            entry = self.entry(name)
            self._graphs[name] = parse_graph(entry["graph"], entry.get("colors"))
        return self._graphs[name]

    def e_members(self, n: int, i: int) -> List[ColoredDigraph]:
        """Published E-set members for class sizes i and n - i; empty when none are listed."""
        return [self.get_graph(name) for name in PUBLISHED_E_LISTS.get((n, i), [])]

    def extension_members(self, base: str) -> List[ColoredDigraph]:
        """Published extension classes of an elementary base fixture."""
        if base not in PUBLISHED_EXTENSION_LISTS:
            raise GraphFormatError(f"no published extension list for '{base}'")
        return [self.get_graph(name) for name in PUBLISHED_EXTENSION_LISTS[base]]
