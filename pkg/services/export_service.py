"""
Export Service
Writes classification tables, enumerated graphs and DOT drawings to an output directory.
"""

import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence
import pandas as pd
from loguru import logger

import sys
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import OUTPUT_DIR
from models import CanonicalForm, ClassificationRow, ColoredDigraph
from services.notation_service import format_graph, serialize, serialize_colors, to_dot, to_json

TABLE_COLUMNS = ["n", "i", "A", "B", "C", "D", "E"]


def classification_frame(rows: Iterable[ClassificationRow]) -> pd.DataFrame:
    """One row per (n, i) with the five set sizes."""
    records = [{"n": row.n, "i": row.i, **dict(zip("ABCDE", row.counts))} for row in rows]
    return pd.DataFrame.from_records(records, columns=TABLE_COLUMNS)


def render_table(rows: Iterable[ClassificationRow]) -> str:
    frame = classification_frame(rows)
    if frame.empty:
        return "(no rows)\n"
    return frame.to_string(index=False) + "\n"


class ExportService:
    """Service for exporting enumeration and classification results."""

    def __init__(self, output_dir: Optional[Path] = None):
        self.output_dir = Path(output_dir or OUTPUT_DIR)
        self.output_dir.mkdir(parents=True, exist_ok=True)

    def write_json(self, filename: str, payload: Any) -> Path:
        filepath = self.output_dir / filename
        filepath.parent.mkdir(parents=True, exist_ok=True)
        with open(filepath, "w") as f:
            json.dump(payload, f, indent=2, sort_keys=True)
            f.write("\n")
        logger.info(f"Wrote {filepath}")
        return filepath

    def export_classification(self, rows: Sequence[ClassificationRow]) -> Dict[str, Path]:
        """classification.json and classification.csv for the given rows."""
        payload = {"rows": [row.model_dump() for row in rows]}
        json_path = self.write_json("classification.json", payload)

        csv_path = self.output_dir / "classification.csv"
        classification_frame(rows).to_csv(csv_path, index=False)
        logger.info(f"Wrote {csv_path}")
        return {"json": json_path, "csv": csv_path}

    def export_graphs(self, subdir: str, graphs: Sequence[ColoredDigraph], prefix: str = "graph",
                      fmt: str = "text") -> List[Path]:
        """One file per graph, numbered in the given order."""
        target = self.output_dir / subdir
        target.mkdir(parents=True, exist_ok=True)
        suffix = {"text": "txt", "json": "json", "dot": "dot"}[fmt]
        paths = []
        for k, g in enumerate(graphs, start=1):
            path = target / f"{prefix}_{k:03d}.{suffix}"
            path.write_text(format_graph(g, fmt))
            paths.append(path)
        logger.info(f"Wrote {len(paths)} graph files to {target}")
        return paths

    def export_certificates(self, subdir: str, certificates: Sequence[CanonicalForm], prefix: str = "class") -> List[Path]:
        return self.export_graphs(subdir, [c.to_graph() for c in certificates], prefix=prefix)

    def export_dot(self, g: ColoredDigraph, filename: str, name: str = "G") -> Path:
        filepath = self.output_dir / filename
        filepath.write_text(to_dot(g, name))
        logger.info(f"DOT drawing exported: {filepath}")
        return filepath


def graph_record(g: ColoredDigraph) -> Dict[str, Any]:
    """JSON-friendly summary used inside reports."""
    return {**to_json(g), "text": serialize(g), "classes": serialize_colors(g)}
