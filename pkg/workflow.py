"""
Classification Workflow
Orchestrates the classifier and quality-check agents over a range of n.
"""

import asyncio
from pathlib import Path
from typing import Iterable, Optional
from loguru import logger

import sys
sys.path.insert(0, str(Path(__file__).parent))

from models import ClassificationReport
from agents.classifier_agent import ClassifierAgent
from agents.quality_checker import QualityChecker
from services.enumeration_service import splits_for
from services.export_service import ExportService


class ClassificationWorkflow:
    """Main workflow coordinator for classification runs."""

    def __init__(self, workers: Optional[int] = None, convention: Optional[str] = None,
                 output_dir: Optional[Path] = None):
        self.classifier = ClassifierAgent({"workers": workers, "convention": convention})
        self.quality_checker = QualityChecker({"workers": workers})
        self.export_service = ExportService(output_dir) if output_dir else None

    async def run_classification(self, n_values: Iterable[int], i_values: Optional[Iterable[int]] = None,
                                 force: bool = False,
                                 check_quality: bool = True) -> ClassificationReport:
        """Run the complete classification workflow for every n and every split of n."""
        n_values = list(n_values)
        i_values = list(i_values) if i_values else None
        convention = self.classifier.convention
        logger.info(f"Starting classification for n in {n_values} under convention '{convention}'")

        try:
            # Step 1: Classifier Agent - scans and A..E sets
            logger.info("Step 1: Classifying edge subsets...")
            results = []
            for n in n_values:
                for i in (i_values or splits_for(n)):
                    outcome = await self.classifier.execute({"n": n, "i": i, "force": force})
                    results.append((outcome["row"], outcome["members"]))

            # Step 2: Quality Checker - validation
            is_valid, validation = True, {}
            if check_quality:
                logger.info("Step 2: Validating classification...")
                is_valid, validation = self.quality_checker.validate_classification(results, convention, force=force)
                if not is_valid:
                    logger.warning("Classification failed validation; see the quality section of the report")

            report = ClassificationReport(
                rows=[row for row, _ in results],
                e_members={f"{row.n},{row.i}": members["E"] for row, members in results},
                convention=convention,
                is_valid=is_valid,
                validation=validation,
            )

            # Step 3: Export Service - files
            if self.export_service is not None:
                logger.info("Step 3: Writing result files...")
                files = self.export_service.export_classification(report.rows)
                for row, members in results:
                    self.export_service.export_certificates(f"E_{row.n}_{row.i}", members["E"], prefix="member")
                if check_quality:
                    files["quality"] = self.export_service.write_json("quality.json", validation)
                report.files = {name: str(path) for name, path in files.items()}

            logger.info(f"Classification complete: {len(report.rows)} rows")
            return report

        except Exception as e:
            logger.exception(f"Classification workflow failed for n in {n_values}: {e}")
            raise


# Synchronous wrapper for the CLI
def classify_sync(n_values: Iterable[int], i_values: Optional[Iterable[int]] = None, workers: Optional[int] = None,
                  convention: Optional[str] = None,
                  output_dir: Optional[Path] = None, force: bool = False,
                  check_quality: bool = True) -> ClassificationReport:
    workflow = ClassificationWorkflow(workers=workers, convention=convention, output_dir=output_dir)
    return asyncio.run(workflow.run_classification(n_values, i_values=i_values, force=force,
                                                   check_quality=check_quality))
