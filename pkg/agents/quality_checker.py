"""
Quality Checker Agent
Validation of classification results: set lattice, E-set members, agreement with
the published counts and listings, and the forbidden-pattern agreement matrix.
"""

from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import (
    PUBLISHED_CLASSIFICATION,
    PUBLISHED_E_LISTS,
    PUBLISHED_EXTENSION_LISTS,
    PUBLISHED_EXTENSIONS,
    QUALITY_CONFIG,
)
from models import CanonicalForm, ClassificationRow, EnumerationResult, FilterSet
from services.axiom_service import check_2cbmg, match_forbidden_subgraphs
from services.canonical_service import CONVENTIONS, canonical_form
from services.enumeration_service import select
from services.export_service import graph_record
from services.fixture_service import FixtureService
from services.graph_service import is_weakly_connected
from services.structure_service import equivalence_classes
from .base_agent import BaseAgent
from .classifier_agent import ClassifierAgent, Members
from .scan_agent import ScanAgent

SET_NAMES = "ABCDE"

# Connected and sink-free, with the axioms left unchecked
FORBIDDEN_SCAN_FILTERS = FilterSet(
    require_n1=False, require_n2=False, require_n3=False,
    require_connected=True, require_sink_free=True,
)


class QualityChecker(BaseAgent):
    """Agent responsible for validating classification results."""

    def __init__(self, config: Optional[Dict[str, Any]] = None, fixtures: Optional[FixtureService] = None):
        super().__init__(config)
        self.fixtures = fixtures or FixtureService()
        self.require_lattice = self.config.get("require_lattice", QUALITY_CONFIG["require_lattice"])
        self.rerun_on_mismatch = self.config.get(
            "rerun_conventions_on_mismatch", QUALITY_CONFIG["rerun_conventions_on_mismatch"]
        )
        self.published_columns = self.config.get("published_columns", QUALITY_CONFIG["published_columns"])

    def check_lattice(self, members: Members) -> Dict[str, Any]:
        """E ⊆ B ∩ C ∩ D and B, C, D ⊆ A as certificate sets."""
        sets = {name: set(forms) for name, forms in members.items()}
        violations = []
        for name in "BCD":
            extra = sets[name] - sets["A"]
            if extra:
                violations.append(f"{len(extra)} members of {name} are not in A")
        extra = sets["E"] - (sets["B"] & sets["C"] & sets["D"])
        if extra:
            violations.append(f"{len(extra)} members of E are not in B ∩ C ∩ D")
        return {"holds": not violations, "violations": violations}

    def check_e_members(self, members: Members) -> Dict[str, Any]:
        """Every E member is a connected 2-cBMG without equivalent vertices."""
        issues = []
        for k, form in enumerate(members.get("E", []), start=1):
            g = form.to_graph()
            report = check_2cbmg(g)
            if not report.is_2cbmg:
                issues.append(f"E member {k}: {report.summary()}")
            if not equivalence_classes(g).all_singletons:
                issues.append(f"E member {k}: has equivalent vertices")
            if not is_weakly_connected(g):
                issues.append(f"E member {k}: not connected")
        return {"all_valid": not issues, "issues": issues, "count": len(members.get("E", []))}

    def compare_published(self, row: ClassificationRow) -> Dict[str, Any]:
        """
        Column-by-column agreement with the published row.

        matches covers every column; required_matches only the columns listed in
        published_columns, which decide validity.
        """
        expected = PUBLISHED_CLASSIFICATION.get((row.n, row.i))
        result: Dict[str, Any] = {"observed": list(row.counts), "expected": list(expected) if expected else None,
                                  "matches": None, "required_matches": None, "mismatched_columns": []}
        if expected is None:
            return result

        mismatched = [name for name, got, want in zip(SET_NAMES, row.counts, expected) if got != want]
        result["mismatched_columns"] = mismatched
        result["matches"] = not mismatched
        result["required_matches"] = not set(mismatched) & set(self.published_columns)
        if mismatched:
            level = "WARNING" if result["required_matches"] is False else "INFO"
            self.logger.log(level, f"Row n={row.n} i={row.i}: counts {row.counts} differ from published "
                                   f"{expected} in columns {mismatched}")
        return result

    def _fixture_forms(self, names: Sequence[str], convention: str) -> Dict[str, CanonicalForm]:
        return {name: canonical_form(self.fixtures.get_graph(name), convention) for name in names}

    def _compare_listing(self, names: Sequence[str], found: Iterable[CanonicalForm], convention: str) -> Dict[str, Any]:
        forms = self._fixture_forms(names, convention)
        found = set(found)
        listed = set(forms.values())
        duplicates = sorted(
            a for a in names for b in names if a < b and forms[a] == forms[b]
        )
        missing = sorted(name for name, form in forms.items() if form not in found)
        return {
            "listed": len(names),
            "found": len(found),
            "missing": missing,
            "unlisted": len(found - listed),
            "duplicates": duplicates,
            "matches": not missing and found == listed and not duplicates,
        }

    def compare_e_list(self, n: int, i: int, members: Members, convention: str) -> Optional[Dict[str, Any]]:
        """Agreement of the enumerated E set with the published listing, if one exists."""
        names = PUBLISHED_E_LISTS.get((n, i))
        if not names:
            return None
        return self._compare_listing(names, members["E"], convention)

    def compare_extensions(self, base_name: str, result: EnumerationResult, convention: str) -> Dict[str, Any]:
        comparison = self._compare_listing(PUBLISHED_EXTENSION_LISTS[base_name], result.certificates, convention)
        comparison["published_count"] = PUBLISHED_EXTENSIONS.get(base_name)
        if comparison["published_count"] != result.count:
            self.logger.info(f"Extensions of {base_name}: {result.count} classes, "
                             f"published {comparison['published_count']}")
        return comparison

    def rerun_conventions(self, n: int, i: int, current: str, force: bool = False) -> Dict[str, Any]:
        """Counts of (n, i) under the other conventions and which of them reproduce the required columns."""
        outcome: Dict[str, Any] = {}
        for convention in CONVENTIONS:
            if convention == current:
                continue
            row, _ = ClassifierAgent({**self.config, "convention": convention}).classify(n, i, force=force)
            comparison = self.compare_published(row)
            outcome[convention] = {"counts": list(row.counts), "matches": comparison["required_matches"] is True}
        self.log_activity("conventions_rerun", {"n": n, "i": i, "outcome": outcome})
        return outcome

    def validate_classification(self, results: Sequence[Tuple[ClassificationRow, Members]],
                                convention: str, force: bool = False) -> Tuple[bool, Dict[str, Any]]:
        """Validate classification results and return (is_valid, validation_results)."""
        self.log_activity("quality_check_started", {"rows": len(results)})

        per_row = []
        for row, members in results:
            entry = {
                "n": row.n,
                "i": row.i,
                "lattice": self.check_lattice(members),
                "e_members": self.check_e_members(members),
                "published": self.compare_published(row),
                "e_listing": self.compare_e_list(row.n, row.i, members, convention),
            }
            if entry["published"]["required_matches"] is False and self.rerun_on_mismatch:
                entry["conventions"] = self.rerun_conventions(row.n, row.i, convention, force=force)
            per_row.append(entry)

        is_valid = all(
            (entry["lattice"]["holds"] or not self.require_lattice)
            and entry["e_members"]["all_valid"]
            and entry["published"]["required_matches"] is not False
            for entry in per_row
        )
        validation_results = {"rows": per_row, "convention": convention, "is_valid": is_valid}

        self.log_activity("quality_check_completed", {"rows": len(per_row), "is_valid": is_valid})
        return is_valid, validation_results

    def forbidden_agreement(self, max_n: int = 5, scanner: Optional[ScanAgent] = None) -> Dict[str, Any]:
        """
        Agreement between "no forbidden pattern occurs" and "is a 2-cBMG" over all
        connected sink-free graphs with at most max_n vertices.
        """
        scanner = scanner or ScanAgent(self.config)
        matrix = {
            "pattern_free_and_2cbmg": 0,
            "pattern_free_not_2cbmg": 0,
            "pattern_found_and_2cbmg": 0,
            "pattern_found_not_2cbmg": 0,
        }
        discrepancies: List[Dict[str, Any]] = []

        for n in range(2, max_n + 1):
            for i in range(1, n // 2 + 1):
                classes = scanner.scan_raw(n, i, FORBIDDEN_SCAN_FILTERS)
                for form in select(classes, FORBIDDEN_SCAN_FILTERS):
                    g = form.to_graph()
                    occurrences = match_forbidden_subgraphs(g)
                    is_2cbmg = check_2cbmg(g).is_2cbmg
                    key = ("pattern_free" if not occurrences else "pattern_found") + \
                          ("_and_2cbmg" if is_2cbmg else "_not_2cbmg")
                    matrix[key] += 1
                    if bool(occurrences) == is_2cbmg:
                        discrepancies.append({
                            **graph_record(g),
                            "is_2cbmg": is_2cbmg,
                            "patterns": sorted({o.pattern for o in occurrences}),
                        })

        agreement = matrix["pattern_free_and_2cbmg"] + matrix["pattern_found_not_2cbmg"]
        total = sum(matrix.values())
        self.log_activity("forbidden_report_completed", {"graphs": total, "discrepancies": len(discrepancies)})
        return {
            "max_n": max_n,
            "graphs": total,
            "matrix": matrix,
            "agreement": agreement,
            "discrepancies": discrepancies,
        }
