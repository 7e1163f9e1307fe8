import json
import logging
from collections.abc import Callable
from pathlib import Path
from typing import Any

from cluster_editing import tsv_io
from cluster_editing.config import InputValidationError

logger = logging.getLogger(__name__)

READS_FILE = "reads.tsv"
CLUSTERS_FILE = "clusters.tsv"
CANDIDATES_FILE = "candidates.tsv"
PREDICTIONS_FILE = "predictions.tsv"
FINAL_FILE = "final_predictions.tsv"


class OutputValidator:
    """Checks the files a pipeline run leaves in its run directory."""

    def __init__(self, run_dir: str | Path):
        """
        Initialize the validator with the run directory.

        Args:
            run_dir: Directory holding reads.tsv, clusters.tsv and prediction files
        """
        self.run_dir = Path(run_dir)
        self.validation_results: dict[str, Any] = {}
        self.summary: dict[str, dict[str, Any]] = {}

    def _check(self, name: str, check: Callable[[], dict[str, Any]]) -> None:
        try:
            details = check()
            issues = details.pop("issues", [])
        except (InputValidationError, FileNotFoundError) as e:
            details, issues = {}, [str(e)]

        self.summary[name] = {
            "status": "valid" if not issues else "error",
            "rows": details.get("rows", 0),
            "issues": issues,
        }
        self.validation_results[name] = details

    def _validate_clusters(self) -> dict[str, Any]:
        reads = tsv_io.read_reads(self.run_dir / READS_FILE)
        read_ids = [r.id for r in reads]
        clustering = tsv_io.read_clustering(self.run_dir / CLUSTERS_FILE, read_ids)
        # raises on overlapping or missing members
        clustering.labels(len(reads))
        sizes = [len(c) for c in clustering]
        return {
            "rows": len(reads),
            "clusters": len(clustering),
            "largest_cluster": max(sizes, default=0),
        }

    def _validate_predictions(self, file_name: str) -> dict[str, Any]:
        predictions = tsv_io.read_predictions(self.run_dir / file_name)
        return {
            "rows": len(predictions),
            "insertions": sum(p.kind.value == "insertion" for p in predictions),
            "deletions": sum(p.kind.value == "deletion" for p in predictions),
        }

    def _validate_disjoint(self) -> dict[str, Any]:
        predictions = sorted(
            tsv_io.read_predictions(self.run_dir / FINAL_FILE), key=lambda p: p.start
        )
        issues = [
            f"Predictions [{a.start}, {a.end}) and [{b.start}, {b.end}) overlap"
            for a, b in zip(predictions, predictions[1:])
            if a.overlaps(b)
        ]
        return {"rows": len(predictions), "issues": issues}

    def validate_all(self) -> dict[str, Any]:
        logger.info(f"Validating pipeline outputs in {self.run_dir}")
        self._check("clusters", self._validate_clusters)
        for name, file_name in [
            ("candidates", CANDIDATES_FILE),
            ("predictions", PREDICTIONS_FILE),
        ]:
            self._check(name, lambda f=file_name: self._validate_predictions(f))
        self._check("final_predictions", self._validate_disjoint)
        logger.info("Output validation complete")
        return self.validation_results

    @property
    def all_valid(self) -> bool:
        return bool(self.summary) and all(
            info["status"] == "valid" for info in self.summary.values()
        )

    def print_summary(self) -> None:
        print("\n=== OUTPUT VALIDATION SUMMARY ===\n")
        print(f"Overall validation: {'PASSED' if self.all_valid else 'FAILED'}\n")

        for name, info in self.summary.items():
            status_symbol = "✅" if info["status"] == "valid" else "❌"
            print(f"{status_symbol} {name}: {info['rows']} rows")
            if info["issues"]:
                print("  Issues:")
                for issue in info["issues"]:
                    print(f"  - {issue}")
            print()

    def save_results(self, output_file: str | Path | None = None) -> None:
        output_path = (
            Path(output_file) if output_file else self.run_dir / "validation_results.json"
        )
        results = {"summary": self.summary, "details": self.validation_results}
        with open(output_path, "w") as f:
            json.dump(results, f, indent=2)
        logger.info(f"Validation results saved to {output_path}")
