"""Persistence of test results (JSON) and tables (TSV)."""

import json
import logging
import os
import sys
from typing import Any, Dict, Optional

import pandas as pd

logger = logging.getLogger(__name__)


class ResultWriter:
    """Writes results to a file, or to standard output when no path is given."""

    def __init__(self, output_path: Optional[str] = None):
        """
        Initialize the writer.

        Args:
            output_path: Destination file; None or "-" means standard output
        """
        self.output_path = None if output_path in (None, "-") else output_path

    def _write(self, text: str) -> None:
        if self.output_path is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        try:
            directory = os.path.dirname(os.path.abspath(self.output_path))
            os.makedirs(directory, exist_ok=True)
            with open(self.output_path, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(text)
            logger.info(f"Wrote {self.output_path}")
        except OSError as e:
            logger.error(f"Error writing {self.output_path}: {str(e)}")
            raise

    def write_json(self, record: Dict[str, Any]) -> None:
        """Write one JSON document (sorted keys are not used; field order is part of the format)."""
        self._write(json.dumps(record, indent=2, ensure_ascii=False) + "\n")

    def write_table(self, table: pd.DataFrame) -> None:
        """Write a tab-separated table with a header row and no index."""
        self._write(table.to_csv(sep="\t", index=False, lineterminator="\n"))

    def write_csv(self, table: pd.DataFrame) -> None:
        self._write(table.to_csv(index=False, lineterminator="\n"))
