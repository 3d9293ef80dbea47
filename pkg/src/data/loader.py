"""
Delimited-text ingestion of labelled two-group datasets.
"""

import io
import logging
import sys
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
import pandas as pd

from src.data.samples import SamplePair
from src.errors import EmptyGroupError, LabelError, ParseError

logger = logging.getLogger(__name__)

LabelSpec = Union[str, int]

TAB_SUFFIXES = (".tsv", ".tab", ".txt")


class DatasetLoader:
    """Reads comma- or tab-separated matrices into a :class:`SamplePair`."""

    def __init__(self, sep: Optional[str] = None, has_header: bool = True):
        """
        Initialize the loader.

        Args:
            sep: Field separator; detected from the suffix or first line when None
            has_header: Whether the first line holds column names
        """
        self.sep = sep
        self.has_header = has_header

    def _read_text(self, path: Union[str, Path]) -> str:
        if str(path) == "-":
            return sys.stdin.read()
        return Path(path).read_text(encoding="utf-8")

    def _detect_sep(self, path: Union[str, Path], text: str) -> str:
        if self.sep:
            return self.sep
        if str(path).lower().endswith(TAB_SUFFIXES):
            return "\t"
        first_line = text.split("\n", 1)[0]
        return "\t" if "\t" in first_line else ","

    def _read_frame(self, path: Union[str, Path], header: bool) -> pd.DataFrame:
        text = self._read_text(path)
        sep = self._detect_sep(path, text)
        return pd.read_csv(
            io.StringIO(text),
            sep=sep,
            header=0 if header else None,
            dtype=str,
            keep_default_na=False,
            skipinitialspace=True,
        )

    def _read_labels_file(self, labels_file: Union[str, Path], expected: int) -> List[str]:
        frame = self._read_frame(labels_file, header=False)
        values = [str(v).strip() for v in frame.iloc[:, -1].tolist()]
        if len(values) == expected + 1:
            # first line is a header
            values = values[1:]
        if len(values) != expected:
            raise LabelError(f"labels file has {len(values)} entries for {expected} observations")
        return values

    @staticmethod
    def _select_label_column(frame: pd.DataFrame, labels: LabelSpec):
        names = [str(c).strip() for c in frame.columns]
        if isinstance(labels, str) and labels.strip() in names:
            return frame.columns[names.index(labels.strip())]
        try:
            position = int(labels)
        except (TypeError, ValueError):
            raise LabelError(f"label column {labels!r} not found among {names[:10]}")
        if not -len(names) <= position < len(names):
            raise LabelError(f"label column index {position} out of range for {len(names)} columns")
        return frame.columns[position]

    @staticmethod
    def _to_numeric(features: pd.DataFrame) -> np.ndarray:
        values = np.empty(features.shape, dtype=float)
        for j, column in enumerate(features.columns):
            converted = pd.to_numeric(features[column].str.strip(), errors="coerce").to_numpy(dtype=float)
            bad = ~np.isfinite(converted)
            if bad.any():
                row = int(np.flatnonzero(bad)[0])
                cell = features[column].iloc[row]
                raise ParseError(
                    f"non-numeric or missing cell {cell!r} at row {row + 1}, column {column!r}",
                    row=row + 1,
                    column=str(column),
                )
            values[:, j] = converted
        return values

    def load(
        self,
        path: Union[str, Path],
        labels: Optional[LabelSpec] = None,
        labels_file: Optional[Union[str, Path]] = None,
        transpose: bool = False,
        positive_label: Optional[str] = None,
    ) -> SamplePair:
        """
        Load a dataset with exactly two label values.

        Args:
            path: Input file, or "-" for standard input
            labels: Label column name or index (ignored when labels_file is given)
            labels_file: Separate file with one label per observation
            transpose: File is features x observations (first column holds feature names)
            positive_label: Label whose rows become X; defaults to the lexicographically smaller label

        Returns:
            SamplePair with recorded label names

        Raises:
            ParseError: If a feature cell is missing or non-numeric
            LabelError: If there are not exactly two distinct labels
            EmptyGroupError: If the positive label selects no rows
        """
        frame = self._read_frame(path, header=self.has_header)
        if transpose:
            frame = frame.set_index(frame.columns[0]).T
            frame.columns = [str(c).strip() for c in frame.columns]

        if labels_file is not None:
            label_values = self._read_labels_file(labels_file, expected=len(frame))
            features = frame
        else:
            column = self._select_label_column(frame, 0 if labels is None else labels)
            label_values = [str(v).strip() for v in frame[column].tolist()]
            features = frame.drop(columns=[column])

        distinct = sorted(set(label_values))
        if len(distinct) != 2:
            raise LabelError(f"expected exactly two distinct labels, found {len(distinct)}: {distinct[:5]}")
        if positive_label is None:
            label_x, label_y = distinct
        elif positive_label in distinct:
            label_x = positive_label
            label_y = distinct[1] if distinct[0] == positive_label else distinct[0]
        else:
            raise EmptyGroupError(f"positive label {positive_label!r} selects no rows (labels: {distinct})")

        matrix = self._to_numeric(features)
        is_x = np.array([value == label_x for value in label_values])
        sp = SamplePair(matrix[is_x], matrix[~is_x], label_x=label_x, label_y=label_y)
        logger.info(f"Loaded dataset {path}: {sp.shape_summary()}")
        return sp


def load_dataset(
    path: Union[str, Path],
    labels: Optional[LabelSpec] = None,
    labels_file: Optional[Union[str, Path]] = None,
    transpose: bool = False,
    positive_label: Optional[str] = None,
    sep: Optional[str] = None,
    has_header: bool = True,
) -> SamplePair:
    """Convenience wrapper around :class:`DatasetLoader`."""
    loader = DatasetLoader(sep=sep, has_header=has_header)
    return loader.load(
        path,
        labels=labels,
        labels_file=labels_file,
        transpose=transpose,
        positive_label=positive_label,
    )
