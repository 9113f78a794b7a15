"""
Interval CSV Writer Module

Handles writing association intervals to CSV files and reading them back.
"""

import io
import logging
from typing import List

import pandas as pd

from src.csv_utils.csv_handler import format_decimal, write_csv_rows
from src.model.errors import AnnotationError
from .tracker import AssociationInterval

INTERVAL_COLUMNS = ['customer_id', 'garment_id', 'start_frame', 'end_frame', 'duration_seconds']


class IntervalCSVWriter:
    """Writes the interval log to CSV."""

    def __init__(self, frame_duration: float):
        self.frame_duration = frame_duration
        self.logger = logging.getLogger(__name__)

    def save_intervals_to_csv(self, intervals: List[AssociationInterval], output_file: str) -> str:
        """
        Save intervals to a CSV file (the header is written even when empty).

        Args:
            intervals: Intervals in the order they should appear
            output_file: Output CSV file path

        Returns:
            The output file path
        """
        rows = (
            {
                'customer_id': interval.customer_id,
                'garment_id': interval.garment_id,
                'start_frame': interval.start_frame,
                'end_frame': interval.end_frame,
                'duration_seconds': format_decimal(interval.duration_seconds(self.frame_duration)),
            }
            for interval in intervals
        )
        count = write_csv_rows(output_file, INTERVAL_COLUMNS, rows)
        self.logger.info(f"Saved {count} intervals to {output_file}")
        return output_file


def read_intervals(path: str) -> List[AssociationInterval]:
    """
    Read an interval log (or a ground-truth CSV with the same columns).

    Raises:
        AnnotationError: undecodable bytes, empty file, missing columns or malformed rows
        OSError: the file cannot be read
    """
    with open(path, "rb") as f:
        raw_lines = f.readlines()
    for line_no, raw in enumerate(raw_lines, 1):
        try:
            raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise AnnotationError(f"invalid UTF-8 at byte {e.start}: {e.reason}", line=line_no) from e

    try:
        text = b"".join(raw_lines).decode("utf-8")
        df = pd.read_csv(io.StringIO(text), dtype={'customer_id': str, 'garment_id': str}, keep_default_na=False)
    except pd.errors.EmptyDataError as e:
        raise AnnotationError(f"{path} is empty") from e

    missing = [c for c in INTERVAL_COLUMNS[:4] if c not in df.columns]
    if missing:
        raise AnnotationError(f"{path} is missing columns: {', '.join(missing)}")

    intervals = []
    for row_no, row in enumerate(df.itertuples(index=False), 2):
        try:
            intervals.append(AssociationInterval(
                customer_id=row.customer_id,
                garment_id=row.garment_id,
                start_frame=int(row.start_frame),
                end_frame=int(row.end_frame),
            ))
        except (TypeError, ValueError) as e:
            raise AnnotationError(f"bad interval row: {e}", line=row_no) from e
    return intervals
