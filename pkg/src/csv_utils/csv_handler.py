"""
CSV helpers shared by the interval log, ground-truth and report writers.

All files use LF line endings and '.' as decimal separator regardless of locale.
"""

import csv
import os
from typing import Dict, Iterable, List

import numpy as np


def format_decimal(value: float, places: int = 6) -> str:
    """Fixed-point number without trailing zeros (no scientific notation)."""
    if value is None:
        return ""
    if value == 0:
        return "0"
    return f"{value:.{places}f}".rstrip('0').rstrip('.')


def format_exact(value: float) -> str:
    """Shortest fixed-point text that reads back as the same float."""
    if value is None:
        return ""
    return np.format_float_positional(float(value), unique=True, trim="-")


def write_csv_rows(csv_path: str, fieldnames: List[str], rows: Iterable[Dict]) -> int:
    """
    Write dict rows under a fixed header, creating the parent directory.

    Returns:
        Number of data rows written
    """
    directory = os.path.dirname(csv_path)
    if directory:
        os.makedirs(directory, exist_ok=True)

    count = 0
    with open(csv_path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.DictWriter(f, fieldnames=fieldnames, lineterminator='\n')
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
            count += 1
    return count
