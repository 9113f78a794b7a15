"""
CSV Utilities Package
"""

from .csv_handler import format_decimal, format_exact, write_csv_rows

__all__ = [
    'format_decimal',
    'format_exact',
    'write_csv_rows',
]
