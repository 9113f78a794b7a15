"""
Tracking Package

Streams frames through the extended MCOKE, re-clustering on significant change,
and keeps the customer-garment association interval log.
"""

from .tracker import (
    AssociationInterval,
    AssociationTracker,
    ClusteringSnapshot,
    TrackerState,
    finalize,
    frame_positions,
    process_frame,
    significant_change,
)
from .interval_csv_writer import INTERVAL_COLUMNS, IntervalCSVWriter, read_intervals

__all__ = [
    'AssociationInterval',
    'AssociationTracker',
    'ClusteringSnapshot',
    'TrackerState',
    'finalize',
    'frame_positions',
    'process_frame',
    'significant_change',
    'INTERVAL_COLUMNS',
    'IntervalCSVWriter',
    'read_intervals',
]
