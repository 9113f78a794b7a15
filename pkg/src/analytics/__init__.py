"""
Analytics Package

Customer profiles and the store report set built from an annotation stream and
its association interval log.
"""

from .profiles import CustomerProfile, build_profiles, garment_colors
from .reports import (
    DemographicKey,
    DwellStats,
    ExpressionRecord,
    GarmentInterest,
    ReportBundle,
    age_share_by_gender,
    build_report,
    dwell_by_demographic,
    expression_by_color,
    garment_interest,
    gender_share,
    time_by_color,
)
from .report_writer import ReportWriter

__all__ = [
    'CustomerProfile',
    'build_profiles',
    'garment_colors',
    'DemographicKey',
    'DwellStats',
    'ExpressionRecord',
    'GarmentInterest',
    'ReportBundle',
    'age_share_by_gender',
    'build_report',
    'dwell_by_demographic',
    'expression_by_color',
    'garment_interest',
    'gender_share',
    'time_by_color',
    'ReportWriter',
]
