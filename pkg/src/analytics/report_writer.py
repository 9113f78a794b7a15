"""
Report Writer Module

Writes a ReportBundle as one JSON document plus one plot-data CSV per chart:

    fig2a.csv               gender,percentage
    fig2b.csv / fig2c.csv   age_group,percentage            (female / male)
    fig3.csv                age_group,gender,customers,min_seconds,max_seconds,mean_seconds,median_seconds
    fig4_female.csv / fig4_male.csv   age_years,color,expression,count
    fig5_female.csv / fig5_male.csv   age_group,color,seconds
    garments.csv            garment_id,color,customers,seconds

Every file is written, with only a header when its report is empty.
"""

import json
import logging
import os
from typing import List

from src.csv_utils.csv_handler import format_decimal, format_exact, write_csv_rows
from src.model.types import Gender
from .reports import ReportBundle

REPORT_JSON = 'report.json'

_GENDER_SUFFIX = {Gender.FEMALE: 'female', Gender.MALE: 'male'}
_AGE_SHARE_FILES = {Gender.FEMALE: 'fig2b.csv', Gender.MALE: 'fig2c.csv'}


class ReportWriter:
    """Writes the report JSON and plot-data CSV files into one directory."""

    def __init__(self, output_dir: str):
        self.output_dir = output_dir
        self.logger = logging.getLogger(__name__)

    def _path(self, name: str) -> str:
        return os.path.join(self.output_dir, name)

    def write_json(self, bundle: ReportBundle) -> str:
        path = self._path(REPORT_JSON)
        os.makedirs(self.output_dir, exist_ok=True)
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            f.write(json.dumps(bundle.to_dict(), indent=2, sort_keys=True))
            f.write('\n')
        return path

    def write_gender_share(self, bundle: ReportBundle) -> str:
        path = self._path('fig2a.csv')
        write_csv_rows(path, ['gender', 'percentage'], (
            {'gender': gender.value, 'percentage': format_exact(pct)}
            for gender, pct in bundle.gender_share.items()
        ))
        return path

    def write_age_shares(self, bundle: ReportBundle) -> List[str]:
        paths = []
        for gender, name in _AGE_SHARE_FILES.items():
            path = self._path(name)
            shares = bundle.age_share_by_gender.get(gender, {})
            write_csv_rows(path, ['age_group', 'percentage'], (
                {'age_group': group.value, 'percentage': format_exact(pct)}
                for group, pct in shares.items()
            ))
            paths.append(path)
        return paths

    def write_dwell(self, bundle: ReportBundle) -> str:
        path = self._path('fig3.csv')
        fields = ['age_group', 'gender', 'customers', 'min_seconds', 'max_seconds',
                  'mean_seconds', 'median_seconds']
        write_csv_rows(path, fields, (
            {
                'age_group': key.age_group.value,
                'gender': key.gender.value,
                'customers': stats.customers,
                'min_seconds': format_decimal(stats.min),
                'max_seconds': format_decimal(stats.max),
                'mean_seconds': format_decimal(stats.mean),
                'median_seconds': format_decimal(stats.median),
            }
            for key, stats in bundle.dwell_by_demographic.items()
        ))
        return path

    def write_expressions(self, bundle: ReportBundle) -> List[str]:
        paths = []
        for gender, suffix in _GENDER_SUFFIX.items():
            path = self._path(f'fig4_{suffix}.csv')
            write_csv_rows(path, ['age_years', 'color', 'expression', 'count'], (
                {'age_years': r.age_years, 'color': r.color, 'expression': r.expression, 'count': r.count}
                for r in bundle.expression_by_color
                if r.gender == gender
            ))
            paths.append(path)
        return paths

    def write_time_by_color(self, bundle: ReportBundle) -> List[str]:
        paths = []
        for gender, suffix in _GENDER_SUFFIX.items():
            path = self._path(f'fig5_{suffix}.csv')
            write_csv_rows(path, ['age_group', 'color', 'seconds'], (
                {'age_group': key.age_group.value, 'color': color, 'seconds': format_decimal(seconds)}
                for (key, color), seconds in bundle.time_by_color.items()
                if key.gender == gender
            ))
            paths.append(path)
        return paths

    def write_garments(self, bundle: ReportBundle) -> str:
        path = self._path('garments.csv')
        write_csv_rows(path, ['garment_id', 'color', 'customers', 'seconds'], (
            {
                'garment_id': garment_id,
                'color': gi.color,
                'customers': gi.customers,
                'seconds': format_decimal(gi.seconds),
            }
            for garment_id, gi in bundle.garment_interest.items()
        ))
        return path

    def write_all(self, bundle: ReportBundle) -> List[str]:
        """
        Write every report file.

        Returns:
            Paths of the files written
        """
        paths = [self.write_json(bundle), self.write_gender_share(bundle)]
        paths += self.write_age_shares(bundle)
        paths.append(self.write_dwell(bundle))
        paths += self.write_expressions(bundle)
        paths += self.write_time_by_color(bundle)
        paths.append(self.write_garments(bundle))
        self.logger.info(f"Wrote {len(paths)} report files to {self.output_dir}")
        return paths
