"""
Store Reports

Aggregates customer profiles and the association interval log into the store
report set:

- share of customers by gender, and by age group within each gender
- time spent in store per (age group, gender), as min/max/mean/median
- expression counts per (gender, age, garment color, expression)
- time spent on garments per (age group, gender, color)
- interest per garment (color, distinct customers, associated time)
"""

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import pandas as pd

from src.model.errors import EmptyPopulationError
from src.model.types import AgeGroup, FrameAnnotations, Gender
from src.tracking.tracker import AssociationInterval
from .profiles import CustomerProfile, build_profiles, garment_colors

logger = logging.getLogger(__name__)

UNKNOWN_COLOR = "unknown"


@dataclass(frozen=True)
class DemographicKey:
    age_group: AgeGroup
    gender: Gender

    @classmethod
    def of(cls, profile: CustomerProfile) -> "DemographicKey":
        return cls(profile.age_group, profile.gender)

    @property
    def label(self) -> str:
        return f"{self.age_group.value}|{self.gender.value}"

    def sort_key(self) -> Tuple[int, str]:
        return (self.age_group.rank, self.gender.value)


@dataclass(frozen=True)
class DwellStats:
    customers: int
    min: float
    max: float
    mean: float
    median: float


@dataclass(frozen=True)
class ExpressionRecord:
    gender: Gender
    age_years: int
    color: str
    expression: str
    count: int


@dataclass(frozen=True)
class GarmentInterest:
    color: str
    customers: int
    seconds: float


@dataclass
class ReportBundle:
    gender_share: Dict[Gender, float]
    age_share_by_gender: Dict[Gender, Dict[AgeGroup, float]]
    dwell_by_demographic: Dict[DemographicKey, DwellStats]
    expression_by_color: List[ExpressionRecord]
    time_by_color: Dict[Tuple[DemographicKey, str], float]
    garment_interest: Dict[str, GarmentInterest] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        """JSON-ready view with string keys in a stable order."""
        return {
            'gender_share': {g.value: pct for g, pct in self.gender_share.items()},
            'age_share_by_gender': {
                g.value: {group.value: pct for group, pct in shares.items()}
                for g, shares in self.age_share_by_gender.items()
            },
            'dwell_by_demographic': {
                key.label: {
                    'customers': stats.customers,
                    'min': stats.min,
                    'max': stats.max,
                    'mean': stats.mean,
                    'median': stats.median,
                }
                for key, stats in self.dwell_by_demographic.items()
            },
            'expression_by_color': [
                {
                    'gender': r.gender.value,
                    'age_years': r.age_years,
                    'color': r.color,
                    'expression': r.expression,
                    'count': r.count,
                }
                for r in self.expression_by_color
            ],
            'time_by_color': [
                {
                    'age_group': key.age_group.value,
                    'gender': key.gender.value,
                    'color': color,
                    'seconds': seconds,
                }
                for (key, color), seconds in self.time_by_color.items()
            ],
            'garment_interest': {
                garment_id: {'color': gi.color, 'customers': gi.customers, 'seconds': gi.seconds}
                for garment_id, gi in self.garment_interest.items()
            },
        }


def _require_population(profiles: Mapping[str, CustomerProfile]):
    if not profiles:
        raise EmptyPopulationError("empty population")


def _percentages(counts: Counter, keys) -> Dict:
    total = sum(counts.values())
    return {key: counts[key] * 100 / total for key in keys}


def gender_share(profiles: Mapping[str, CustomerProfile]) -> Dict[Gender, float]:
    """
    Percentage of customers per gender.

    Raises:
        EmptyPopulationError: no customers
    """
    _require_population(profiles)
    counts = Counter(p.gender for p in profiles.values())
    return _percentages(counts, list(Gender))


def age_share_by_gender(profiles: Mapping[str, CustomerProfile]) -> Dict[Gender, Dict[AgeGroup, float]]:
    """
    Percentage of each gender's customers per age group.

    Genders with no customers are omitted, as are age groups with no customers.

    Raises:
        EmptyPopulationError: no customers
    """
    _require_population(profiles)
    shares = {}
    for gender in Gender:
        counts = Counter(p.age_group for p in profiles.values() if p.gender == gender)
        if counts:
            present = [group for group in AgeGroup if counts[group]]
            shares[gender] = _percentages(counts, present)
    return shares


def dwell_by_demographic(profiles: Mapping[str, CustomerProfile],
                         frame_duration: float) -> Dict[DemographicKey, DwellStats]:
    """
    Time spent in store per demographic key.

    A customer's time in store is the span from the first to the last frame in
    which they were observed. Keys without customers are omitted.
    """
    if not profiles:
        return {}

    df = pd.DataFrame([
        {
            'age_group': p.age_group.value,
            'gender': p.gender.value,
            'seconds': p.presence_seconds(frame_duration),
        }
        for p in profiles.values()
    ])
    stats = df.groupby(['age_group', 'gender'])['seconds'].agg(['count', 'min', 'max', 'mean', 'median'])

    result = {}
    for (group, gender), row in stats.iterrows():
        key = DemographicKey(AgeGroup(group), Gender(gender))
        result[key] = DwellStats(
            customers=int(row['count']),
            min=float(row['min']),
            max=float(row['max']),
            mean=float(row['mean']),
            median=float(row['median']),
        )
    return dict(sorted(result.items(), key=lambda item: item[0].sort_key()))


def _known_intervals(profiles: Mapping[str, CustomerProfile],
                     intervals: Iterable[AssociationInterval]) -> List[AssociationInterval]:
    known = []
    skipped = 0
    for interval in intervals:
        if interval.customer_id in profiles:
            known.append(interval)
        else:
            skipped += 1
    if skipped:
        logger.warning(f"Skipped {skipped} intervals for customers absent from the stream")
    return known


def expression_by_color(profiles: Mapping[str, CustomerProfile],
                        intervals: Iterable[AssociationInterval],
                        colors: Mapping[str, str]) -> List[ExpressionRecord]:
    """
    Count expressions shown while associated with garments of each color.

    Every frame of every interval contributes one record for the customer's
    expression at that frame; frames without an observation of the customer
    contribute nothing. Overlapping associations count once per garment.

    Returns:
        Records sorted by (gender, age, color, expression)
    """
    counts: Counter = Counter()
    for interval in _known_intervals(profiles, intervals):
        profile = profiles[interval.customer_id]
        color = colors.get(interval.garment_id, UNKNOWN_COLOR)
        for frame in range(interval.start_frame, interval.end_frame + 1):
            expression = profile.expressions.get(frame)
            if expression is not None:
                counts[(profile.gender, profile.age_years, color, expression)] += 1

    records = [
        ExpressionRecord(gender, age, color, expression, count)
        for (gender, age, color, expression), count in counts.items()
    ]
    return sorted(records, key=lambda r: (r.gender.value, r.age_years, r.color, r.expression))


def time_by_color(profiles: Mapping[str, CustomerProfile],
                  intervals: Iterable[AssociationInterval],
                  colors: Mapping[str, str],
                  frame_duration: float) -> Dict[Tuple[DemographicKey, str], float]:
    """
    Associated time per (demographic key, garment color), in seconds.

    Frame counts are summed before scaling, so the totals do not depend on the
    order of the intervals.
    """
    rows = [
        {
            'age_group': profiles[i.customer_id].age_group.value,
            'gender': profiles[i.customer_id].gender.value,
            'color': colors.get(i.garment_id, UNKNOWN_COLOR),
            'frames': i.frames,
        }
        for i in _known_intervals(profiles, intervals)
    ]
    if not rows:
        return {}

    totals = pd.DataFrame(rows).groupby(['age_group', 'gender', 'color'])['frames'].sum()
    result = {
        (DemographicKey(AgeGroup(group), Gender(gender)), color): int(frames) * frame_duration
        for (group, gender, color), frames in totals.items()
    }
    return dict(sorted(result.items(), key=lambda item: (item[0][0].sort_key(), item[0][1])))


def garment_interest(profiles: Mapping[str, CustomerProfile], intervals: Iterable[AssociationInterval],
                     colors: Mapping[str, str], frame_duration: float) -> Dict[str, GarmentInterest]:
    """Per garment: color, number of distinct associated customers, associated seconds."""
    frames: Dict[str, int] = defaultdict(int)
    customers: Dict[str, set] = defaultdict(set)
    for interval in _known_intervals(profiles, intervals):
        frames[interval.garment_id] += interval.frames
        customers[interval.garment_id].add(interval.customer_id)

    return {
        garment_id: GarmentInterest(
            color=colors.get(garment_id, UNKNOWN_COLOR),
            customers=len(customers[garment_id]),
            seconds=frames[garment_id] * frame_duration,
        )
        for garment_id in sorted(frames)
    }


def build_report(frames: List[FrameAnnotations], intervals: List[AssociationInterval],
                 frame_duration: float,
                 profiles: Optional[Dict[str, CustomerProfile]] = None) -> ReportBundle:
    """
    Build the full report bundle for one stream and its interval log.

    Raises:
        EmptyPopulationError: the stream has no customers
    """
    profiles = profiles if profiles is not None else build_profiles(frames)
    colors = garment_colors(frames)

    bundle = ReportBundle(
        gender_share=gender_share(profiles),
        age_share_by_gender=age_share_by_gender(profiles),
        dwell_by_demographic=dwell_by_demographic(profiles, frame_duration),
        expression_by_color=expression_by_color(profiles, intervals, colors),
        time_by_color=time_by_color(profiles, intervals, colors, frame_duration),
        garment_interest=garment_interest(profiles, intervals, colors, frame_duration),
    )
    logger.info(
        f"Report built for {len(profiles)} customers, {len(colors)} garments, {len(intervals)} intervals"
    )
    return bundle
