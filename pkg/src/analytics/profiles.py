"""
Customer Profiles

Collapses per-frame observations into one profile per customer and one color
per garment.
"""

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, List

from src.model.age_groups import age_group
from src.model.types import AgeGroup, FrameAnnotations, Gender

logger = logging.getLogger(__name__)

# female wins gender ties
_GENDER_TIE_ORDER = [Gender.FEMALE, Gender.MALE]


@dataclass(frozen=True)
class CustomerProfile:
    customer_id: str
    gender: Gender
    age_years: int
    age_group: AgeGroup
    expressions: Dict[int, str]
    first_frame: int
    last_frame: int

    @property
    def frames_seen(self) -> int:
        return len(self.expressions)

    def presence_seconds(self, frame_duration: float) -> float:
        """Time in store: first to last frame seen, inclusive."""
        return (self.last_frame - self.first_frame + 1) * frame_duration


def _modal_age(ages: List[int]) -> int:
    counts = Counter(ages)
    return max(counts, key=lambda age: (counts[age], -age))


def _modal_gender(genders: List[Gender]) -> Gender:
    counts = Counter(genders)
    return max(_GENDER_TIE_ORDER, key=lambda g: (counts[g], -_GENDER_TIE_ORDER.index(g)))


def build_profiles(frames: Iterable[FrameAnnotations]) -> Dict[str, CustomerProfile]:
    """
    One profile per customer seen in the stream.

    Age is the modal age over the customer's observations (ties go to the lowest
    age); gender is the modal gender (ties go to female). Expressions are kept
    per frame.

    Returns:
        Profiles keyed by customer ID, in ID order
    """
    ages: Dict[str, List[int]] = defaultdict(list)
    genders: Dict[str, List[Gender]] = defaultdict(list)
    expressions: Dict[str, Dict[int, str]] = defaultdict(dict)

    for frame in frames:
        for customer in frame.customers:
            ages[customer.tracking_id].append(customer.age_years)
            genders[customer.tracking_id].append(customer.gender)
            expressions[customer.tracking_id][frame.frame] = customer.expression

    profiles = {}
    for customer_id in sorted(ages):
        age = _modal_age(ages[customer_id])
        seen = expressions[customer_id]
        profiles[customer_id] = CustomerProfile(
            customer_id=customer_id,
            gender=_modal_gender(genders[customer_id]),
            age_years=age,
            age_group=age_group(age, observation=f"customer {customer_id!r}"),
            expressions=seen,
            first_frame=min(seen),
            last_frame=max(seen),
        )

    logger.info(f"Built {len(profiles)} customer profiles")
    return profiles


def garment_colors(frames: Iterable[FrameAnnotations]) -> Dict[str, str]:
    """Modal color per garment ID (ties go to the lexicographically lowest label)."""
    colors: Dict[str, Counter] = defaultdict(Counter)
    for frame in frames:
        for garment in frame.garments:
            colors[garment.tracking_id][garment.color] += 1

    return {
        garment_id: min(counts, key=lambda color: (-counts[color], color))
        for garment_id, counts in sorted(colors.items())
    }
