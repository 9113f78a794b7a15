"""
Age Groups

Maps an estimated age in years onto the four store age groups:

    1 to 17   child
    18 to 29  youth
    30 to 49  middle_aged
    50 to 90  elderly

Ages of 0 clamp to child and ages above 90 clamp to elderly, so a noisy
estimate never drops a customer from the reports.
"""

from typing import Optional

from .errors import AnnotationError
from .types import AgeGroup

MIN_AGE = 0
MAX_AGE = 120

# Upper bound (inclusive) of each group; anything above the last bound is elderly.
_GROUP_UPPER_BOUNDS = [
    (17, AgeGroup.CHILD),
    (29, AgeGroup.YOUTH),
    (49, AgeGroup.MIDDLE_AGED),
]


def age_group(age_years: int, observation: Optional[str] = None) -> AgeGroup:
    """
    Bucket an age into its age group.

    Args:
        age_years: Age estimate in whole years, 0 to 120
        observation: Optional description of the source observation, used in errors

    Returns:
        The matching AgeGroup

    Raises:
        AnnotationError: if the age lies outside [0, 120]
    """
    if not MIN_AGE <= age_years <= MAX_AGE:
        where = f" ({observation})" if observation else ""
        raise AnnotationError(f"age {age_years} outside [{MIN_AGE}, {MAX_AGE}]{where}")

    for upper, group in _GROUP_UPPER_BOUNDS:
        if age_years <= upper:
            return group
    return AgeGroup.ELDERLY
