"""
Domain Types

Plain immutable values shared by every module: positions, boxes, per-frame
observations of customers and garments, and the engine configuration.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

from .errors import AnnotationError, ConfigError


class Gender(str, Enum):
    FEMALE = "female"
    MALE = "male"


class AgeGroup(str, Enum):
    """Age buckets, ordered from youngest to oldest."""

    CHILD = "child"
    YOUTH = "youth"
    MIDDLE_AGED = "middle_aged"
    ELDERLY = "elderly"

    @property
    def rank(self) -> int:
        return _AGE_GROUP_ORDER.index(self)


_AGE_GROUP_ORDER = [AgeGroup.CHILD, AgeGroup.YOUTH, AgeGroup.MIDDLE_AGED, AgeGroup.ELDERLY]


class EntityKind(str, Enum):
    GARMENT = "garment"
    CUSTOMER = "customer"


def entity_key(kind: EntityKind, tracking_id: str) -> str:
    """Namespaced key that keeps customer and garment IDs disjoint."""
    return f"{kind.value}:{tracking_id}"


@dataclass(frozen=True)
class Point2D:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise AnnotationError(f"non-finite point ({self.x}, {self.y})")

    def distance_to(self, other: "Point2D") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class BBox:
    x_min: float
    y_min: float
    x_max: float
    y_max: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x_min, self.y_min, self.x_max, self.y_max)):
            raise AnnotationError(f"non-finite bbox {self.as_list()}")
        if self.x_min > self.x_max or self.y_min > self.y_max:
            raise AnnotationError(f"inverted bbox {self.as_list()}")

    @classmethod
    def from_list(cls, values) -> "BBox":
        x_min, y_min, x_max, y_max = (float(v) for v in values)
        return cls(x_min, y_min, x_max, y_max)

    def as_list(self) -> List[float]:
        return [self.x_min, self.y_min, self.x_max, self.y_max]

    def center(self) -> Point2D:
        return Point2D((self.x_min + self.x_max) / 2, (self.y_min + self.y_max) / 2)


def bbox_center(b: BBox) -> Point2D:
    """Arithmetic midpoint of the box corners."""
    return b.center()


@dataclass(frozen=True)
class CustomerObservation:
    tracking_id: str
    frame: int
    bbox: BBox
    age_years: int
    gender: Gender
    expression: str

    @property
    def key(self) -> str:
        return entity_key(EntityKind.CUSTOMER, self.tracking_id)


@dataclass(frozen=True)
class GarmentObservation:
    tracking_id: str
    frame: int
    bbox: BBox
    color: str

    @property
    def key(self) -> str:
        return entity_key(EntityKind.GARMENT, self.tracking_id)


@dataclass(frozen=True)
class FrameAnnotations:
    frame: int
    customers: Tuple[CustomerObservation, ...] = ()
    garments: Tuple[GarmentObservation, ...] = ()

    def entity_keys(self) -> List[str]:
        return [c.key for c in self.customers] + [g.key for g in self.garments]


def validate_frame(frame: FrameAnnotations) -> None:
    """
    Check frame-level invariants of an in-memory frame.

    Raises:
        AnnotationError: negative frame index, mismatched observation frame,
            empty or duplicate tracking ID, or age outside [0, 120].
    """
    if frame.frame < 0:
        raise AnnotationError(f"negative frame index {frame.frame}")

    seen = set()
    for obs in (*frame.customers, *frame.garments):
        if obs.frame != frame.frame:
            raise AnnotationError(
                f"observation {obs.tracking_id!r} carries frame {obs.frame}, expected {frame.frame}"
            )
        if not obs.tracking_id:
            raise AnnotationError(f"empty tracking id in frame {frame.frame}")
        if obs.key in seen:
            raise AnnotationError(f"duplicate id {obs.tracking_id!r} in frame {frame.frame}")
        seen.add(obs.key)

    for customer in frame.customers:
        if not 0 <= customer.age_years <= 120:
            raise AnnotationError(
                f"customer {customer.tracking_id!r} in frame {frame.frame} has age {customer.age_years} outside [0, 120]"
            )


@dataclass(frozen=True)
class EngineConfig:
    """Tunable parameters of the association engine."""

    garment_weight: float = 10.0
    customer_weight: float = 1.0
    mindist: float = 20.0           # pixels
    frame_duration: float = 1 / 25  # seconds per frame
    wkm_max_iters: int = 100
    wkm_tol: float = 1e-6           # pixels

    def __post_init__(self):
        if not self.customer_weight > 0:
            raise ConfigError(f"customer_weight must be > 0, got {self.customer_weight}")
        if not self.garment_weight > self.customer_weight:
            raise ConfigError(
                f"garment_weight ({self.garment_weight}) must exceed customer_weight ({self.customer_weight})"
            )
        if not self.mindist >= 0:
            raise ConfigError(f"mindist must be >= 0, got {self.mindist}")
        if not self.frame_duration > 0:
            raise ConfigError(f"frame_duration must be > 0, got {self.frame_duration}")
        if self.wkm_max_iters < 1:
            raise ConfigError(f"wkm_max_iters must be >= 1, got {self.wkm_max_iters}")
        if not self.wkm_tol >= 0:
            raise ConfigError(f"wkm_tol must be >= 0, got {self.wkm_tol}")

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in self.__dataclass_fields__}
