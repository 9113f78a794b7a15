"""
Model Package

Domain types, age groups, errors and the annotation-stream reader shared by
the clustering, tracking, analytics and synthesis packages.
"""

from .errors import (
    AnnotationError,
    ClusteringError,
    ConfigError,
    EmptyPopulationError,
    EngineError,
    StreamOrderError,
)
from .types import (
    AgeGroup,
    BBox,
    CustomerObservation,
    EngineConfig,
    EntityKind,
    FrameAnnotations,
    GarmentObservation,
    Gender,
    Point2D,
    bbox_center,
    entity_key,
    validate_frame,
)
from .age_groups import age_group
from .stream_reader import StreamValidationReport, iter_stream, read_stream, validate_stream
from .stream_writer import frame_to_record, write_stream

__all__ = [
    'AnnotationError',
    'ClusteringError',
    'ConfigError',
    'EmptyPopulationError',
    'EngineError',
    'StreamOrderError',
    'AgeGroup',
    'BBox',
    'CustomerObservation',
    'EngineConfig',
    'EntityKind',
    'FrameAnnotations',
    'GarmentObservation',
    'Gender',
    'Point2D',
    'bbox_center',
    'entity_key',
    'validate_frame',
    'age_group',
    'StreamValidationReport',
    'iter_stream',
    'read_stream',
    'validate_stream',
    'frame_to_record',
    'write_stream',
]
