"""
Annotation Stream Reader

Reads and validates JSON Lines annotation streams, one frame object per line:

    {"frame": 0,
     "customers": [{"id": "c1", "bbox": [x_min, y_min, x_max, y_max],
                    "age": 34, "gender": "female", "expression": "happy"}],
     "garments":  [{"id": "g1", "bbox": [...], "color": "Blue"}]}

An optional first line {"header": {...}} is skipped. Frames must appear in
strictly increasing frame order.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Literal, Optional, Set, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, FiniteFloat, ValidationError, model_validator

from .errors import AnnotationError, StreamOrderError
from .types import (
    BBox,
    CustomerObservation,
    FrameAnnotations,
    GarmentObservation,
    Gender,
)

logger = logging.getLogger(__name__)

BoxList = Tuple[FiniteFloat, FiniteFloat, FiniteFloat, FiniteFloat]


class _BoxedRecord(BaseModel):
    model_config = ConfigDict(extra="ignore", frozen=True)

    id: str = Field(min_length=1)
    bbox: BoxList

    @model_validator(mode="after")
    def _check_corners(self):
        x_min, y_min, x_max, y_max = self.bbox
        if x_min > x_max or y_min > y_max:
            raise ValueError(f"inverted bbox {list(self.bbox)} for id {self.id!r}")
        return self


class CustomerRecord(_BoxedRecord):
    age: int = Field(ge=0, le=120, strict=True)
    gender: Literal["female", "male"]
    expression: str


class GarmentRecord(_BoxedRecord):
    color: str


class FrameRecord(BaseModel):
    """Wire schema of one JSONL line."""

    model_config = ConfigDict(extra="ignore", frozen=True)

    frame: int = Field(ge=0, strict=True)
    customers: List[CustomerRecord] = []
    garments: List[GarmentRecord] = []

    @model_validator(mode="after")
    def _check_unique_ids(self):
        for kind, records in (("customer", self.customers), ("garment", self.garments)):
            seen = set()
            for record in records:
                if record.id in seen:
                    raise ValueError(f"duplicate {kind} id {record.id!r} in frame {self.frame}")
                seen.add(record.id)
        return self

    def to_frame(self) -> FrameAnnotations:
        customers = tuple(
            CustomerObservation(
                tracking_id=c.id,
                frame=self.frame,
                bbox=BBox.from_list(c.bbox),
                age_years=c.age,
                gender=Gender(c.gender),
                expression=c.expression,
            )
            for c in self.customers
        )
        garments = tuple(
            GarmentObservation(
                tracking_id=g.id,
                frame=self.frame,
                bbox=BBox.from_list(g.bbox),
                color=g.color,
            )
            for g in self.garments
        )
        return FrameAnnotations(frame=self.frame, customers=customers, garments=garments)


def _describe_validation_error(error: ValidationError) -> str:
    """Flatten pydantic errors to 'field.path: message' fragments."""
    parts = []
    for err in error.errors():
        loc = ".".join(str(p) for p in err["loc"])
        msg = err["msg"]
        parts.append(f"{loc}: {msg}" if loc else msg)
    return "; ".join(parts)


def parse_line(line: Union[str, bytes], line_no: int) -> Optional[FrameAnnotations]:
    """
    Parse one JSONL line into a frame.

    Returns:
        FrameAnnotations, or None for blank and header lines

    Raises:
        AnnotationError: undecodable bytes, malformed JSON or schema violation,
            citing the line number
    """
    if isinstance(line, bytes):
        try:
            line = line.decode("utf-8")
        except UnicodeDecodeError as e:
            raise AnnotationError(f"invalid UTF-8 at byte {e.start}: {e.reason}", line=line_no) from e
    text = line.strip()
    if not text:
        return None
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise AnnotationError(f"invalid JSON: {e}", line=line_no) from e

    if isinstance(payload, dict) and set(payload) == {"header"}:
        logger.debug(f"Skipping stream header on line {line_no}: {payload['header']}")
        return None

    try:
        record = FrameRecord.model_validate(payload)
    except ValidationError as e:
        raise AnnotationError(_describe_validation_error(e), line=line_no) from e
    return record.to_frame()


def iter_stream(path: str) -> Iterator[Tuple[int, FrameAnnotations]]:
    """
    Yield (line_no, frame) pairs from a JSONL stream, enforcing frame order.

    Raises:
        AnnotationError: first schema violation or out-of-order frame
        OSError: the file cannot be read
    """
    last_frame = -1
    with open(path, "rb") as f:
        for line_no, line in enumerate(f, 1):
            frame = parse_line(line, line_no)
            if frame is None:
                continue
            if frame.frame <= last_frame:
                raise StreamOrderError(
                    f"frame {frame.frame} does not follow frame {last_frame}", line=line_no
                )
            last_frame = frame.frame
            yield line_no, frame


def read_stream(path: str) -> List[FrameAnnotations]:
    """
    Read a whole annotation stream.

    Raises:
        AnnotationError: schema violation, out-of-order frames, or no frames at all
    """
    frames = [frame for _, frame in iter_stream(path)]
    if not frames:
        raise AnnotationError(f"no frames in {path}")
    logger.info(f"Read {len(frames)} frames from {path}")
    return frames


@dataclass
class StreamValidationReport:
    """Summary of a full validation pass over a stream."""

    frames: int = 0
    customer_ids: Set[str] = field(default_factory=set)
    garment_ids: Set[str] = field(default_factory=set)
    violations: List[Tuple[int, str]] = field(default_factory=list)
    total_violations: int = 0

    @property
    def ok(self) -> bool:
        return self.total_violations == 0

    def summary(self) -> str:
        return (
            f"OK, {self.frames} frames, {len(self.customer_ids)} customers, "
            f"{len(self.garment_ids)} garments"
        )


def validate_stream(path: str, max_violations: int = 20) -> StreamValidationReport:
    """
    Validate every line of a stream, collecting violations instead of stopping.

    Args:
        path: JSONL stream path
        max_violations: How many violations to keep in the report

    Returns:
        StreamValidationReport with counts and up to max_violations violations
    """
    report = StreamValidationReport()

    def record(line_no: int, message: str):
        report.total_violations += 1
        if len(report.violations) < max_violations:
            report.violations.append((line_no, message))

    last_frame = -1
    with open(path, "rb") as f:
        for line_no, line in enumerate(f, 1):
            try:
                frame = parse_line(line, line_no)
            except AnnotationError as e:
                record(line_no, e.detail)
                continue
            if frame is None:
                continue
            if frame.frame <= last_frame:
                record(line_no, f"frame {frame.frame} does not follow frame {last_frame}")
                continue
            last_frame = frame.frame
            report.frames += 1
            report.customer_ids.update(c.tracking_id for c in frame.customers)
            report.garment_ids.update(g.tracking_id for g in frame.garments)

    if report.frames == 0 and report.total_violations == 0:
        record(0, "no frames")
    return report
