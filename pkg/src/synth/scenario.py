"""
Synthetic Scenarios

Deterministic annotation streams with planted customer-garment associations.

Garments sit on a horizontal line, garment_spacing apart. Each customer stays
within customer_radius of its garment, jittering every frame inside a disc of
radius jitter around a fixed home point. A scripted move takes the customer out
of the scene for one frame and brings it back next to another garment.

Because customer_radius < garment_spacing / 2, each customer's nearest garment
is always its planted one, which makes the planted intervals the unique
correct answer. All randomness comes from one PCG64 generator seeded with
ScenarioConfig.seed.
"""

import json
import logging
import math
import os
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Set, Tuple

import numpy as np

from src.model.errors import ConfigError
from src.model.stream_writer import write_stream
from src.model.types import BBox, CustomerObservation, FrameAnnotations, GarmentObservation, Gender
from src.tracking.interval_csv_writer import IntervalCSVWriter
from src.tracking.tracker import AssociationInterval

logger = logging.getLogger(__name__)

PRNG_ALGORITHM = "PCG64"
GARMENT_LINE_Y = 300.0
GARMENT_ORIGIN_X = 100.0
GARMENT_BOX = (40.0, 60.0)
CUSTOMER_BOX = (60.0, 160.0)
COORD_DECIMALS = 3

DEFAULT_COLORS = ["Blue", "Pink", "Green", "Orange", "White", "Gray", "Red", "Black"]
EXPRESSIONS = ["angry", "disgust", "fear", "happy", "sad", "surprise", "neutral"]

STREAM_FILE = "stream.jsonl"
GROUND_TRUTH_FILE = "ground_truth.csv"

INTEGER_FIELDS = ("seed", "n_garments", "n_customers", "n_frames")
NUMBER_FIELDS = ("garment_spacing", "customer_radius", "jitter", "mindist")


def _as_integer(name: str, value) -> int:
    """Accept ints and integral floats; bools and strings are rejected."""
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    if isinstance(value, float) and not value.is_integer():
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    return int(value)


def _as_number(name: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError(f"{name} must be a finite number, got {value!r}")
    return float(value)


@dataclass(frozen=True)
class Move:
    """Relocate customer_id to garment index `garment` at `frame`."""

    customer_id: str
    frame: int
    garment: int


@dataclass(frozen=True)
class Demographic:
    age: int
    gender: str
    expressions: Tuple[str, ...] = ("neutral",)


@dataclass(frozen=True)
class ScenarioConfig:
    seed: int = 0
    n_garments: int = 4
    garment_spacing: float = 400.0
    n_customers: int = 10
    customer_radius: float = 50.0
    jitter: float = 2.0
    n_frames: int = 500
    moves: Tuple[Move, ...] = ()
    demographics: Dict[str, Demographic] = field(default_factory=dict)
    colors: Tuple[str, ...] = ()
    assignments: Dict[str, int] = field(default_factory=dict)
    mindist: Optional[float] = None

    @classmethod
    def from_dict(cls, data: Dict) -> "ScenarioConfig":
        """
        Build a config from a JSON-style dict.

        Raises:
            ConfigError: unknown keys or malformed values
        """
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown scenario keys: {', '.join(sorted(unknown))}")

        values = dict(data)
        for name in INTEGER_FIELDS:
            if name in values:
                values[name] = _as_integer(name, values[name])
        for name in NUMBER_FIELDS:
            if name in values and not (name == "mindist" and values[name] is None):
                values[name] = _as_number(name, values[name])
        try:
            if 'moves' in values:
                values['moves'] = tuple(
                    Move(str(m['customer_id']), int(m['frame']), int(m['garment']))
                    for m in values['moves']
                )
            if 'demographics' in values:
                values['demographics'] = {
                    str(cid): Demographic(int(d['age']), str(d['gender']),
                                          tuple(d.get('expressions', ("neutral",))))
                    for cid, d in values['demographics'].items()
                }
            if 'colors' in values:
                values['colors'] = tuple(str(c) for c in values['colors'])
            if 'assignments' in values:
                values['assignments'] = {str(k): int(v) for k, v in values['assignments'].items()}
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise ConfigError(f"malformed scenario config: {e}") from e
        return cls(**values)

    @classmethod
    def from_json_file(cls, path: str) -> "ScenarioConfig":
        with open(path, 'r', encoding='utf-8') as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as e:
                raise ConfigError(f"invalid scenario JSON in {path}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"scenario config in {path} must be a JSON object")
        return cls.from_dict(data)

    def customer_ids(self) -> List[str]:
        return [f"c{i + 1}" for i in range(self.n_customers)]

    def garment_ids(self) -> List[str]:
        return [f"g{i + 1}" for i in range(self.n_garments)]

    def validate(self):
        """
        Check the invariants that make the planted truth unambiguous.

        Raises:
            ConfigError: on the first violated invariant
        """
        for name in INTEGER_FIELDS:
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"{name} must be an integer, got {value!r}")
        if self.seed < 0:
            raise ConfigError("seed must be >= 0")
        if self.n_garments < 1:
            raise ConfigError("n_garments must be >= 1")
        if self.n_customers < 0:
            raise ConfigError("n_customers must be >= 0")
        if self.n_frames < 1:
            raise ConfigError("n_frames must be >= 1")
        if not self.garment_spacing > 0:
            raise ConfigError("garment_spacing must be > 0")
        if not self.customer_radius > 0:
            raise ConfigError("customer_radius must be > 0")
        if not self.customer_radius < self.garment_spacing / 2:
            raise ConfigError(
                f"customer_radius ({self.customer_radius}) must be < garment_spacing / 2 "
                f"({self.garment_spacing / 2})"
            )
        if not 0 <= self.jitter < self.customer_radius:
            raise ConfigError(f"jitter ({self.jitter}) must be in [0, customer_radius)")
        if self.mindist is not None and not self.jitter < self.mindist / 2:
            raise ConfigError(f"jitter ({self.jitter}) must be < mindist / 2 ({self.mindist / 2})")

        customers = set(self.customer_ids())
        for cid, garment in self.assignments.items():
            if cid not in customers:
                raise ConfigError(f"assignment for unknown customer {cid!r}")
            if not 0 <= garment < self.n_garments:
                raise ConfigError(f"assignment of {cid!r} to missing garment index {garment}")

        for cid, demo in self.demographics.items():
            if cid not in customers:
                raise ConfigError(f"demographics for unknown customer {cid!r}")
            if not 0 <= demo.age <= 120:
                raise ConfigError(f"age {demo.age} of {cid!r} outside [0, 120]")
            if demo.gender not in (g.value for g in Gender):
                raise ConfigError(f"gender {demo.gender!r} of {cid!r} is not female/male")
            if not demo.expressions:
                raise ConfigError(f"empty expression script for {cid!r}")

        last_move: Dict[str, int] = {}
        for move in sorted(self.moves, key=lambda m: (m.customer_id, m.frame)):
            if move.customer_id not in customers:
                raise ConfigError(f"move for unknown customer {move.customer_id!r}")
            if not 1 <= move.frame <= self.n_frames - 2:
                raise ConfigError(
                    f"move of {move.customer_id!r} at frame {move.frame} outside [1, {self.n_frames - 2}]"
                )
            if not 0 <= move.garment < self.n_garments:
                raise ConfigError(f"move of {move.customer_id!r} to missing garment index {move.garment}")
            previous = last_move.get(move.customer_id)
            if previous is not None and move.frame - previous < 2:
                raise ConfigError(
                    f"moves of {move.customer_id!r} at frames {previous} and {move.frame} overlap"
                )
            last_move[move.customer_id] = move.frame


@dataclass
class GroundTruth:
    intervals: List[AssociationInterval]

    def pairs(self) -> Set[Tuple[str, str]]:
        return {(i.customer_id, i.garment_id) for i in self.intervals}


def stream_header(config: ScenarioConfig) -> Dict:
    """Header line recorded at the top of generated streams."""
    return {
        'generator': 'synth',
        'prng': PRNG_ALGORITHM,
        'seed': config.seed,
        'n_frames': config.n_frames,
        'n_customers': config.n_customers,
        'n_garments': config.n_garments,
    }


def _disc_offsets(rng: np.random.Generator, n: int, radius: float) -> np.ndarray:
    """n points drawn uniformly in a disc of the given radius."""
    r = radius * np.sqrt(rng.random(n))
    theta = 2 * math.pi * rng.random(n)
    return np.column_stack((r * np.cos(theta), r * np.sin(theta)))


def _box(cx: float, cy: float, size: Tuple[float, float]) -> BBox:
    half_w, half_h = size[0] / 2, size[1] / 2
    return BBox(round(cx - half_w, COORD_DECIMALS), round(cy - half_h, COORD_DECIMALS),
                round(cx + half_w, COORD_DECIMALS), round(cy + half_h, COORD_DECIMALS))


def _draw_demographics(config: ScenarioConfig, rng: np.random.Generator) -> Dict[str, Demographic]:
    demographics = {}
    for cid in config.customer_ids():
        age = int(rng.integers(5, 86))
        gender = (Gender.FEMALE, Gender.MALE)[int(rng.integers(2))].value
        expression = EXPRESSIONS[int(rng.integers(len(EXPRESSIONS)))]
        demographics[cid] = config.demographics.get(cid, Demographic(age, gender, (expression,)))
    return demographics


def generate(config: ScenarioConfig) -> Tuple[List[FrameAnnotations], GroundTruth]:
    """
    Generate a stream and its planted ground truth.

    Returns:
        (frames, ground truth); identical configs give identical results

    Raises:
        ConfigError: the config violates its invariants
    """
    config.validate()
    rng = np.random.Generator(np.random.PCG64(config.seed))

    customer_ids = config.customer_ids()
    garment_ids = config.garment_ids()
    colors = list(config.colors) or DEFAULT_COLORS
    garment_centers = [(GARMENT_ORIGIN_X + i * config.garment_spacing, GARMENT_LINE_Y)
                       for i in range(config.n_garments)]
    garment_boxes = [_box(x, y, GARMENT_BOX) for x, y in garment_centers]

    demographics = _draw_demographics(config, rng)
    home_radius = config.customer_radius - config.jitter

    def new_home(garment: int) -> np.ndarray:
        return np.array(garment_centers[garment]) + _disc_offsets(rng, 1, home_radius)[0]

    current = {cid: config.assignments.get(cid, i % config.n_garments)
               for i, cid in enumerate(customer_ids)}
    homes = {cid: new_home(current[cid]) for cid in customer_ids}
    opened = {cid: 0 for cid in customer_ids}

    moves_at: Dict[int, List[Move]] = {}
    for move in config.moves:
        moves_at.setdefault(move.frame, []).append(move)

    truth: List[AssociationInterval] = []
    frames: List[FrameAnnotations] = []
    for f in range(config.n_frames):
        for move in moves_at.get(f - 1, []):
            current[move.customer_id] = move.garment
            homes[move.customer_id] = new_home(move.garment)
            opened[move.customer_id] = f

        in_transit = set()
        for move in moves_at.get(f, []):
            cid = move.customer_id
            truth.append(AssociationInterval(cid, garment_ids[current[cid]], opened[cid], f - 1))
            in_transit.add(cid)

        offsets = _disc_offsets(rng, len(customer_ids), config.jitter)
        customers = []
        for i, cid in enumerate(customer_ids):
            if cid in in_transit:
                continue
            demo = demographics[cid]
            x, y = homes[cid] + offsets[i]
            customers.append(CustomerObservation(
                tracking_id=cid,
                frame=f,
                bbox=_box(float(x), float(y), CUSTOMER_BOX),
                age_years=demo.age,
                gender=Gender(demo.gender),
                expression=demo.expressions[f % len(demo.expressions)],
            ))

        garments = tuple(
            GarmentObservation(gid, f, garment_boxes[j], colors[j % len(colors)])
            for j, gid in enumerate(garment_ids)
        )
        frames.append(FrameAnnotations(frame=f, customers=tuple(customers), garments=garments))

    last = config.n_frames - 1
    for cid in customer_ids:
        truth.append(AssociationInterval(cid, garment_ids[current[cid]], opened[cid], last))
    truth.sort(key=AssociationInterval.sort_key)

    logger.info(
        f"Generated {len(frames)} frames, {len(customer_ids)} customers, "
        f"{len(garment_ids)} garments, {len(truth)} planted intervals (seed {config.seed})"
    )
    return frames, GroundTruth(truth)


def write_scenario(frames: List[FrameAnnotations], truth: GroundTruth, config: ScenarioConfig,
                   output_dir: str, frame_duration: float) -> Tuple[str, str]:
    """
    Write stream.jsonl (with header) and ground_truth.csv into output_dir.

    Returns:
        (stream path, ground truth path)
    """
    os.makedirs(output_dir, exist_ok=True)
    stream_path = os.path.join(output_dir, STREAM_FILE)
    truth_path = os.path.join(output_dir, GROUND_TRUTH_FILE)
    write_stream(frames, stream_path, header=stream_header(config))
    IntervalCSVWriter(frame_duration).save_intervals_to_csv(truth.intervals, truth_path)
    return stream_path, truth_path


def scenario_to_dict(config: ScenarioConfig) -> Dict:
    """JSON-ready view of a config (used in manifests)."""
    data = asdict(config)
    data['moves'] = [asdict(m) for m in config.moves]
    data['demographics'] = {cid: {'age': d.age, 'gender': d.gender, 'expressions': list(d.expressions)}
                            for cid, d in config.demographics.items()}
    data['colors'] = list(config.colors)
    return data
