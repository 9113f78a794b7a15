"""
Association Tracker

Replays an annotation stream frame by frame. The extended MCOKE runs on the
first frame and afterwards only when a frame shows a significant change:

- an entity moved more than mindist from its original coordinates (its center
  when the clustering was last applied), or
- a customer or garment appeared or disappeared.

Between re-clusterings memberships are held constant. Differences between
consecutive membership tables open and close association intervals.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from src.clustering.mcoke import LabeledClustering, MembershipTable, cluster_frame
from src.model.errors import StreamOrderError
from src.model.types import EngineConfig, FrameAnnotations, Point2D, validate_frame

logger = logging.getLogger(__name__)

Pair = Tuple[str, str]


@dataclass(frozen=True)
class AssociationInterval:
    """A customer held membership in a garment's cluster from start to end (inclusive)."""

    customer_id: str
    garment_id: str
    start_frame: int
    end_frame: int

    def __post_init__(self):
        if self.start_frame > self.end_frame:
            raise ValueError(f"interval starts at {self.start_frame} after it ends at {self.end_frame}")

    @property
    def frames(self) -> int:
        return self.end_frame - self.start_frame + 1

    def duration_seconds(self, frame_duration: float) -> float:
        return self.frames * frame_duration

    def sort_key(self) -> Tuple[int, str, str]:
        return (self.start_frame, self.customer_id, self.garment_id)


@dataclass(frozen=True)
class ClusteringSnapshot:
    frame_of_clustering: int
    labeled: LabeledClustering
    membership: MembershipTable
    original_coords: Dict[str, Point2D]


@dataclass
class TrackerState:
    """Single-writer state of one stream."""

    snapshot: Optional[ClusteringSnapshot] = None
    open_intervals: Dict[Pair, int] = field(default_factory=dict)
    closed_intervals: List[AssociationInterval] = field(default_factory=list)
    last_frame: int = -1
    clusterings: int = 0


def frame_positions(frame: FrameAnnotations) -> Dict[str, Point2D]:
    """Current box centers keyed by namespaced entity key."""
    positions = {c.key: c.bbox.center() for c in frame.customers}
    positions.update((g.key, g.bbox.center()) for g in frame.garments)
    return positions


def significant_change(frame: FrameAnnotations, snapshot: ClusteringSnapshot, mindist: float,
                       positions: Optional[Dict[str, Point2D]] = None) -> bool:
    """
    Whether the frame differs enough from the snapshot to re-cluster.

    True iff the set of entities changed, or some entity lies strictly more than
    mindist from its original coordinates.
    """
    positions = positions if positions is not None else frame_positions(frame)
    original = snapshot.original_coords
    if positions.keys() != original.keys():
        return True
    return any(pos.distance_to(original[key]) > mindist for key, pos in positions.items())


def process_frame(state: TrackerState, frame: FrameAnnotations,
                  config: EngineConfig) -> Tuple[TrackerState, List[AssociationInterval]]:
    """
    Advance the tracker by one frame.

    The state is updated in place and returned along with the intervals this
    frame closed. Memberships that vanish at a re-clustering close at the last
    processed frame; new ones open at this frame.

    Raises:
        StreamOrderError: frame index not after the last processed frame
        AnnotationError: the frame violates frame-level invariants
    """
    if frame.frame <= state.last_frame:
        raise StreamOrderError(f"frame {frame.frame} does not follow frame {state.last_frame}")
    validate_frame(frame)

    closed: List[AssociationInterval] = []
    positions = frame_positions(frame)
    if state.snapshot is None or significant_change(frame, state.snapshot, config.mindist, positions):
        labeled, membership = cluster_frame(frame.customers, frame.garments, config)
        state.snapshot = ClusteringSnapshot(frame.frame, labeled, membership, positions)
        state.clusterings += 1

        current = membership.pairs()
        previous = set(state.open_intervals)
        for pair in sorted(previous - current):
            start = state.open_intervals.pop(pair)
            interval = AssociationInterval(pair[0], pair[1], start, state.last_frame)
            state.closed_intervals.append(interval)
            closed.append(interval)
        for pair in sorted(current - previous):
            state.open_intervals[pair] = frame.frame

        logger.debug(
            f"Re-clustered at frame {frame.frame}: {len(current)} memberships, "
            f"{len(closed)} closed, {len(current - previous)} opened"
        )

    state.last_frame = frame.frame
    return state, closed


def finalize(state: TrackerState) -> List[AssociationInterval]:
    """
    Close every open interval at the last processed frame.

    Returns:
        The complete interval log sorted by (start_frame, customer_id, garment_id)
    """
    for pair in sorted(state.open_intervals):
        start = state.open_intervals[pair]
        state.closed_intervals.append(AssociationInterval(pair[0], pair[1], start, state.last_frame))
    state.open_intervals.clear()
    return sorted(state.closed_intervals, key=AssociationInterval.sort_key)


class AssociationTracker:
    """Stateful wrapper that replays one stream through process_frame."""

    def __init__(self, config: Optional[EngineConfig] = None):
        self.config = config or EngineConfig()
        self.state = TrackerState()
        self.logger = logging.getLogger(__name__)

    @property
    def clusterings(self) -> int:
        return self.state.clusterings

    def process_frame(self, frame: FrameAnnotations) -> List[AssociationInterval]:
        _, closed = process_frame(self.state, frame, self.config)
        return closed

    def finalize(self) -> List[AssociationInterval]:
        intervals = finalize(self.state)
        self.logger.info(
            f"Tracked through frame {self.state.last_frame}: "
            f"{self.state.clusterings} clusterings, {len(intervals)} intervals"
        )
        return intervals

    def run(self, frames: Iterable[FrameAnnotations]) -> List[AssociationInterval]:
        for frame in frames:
            self.process_frame(frame)
        return self.finalize()
