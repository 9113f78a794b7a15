"""
Weighted k-Means

Lloyd-style k-Means over 2-D weighted points, seeded from caller-supplied
centroids. Garment points carry a high weight so that each centroid stays
anchored near its garment while customers gather around it.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List

import numpy as np

from src.model.errors import ClusteringError
from src.model.types import EntityKind, Point2D, entity_key

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightedPoint:
    id: str
    pos: Point2D
    weight: float
    kind: EntityKind

    def __post_init__(self):
        if not self.weight > 0:
            raise ClusteringError(f"point {self.id!r} has non-positive weight {self.weight}")

    @property
    def key(self) -> str:
        return entity_key(self.kind, self.id)


@dataclass(frozen=True)
class Cluster:
    """One k-Means cluster; members are entity keys (see entity_key)."""

    index: int
    centroid: Point2D
    members: FrozenSet[str]


def point_coords(points: Iterable[WeightedPoint]) -> np.ndarray:
    """(n, 2) array of point positions."""
    return np.array([[p.pos.x, p.pos.y] for p in points], dtype=float).reshape(-1, 2)


def distance_matrix(coords: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    """Euclidean distance from every point (rows) to every centroid (columns)."""
    return np.hypot(coords[:, None, 0] - centroids[None, :, 0], coords[:, None, 1] - centroids[None, :, 1])


def _assign(coords: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    """Nearest centroid per point; argmin keeps the lowest index on ties."""
    deltas = coords[:, None, :] - centroids[None, :, :]
    sq_dist = (deltas ** 2).sum(axis=-1)
    return np.argmin(sq_dist, axis=1)


def _weighted_means(coords: np.ndarray, weights: np.ndarray, labels: np.ndarray,
                    previous: np.ndarray) -> np.ndarray:
    k = previous.shape[0]
    weight_sum = np.bincount(labels, weights=weights, minlength=k)
    sum_x = np.bincount(labels, weights=weights * coords[:, 0], minlength=k)
    sum_y = np.bincount(labels, weights=weights * coords[:, 1], minlength=k)

    updated = previous.copy()
    occupied = weight_sum > 0
    # empty clusters keep their previous centroid
    updated[occupied, 0] = sum_x[occupied] / weight_sum[occupied]
    updated[occupied, 1] = sum_y[occupied] / weight_sum[occupied]
    return updated


def weighted_kmeans(points: List[WeightedPoint], initial_centroids: List[Point2D],
                    max_iters: int = 100, tol: float = 1e-6) -> List[Cluster]:
    """
    Run weighted Lloyd iterations from the given seeds.

    Each iteration assigns every point to its nearest centroid (ties go to the
    lowest centroid index) and moves every occupied centroid to the weighted
    mean of its members. Iteration stops once no centroid moves by tol or more,
    or after max_iters iterations.

    Args:
        points: Points to cluster
        initial_centroids: Seeds; k = len(initial_centroids)
        max_iters: Iteration cap
        tol: Convergence threshold on centroid displacement (pixels)

    Returns:
        k clusters in seed order

    Raises:
        ClusteringError: no centroids or no points
    """
    if not initial_centroids:
        raise ClusteringError("no centroids")
    if not points:
        raise ClusteringError("no points to cluster")
    if max_iters < 1:
        raise ClusteringError(f"max_iters must be >= 1, got {max_iters}")

    coords = point_coords(points)
    weights = np.array([p.weight for p in points], dtype=float)
    centroids = np.array([[c.x, c.y] for c in initial_centroids], dtype=float)

    for iteration in range(1, max_iters + 1):
        labels = _assign(coords, centroids)
        updated = _weighted_means(coords, weights, labels, centroids)
        shift = float(np.hypot(*(updated - centroids).T).max())
        centroids = updated
        if shift < tol:
            logger.debug(f"WKM converged after {iteration} iterations (shift {shift:.3g})")
            break
    else:
        logger.debug(f"WKM stopped at max_iters={max_iters}")

    keys = [p.key for p in points]
    clusters = []
    for j in range(centroids.shape[0]):
        members = frozenset(keys[i] for i in np.flatnonzero(labels == j))
        clusters.append(Cluster(index=j,
                                centroid=Point2D(float(centroids[j, 0]), float(centroids[j, 1])),
                                members=members))
    return clusters


def index_points(points: Iterable[WeightedPoint]) -> Dict[str, WeightedPoint]:
    """Index points by entity key."""
    return {p.key: p for p in points}


def compute_max_dist(clusters: List[Cluster], points: Dict[str, WeightedPoint]) -> float:
    """
    Largest distance from any point to the centroid of its assigned cluster.

    Args:
        clusters: WKM clusters
        points: Points indexed by entity key

    Returns:
        maxDist in pixels

    Raises:
        ClusteringError: every cluster is empty
    """
    if not any(cluster.members for cluster in clusters):
        raise ClusteringError("cannot compute maxDist: all clusters are empty")

    pairs = np.array([
        (points[key].pos.x, points[key].pos.y, cluster.centroid.x, cluster.centroid.y)
        for cluster in clusters
        for key in cluster.members
    ], dtype=float)
    return float(np.hypot(pairs[:, 0] - pairs[:, 2], pairs[:, 1] - pairs[:, 3]).max())
