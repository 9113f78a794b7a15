"""
Extended MCOKE

Turns a weighted k-Means result into garment-labelled clusters with
overlapping customer membership:

1. weighted k-Means seeded at the garment centers (garments weigh more)
2. maxDist = largest point-to-own-centroid distance
3. one garment per cluster, cluster ID = garment tracking ID
4. a customer belongs to every cluster whose centroid lies within maxDist
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from src.model.errors import ClusteringError
from src.model.types import (
    CustomerObservation,
    EngineConfig,
    EntityKind,
    GarmentObservation,
)
from .wkm import (
    Cluster,
    WeightedPoint,
    compute_max_dist,
    distance_matrix,
    index_points,
    point_coords,
    weighted_kmeans,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LabeledClustering:
    """Clusters keyed by the tracking ID of the one garment each contains."""

    clusters: Dict[str, Cluster] = field(default_factory=dict)
    max_dist: float = 0.0


@dataclass(frozen=True, eq=False)
class MembershipTable:
    """
    Binary customer x cluster matrix.

    A row may hold several 1s (the customer attends several garments) or none
    (the customer is not associated with any garment).
    """

    customers: Tuple[str, ...]
    clusters: Tuple[str, ...]
    cells: np.ndarray

    def _row_index(self, customer_id: str) -> int:
        try:
            return self.customers.index(customer_id)
        except ValueError:
            raise KeyError(customer_id) from None

    def row(self, customer_id: str) -> Dict[str, int]:
        values = self.cells[self._row_index(customer_id)]
        return {garment_id: int(v) for garment_id, v in zip(self.clusters, values)}

    def members_of(self, customer_id: str) -> List[str]:
        """Garment IDs whose cluster the customer belongs to, in column order."""
        values = self.cells[self._row_index(customer_id)]
        return [garment_id for garment_id, v in zip(self.clusters, values) if v]

    def pairs(self) -> Set[Tuple[str, str]]:
        rows, cols = np.nonzero(self.cells)
        return {(self.customers[r], self.clusters[c]) for r, c in zip(rows, cols)}


def _empty_table(customer_ids: Sequence[str], cluster_ids: Sequence[str] = ()) -> MembershipTable:
    cells = np.zeros((len(customer_ids), len(cluster_ids)), dtype=np.uint8)
    cells.setflags(write=False)
    return MembershipTable(tuple(customer_ids), tuple(cluster_ids), cells)


def enforce_garment_identity(clusters: List[Cluster], garments: List[WeightedPoint],
                             max_dist: float = 0.0) -> LabeledClustering:
    """
    Match garments to clusters one-to-one and key each cluster by its garment.

    Matching is greedy in increasing garment-to-centroid distance, ties going to
    the lowest garment ID. A garment that WKM left in a foreign cluster is moved
    into its matched cluster; customer members are untouched.

    Args:
        clusters: WKM clusters, one per garment
        garments: Garment points
        max_dist: maxDist carried into the labeled result

    Returns:
        LabeledClustering keyed by garment tracking ID, in garment order

    Raises:
        ClusteringError: cluster and garment counts differ
    """
    if len(clusters) != len(garments):
        raise ClusteringError(
            f"internal invariant violated: {len(clusters)} clusters for {len(garments)} garments"
        )

    centroids = np.array([[c.centroid.x, c.centroid.y] for c in clusters], dtype=float).reshape(-1, 2)
    dist = distance_matrix(point_coords(garments), centroids).tolist()
    candidates = sorted(
        (dist[g][c], garment.id, cluster.index)
        for g, garment in enumerate(garments)
        for c, cluster in enumerate(clusters)
    )
    matched: Dict[str, int] = {}
    taken: Set[int] = set()
    for _, garment_id, cluster_index in candidates:
        if garment_id in matched or cluster_index in taken:
            continue
        matched[garment_id] = cluster_index
        taken.add(cluster_index)

    by_index = {cluster.index: cluster for cluster in clusters}
    garment_keys = {garment.key for garment in garments}
    labeled: Dict[str, Cluster] = {}
    for garment in garments:
        cluster = by_index[matched[garment.id]]
        if garment.key not in cluster.members:
            logger.debug(f"Moving garment {garment.id!r} into cluster {cluster.index}")
        members = (cluster.members - garment_keys) | {garment.key}
        labeled[garment.id] = Cluster(index=cluster.index, centroid=cluster.centroid,
                                      members=frozenset(members))

    return LabeledClustering(clusters=labeled, max_dist=max_dist)


def build_membership(labeled: LabeledClustering, customers: List[WeightedPoint]) -> MembershipTable:
    """
    Build the membership table with maxDist as an inclusive threshold.

    cell[c][g] = 1 iff the customer's point lies within maxDist of cluster g's
    centroid. Garment points never appear as rows.
    """
    cluster_ids = list(labeled.clusters)
    if not customers or not cluster_ids:
        return _empty_table([p.id for p in customers], cluster_ids)
    centroids = np.array([[labeled.clusters[g].centroid.x, labeled.clusters[g].centroid.y]
                          for g in cluster_ids], dtype=float)
    dist = distance_matrix(point_coords(customers), centroids)
    cells = (dist <= labeled.max_dist).astype(np.uint8)
    cells.setflags(write=False)
    return MembershipTable(tuple(p.id for p in customers), tuple(cluster_ids), cells)


def to_weighted_points(customers: Sequence[CustomerObservation],
                       garments: Sequence[GarmentObservation],
                       config: EngineConfig) -> Tuple[List[WeightedPoint], List[WeightedPoint]]:
    """Box centers weighted per config; returns (customer points, garment points)."""
    customer_points = [
        WeightedPoint(c.tracking_id, c.bbox.center(), config.customer_weight, EntityKind.CUSTOMER)
        for c in customers
    ]
    garment_points = [
        WeightedPoint(g.tracking_id, g.bbox.center(), config.garment_weight, EntityKind.GARMENT)
        for g in garments
    ]
    return customer_points, garment_points


def cluster_frame(customers: Sequence[CustomerObservation], garments: Sequence[GarmentObservation],
                  config: Optional[EngineConfig] = None) -> Tuple[LabeledClustering, MembershipTable]:
    """
    Apply the extended MCOKE to one frame.

    With no garments every customer is unassociated (all-zero rows).

    Returns:
        (labeled clustering, membership table)
    """
    config = config or EngineConfig()
    customer_points, garment_points = to_weighted_points(customers, garments, config)

    if not garment_points:
        return LabeledClustering(), _empty_table([p.id for p in customer_points])

    points = garment_points + customer_points
    clusters = weighted_kmeans(points, [g.pos for g in garment_points],
                               max_iters=config.wkm_max_iters, tol=config.wkm_tol)
    max_dist = compute_max_dist(clusters, index_points(points))
    labeled = enforce_garment_identity(clusters, garment_points, max_dist)
    membership = build_membership(labeled, customer_points)

    logger.debug(
        f"Clustered {len(customer_points)} customers around {len(garment_points)} garments, "
        f"maxDist={max_dist:.3f}"
    )
    return labeled, membership
