"""
Clustering Package

Weighted k-Means and the extended MCOKE layer that maps customers onto the
garments they attend.

Usage:
    from src.clustering import cluster_frame

    labeled, membership = cluster_frame(frame.customers, frame.garments, config)
    membership.members_of("c1")
"""

from .wkm import (
    Cluster,
    WeightedPoint,
    compute_max_dist,
    distance_matrix,
    index_points,
    point_coords,
    weighted_kmeans,
)
from .mcoke import (
    LabeledClustering,
    MembershipTable,
    build_membership,
    cluster_frame,
    enforce_garment_identity,
    to_weighted_points,
)

__all__ = [
    'Cluster',
    'WeightedPoint',
    'compute_max_dist',
    'distance_matrix',
    'index_points',
    'point_coords',
    'weighted_kmeans',
    'LabeledClustering',
    'MembershipTable',
    'build_membership',
    'cluster_frame',
    'enforce_garment_identity',
    'to_weighted_points',
]
