"""Incremental heuristic algorithms for minimum sum-of-squares clustering."""

from .auxiliary import AuxContext, build_context
from .core import (
    Assignment,
    ControlParams,
    DataSet,
    as_dataset,
    assignment_objective,
    barycenter,
    dedup,
    mssc_objective,
    natural_clustering,
    pairwise_distinct,
)
from .estimators import IncrementalKMeans, LloydKMeans
from .incremental import RunTrace, algorithm1, algorithm2, recommend_gammas
from .kmeans import KmResult, km_run, km_step
from .reduction import ClusterStats, cluster_stats, reduced_candidates
from .seeding import CandidateCascade, DegenerateInputError, cascade, procedure1, procedure2
from .verify import VerifyReport, brute_force_global, verify_local

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "AuxContext",
    "CandidateCascade",
    "ClusterStats",
    "ControlParams",
    "DataSet",
    "DegenerateInputError",
    "IncrementalKMeans",
    "KmResult",
    "LloydKMeans",
    "RunTrace",
    "VerifyReport",
    "algorithm1",
    "algorithm2",
    "as_dataset",
    "assignment_objective",
    "barycenter",
    "brute_force_global",
    "build_context",
    "cascade",
    "cluster_stats",
    "dedup",
    "km_run",
    "km_step",
    "mssc_objective",
    "natural_clustering",
    "pairwise_distinct",
    "procedure1",
    "procedure2",
    "recommend_gammas",
    "reduced_candidates",
    "verify_local",
]
