#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : graph
# date : 10/18/2026
"""
The image of a sampled loop as a graph of clusters.

Samples closer than eps_image are grouped by single linkage; a cluster
stands for one image point and its preimage branches are the maximal
cyclic runs of sample indices inside it. The multiplicity δ of a cluster
is its branch count.
"""
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from common.exceptions import InvalidToleranceProfile
from common.utils import UnionFind, cyclic_runs, get_logger, lazyproperty, readonly_array
from geometry.curves import DiscreteLoopImmersion, require_valid
from multiplicity.exceptions import ImageAmbiguity

logger = get_logger(__name__)


@dataclass(frozen=True)
class Branch:
    """Samples start..start+length-1 (cyclic)."""
    start: int
    length: int
    m: int

    @property
    def stop(self) -> int:
        return (self.start + self.length - 1) % self.m

    @property
    def measure(self) -> float:
        return self.length / self.m

    def indices(self) -> np.ndarray:
        return np.mod(np.arange(self.start, self.start + self.length), self.m)


@dataclass(frozen=True, eq=False)
class ImageCluster:
    index: int
    rep: np.ndarray
    members: np.ndarray
    branches: list = field(default_factory=list)

    @property
    def delta(self) -> int:
        return len(self.branches)


@dataclass(frozen=True, eq=False)
class ImageGraph:
    m: int
    eps_image: float
    clusters: list
    labels: np.ndarray
    adjacency: frozenset

    def __len__(self):
        return len(self.clusters)

    @lazyproperty
    def neighbours(self) -> list:
        result = [set() for _ in self.clusters]
        for a, b in self.adjacency:
            result[a].add(b)
            result[b].add(a)
        return [sorted(items) for items in result]

    def cluster_of(self, k) -> ImageCluster:
        return self.clusters[self.labels[int(k) % self.m]]

    def reps(self) -> np.ndarray:
        return np.array([cluster.rep for cluster in self.clusters])


@dataclass(frozen=True, eq=False)
class MultiplicityMap:
    values: np.ndarray
    measures: np.ndarray

    def __getitem__(self, index) -> int:
        return int(self.values[index])

    def __len__(self):
        return len(self.values)

    @property
    def total_measure(self) -> float:
        return float(self.measures.sum())

    def multiset(self) -> dict:
        levels, counts = np.unique(self.values, return_counts=True)
        return {int(level): int(count) for level, count in zip(levels, counts)}


@dataclass(frozen=True)
class SemicontinuityViolation:
    cluster: int
    branch: Branch
    before: int
    after: int


@dataclass(frozen=True)
class SemicontinuityReport:
    violations: list = field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return not self.violations


def _single_linkage(samples, eps_image):
    finder = UnionFind(len(samples))
    pairs = cKDTree(samples).query_pairs(eps_image, output_type='ndarray')
    for a, b in pairs:
        finder.join(int(a), int(b))
    return finder.groups()


def image_graph(curve: DiscreteLoopImmersion, eps_image: float) -> ImageGraph:
    require_valid(curve)
    if not eps_image > 0:
        raise InvalidToleranceProfile(f'eps_image={eps_image}')
    m = curve.m
    labels = np.empty(m, dtype=int)
    clusters = []
    for index, members in enumerate(_single_linkage(curve.samples, eps_image)):
        members = np.asarray(members, dtype=int)
        points = curve.samples[members]
        rep = points.mean(axis=0)
        spread = float(np.linalg.norm(points - rep, axis=1).max())
        if spread > eps_image:
            raise ImageAmbiguity(eps_image, f'cluster of sample {members[0]} spreads {spread:.3e} from its centre')
        labels[members] = index
        branches = [Branch(start=start, length=length, m=m) for start, length in cyclic_runs(members, m)]
        clusters.append(ImageCluster(index=index, rep=readonly_array(rep), members=readonly_array(members, int),
                                     branches=branches))
    reps = np.array([cluster.rep for cluster in clusters])
    close = cKDTree(reps).query_pairs(2 * eps_image, output_type='ndarray')
    if len(close):
        a, b = sorted(close[0])
        raise ImageAmbiguity(
            eps_image, f'clusters of samples {clusters[a].members[0]} and {clusters[b].members[0]} '
                       f'are within 2·eps_image but were not merged')
    successor = labels[np.mod(np.arange(1, m + 1), m)]
    adjacency = frozenset(
        (int(min(a, b)), int(max(a, b))) for a, b in zip(labels, successor) if a != b
    )
    graph = ImageGraph(m=m, eps_image=eps_image, clusters=clusters, labels=readonly_array(labels, int),
                       adjacency=adjacency)
    logger.debug(f'image graph: {len(clusters)} clusters, {len(adjacency)} edges from {m} samples')
    return graph


def delta(graph: ImageGraph) -> MultiplicityMap:
    values = np.array([cluster.delta for cluster in graph.clusters], dtype=int)
    measures = np.array([sum(branch.measure for branch in cluster.branches) for cluster in graph.clusters])
    return MultiplicityMap(values=readonly_array(values, int), measures=readonly_array(measures))


def check_semicontinuity(graph: ImageGraph, dmap: MultiplicityMap) -> SemicontinuityReport:
    """A violation is a branch whose clusters on both sides carry a larger δ."""
    violations = []
    for cluster in graph.clusters:
        value = dmap[cluster.index]
        for branch in cluster.branches:
            before = int(graph.labels[(branch.start - 1) % graph.m])
            after = int(graph.labels[(branch.start + branch.length) % graph.m])
            if before == cluster.index or after == cluster.index:
                continue
            if dmap[before] > value and dmap[after] > value:
                violations.append(SemicontinuityViolation(cluster=cluster.index, branch=branch,
                                                          before=before, after=after))
    if violations:
        logger.debug(f'{len(violations)} semicontinuity violations')
    return SemicontinuityReport(violations=violations)


def passage_count(curve: DiscreteLoopImmersion, point, radius) -> int:
    """Number of separate passes of the trace within radius of point, independent of where samples sit."""
    return curve.passage_count(point, radius)
