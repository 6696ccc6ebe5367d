#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : partition
# date : 10/18/2026
from dataclasses import dataclass, field

from common.utils import UnionFind, get_logger
from multiplicity.graph import ImageGraph, MultiplicityMap

logger = get_logger(__name__)


@dataclass(frozen=True)
class LevelComponent:
    index: int
    value: int
    clusters: list
    interior: list
    boundary: list
    # 边界邻居的 δ 都更大
    is_open: bool

    @property
    def has_interior(self) -> bool:
        return bool(self.interior)

    def closure(self) -> set:
        return set(self.clusters) | set(self.boundary)


@dataclass(frozen=True)
class LevelPartition:
    components: list
    cluster_component: list
    uncovered: list = field(default_factory=list)

    @property
    def indices(self) -> list:
        return [component.index for component in self.components]

    @property
    def interior_indices(self) -> list:
        return [component.index for component in self.components if component.has_interior]

    @property
    def dense(self) -> bool:
        return not self.uncovered

    @property
    def minimal_value(self):
        values = [component.value for component in self.components if component.has_interior]
        return min(values) if values else None

    def minimal_interior(self) -> list:
        value = self.minimal_value
        return [component for component in self.components if component.has_interior and component.value == value]

    @property
    def minimal_open(self) -> bool:
        return all(component.is_open for component in self.minimal_interior())


@dataclass(frozen=True)
class ExhaustionLevel:
    value: int
    components: list
    covered: list
    cumulative: float


def level_partition(graph: ImageGraph, dmap: MultiplicityMap) -> LevelPartition:
    n = len(graph)
    finder = UnionFind(n)
    for a, b in graph.adjacency:
        if dmap[a] == dmap[b]:
            finder.join(a, b)
    neighbours = graph.neighbours
    cluster_component = [0] * n
    components = []
    for index, members in enumerate(finder.groups()):
        value = dmap[members[0]]
        member_set = set(members)
        interior = [c for c in members if all(dmap[z] == value for z in neighbours[c])]
        boundary = sorted({z for c in members for z in neighbours[c]} - member_set)
        component = LevelComponent(index=index, value=value, clusters=members, interior=interior,
                                   boundary=boundary, is_open=all(dmap[z] > value for z in boundary))
        components.append(component)
        for c in members:
            cluster_component[c] = index
    covered = set()
    for component in components:
        if component.has_interior:
            covered |= component.closure()
    uncovered = sorted(set(range(n)) - covered)
    partition = LevelPartition(components=components, cluster_component=cluster_component, uncovered=uncovered)
    logger.debug(f'level partition: {len(components)} components, {len(partition.interior_indices)} with interior, '
                 f'{len(uncovered)} clusters outside the interior closure')
    return partition


def exhaustion_levels(graph: ImageGraph, partition: LevelPartition) -> list:
    """
    Ascending δ levels of interior components with the clusters they cover (members and neighbours).
    cumulative is the fraction of clusters covered by all levels up to this one.
    """
    n = len(graph)
    levels = sorted({component.value for component in partition.components if component.has_interior})
    covered_so_far = set()
    result = []
    for value in levels:
        selected = [c for c in partition.components if c.has_interior and c.value == value]
        covered = set()
        for component in selected:
            covered |= component.closure()
        covered_so_far |= covered
        result.append(ExhaustionLevel(value=value, components=[c.index for c in selected], covered=sorted(covered),
                                      cumulative=len(covered_so_far) / n if n else 0.0))
    return result
