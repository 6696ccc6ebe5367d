#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : cover
# date : 10/18/2026
"""
Embedded-arc covers of the parameter circle.

An arc is an index interval [start, stop] on the unwrapped sample index
(stop > start, read modulo m). Its inner interval [start+1, stop-1] is
compactly contained in it, and the inner intervals of consecutive arcs
share an endpoint so that together they cover S¹.
"""
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import pdist, squareform

from common.utils import get_logger
from geometry.curves import DiscreteLoopImmersion, require_valid
from geometry.exceptions import CoverConstructionFailed

logger = get_logger(__name__)

MIN_ARC_SAMPLES = 4


@dataclass(frozen=True)
class Arc:
    start: int
    stop: int
    m: int
    embedded: bool = True

    @property
    def length(self) -> int:
        return self.stop - self.start + 1

    @property
    def inner(self) -> tuple:
        return self.start + 1, self.stop - 1

    def indices(self, inner=False) -> np.ndarray:
        lo, hi = self.inner if inner else (self.start, self.stop)
        return np.mod(np.arange(lo, hi + 1), self.m)

    def contains(self, k, inner=False) -> bool:
        lo, hi = self.inner if inner else (self.start, self.stop)
        offset = (int(k) - lo) % self.m
        return offset <= hi - lo

    def param_interval(self, inner=True) -> tuple:
        lo, hi = self.inner if inner else (self.start, self.stop)
        return lo / self.m, hi / self.m


@dataclass(frozen=True)
class ArcCover:
    m: int
    eps_image: float
    arcs: list = field(default_factory=list)

    def __len__(self):
        return len(self.arcs)

    def __iter__(self):
        return iter(self.arcs)

    def __getitem__(self, index) -> Arc:
        return self.arcs[index]

    def arcs_containing(self, k, inner=False) -> list:
        return [index for index, arc in enumerate(self.arcs) if arc.contains(k, inner=inner)]

    def covers_circle(self) -> bool:
        covered = np.zeros(self.m, dtype=bool)
        for arc in self.arcs:
            covered[arc.indices(inner=True)] = True
        if not covered.all():
            return False
        # 相邻内区间首尾相接
        for previous, current in zip(self.arcs, self.arcs[1:]):
            if current.inner[0] > previous.inner[1]:
                return False
        return self.arcs[-1].inner[1] >= self.arcs[0].inner[0] + self.m


def _grow(far, start, cap, m):
    stop = start + 1
    while stop - start + 1 < cap:
        candidate = stop + 1
        # 与 candidate 不相邻的已有样本
        members = np.mod(np.arange(start, candidate - 1), m)
        if not far[candidate % m, members].all():
            break
        stop = candidate
    return stop


def build_arc_cover(curve: DiscreteLoopImmersion, eps_image: float, max_arc: int = None) -> ArcCover:
    """
    Greedy cover by arcs on which non-adjacent samples stay farther apart than eps_image.

    Arcs never exceed max_arc samples (default ⌊m/2⌋ + 1), so even an embedded
    loop is split near antipodal parameters into at least two arcs.
    """
    require_valid(curve)
    m = curve.m
    cap = max_arc or (m // 2 + 1)
    cap = max(MIN_ARC_SAMPLES, min(cap, m - 1))
    far = squareform(pdist(curve.samples)) > eps_image
    arcs = []
    start = 0
    # 第一个内区间从 1 开始, 最后一个内区间要到达 m + 1
    while True:
        stop = _grow(far, start, cap, m)
        if stop - start + 1 < MIN_ARC_SAMPLES:
            raise CoverConstructionFailed(start % m, eps_image)
        if stop - 1 >= m + 1:
            stop = max(m + 2, start + MIN_ARC_SAMPLES - 1)
            arcs.append(Arc(start=start, stop=stop, m=m))
            break
        arcs.append(Arc(start=start, stop=stop, m=m))
        start = stop - 2
    logger.debug(f'arc cover with {len(arcs)} arcs for m={m}, eps_image={eps_image:.3e}')
    return ArcCover(m=m, eps_image=eps_image, arcs=arcs)


def refine_cover(cover: ArcCover, pieces: int) -> ArcCover:
    """Split every arc into shorter arcs; sub-arcs of embedded arcs stay embedded."""
    arcs = []
    for arc in cover.arcs:
        lo, hi = arc.inner
        count = max(1, min(pieces, (hi - lo) // 2))
        cuts = np.linspace(lo, hi, count + 1).round().astype(int)
        for a, b in zip(cuts, cuts[1:]):
            arcs.append(Arc(start=int(a) - 1, stop=int(b) + 1, m=cover.m, embedded=arc.embedded))
    return ArcCover(m=cover.m, eps_image=cover.eps_image, arcs=arcs)


def cover_violations(curve: DiscreteLoopImmersion, cover: ArcCover) -> list:
    """Pairs of non-adjacent samples on a common arc that come within eps_image."""
    violations = []
    for index, arc in enumerate(cover.arcs):
        members = arc.indices()
        points = curve.samples[members]
        distance = squareform(pdist(points))
        gaps = np.abs(np.arange(len(members))[:, None] - np.arange(len(members))[None, :])
        bad = np.argwhere((distance <= cover.eps_image) & (gaps >= 2))
        violations.extend((index, int(members[a]), int(members[b])) for a, b in bad if a < b)
    return violations
