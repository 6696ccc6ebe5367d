#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : walls
# date : 10/18/2026
"""
Walls of a loop with nontrivial isotropy.

Each nontrivial isotropy element f gives the wall Fix(f) = {s : f*s = s}
in the space of normal sections. The projector onto it averages f*
over the cyclic group generated by f. Witness sections built from bumps
on arcs disjoint from their image under f are orthogonal to the wall,
so the wall has as many independent normal directions as there are
disjoint test arcs. The union of the walls is the diagram.
"""
from dataclasses import dataclass, field
from functools import partial
from math import gcd

import numpy as np

from common.core.config import ToleranceProfile
from common.decorators import ordered_thread_map
from common.utils import get_logger, lazyproperty
from geometry.cover import ArcCover, build_arc_cover, refine_cover
from geometry.curves import DiscreteLoopImmersion
from orbit.reparam import ReparamMap
from slices.exceptions import ArcOverlap
from slices.frames import NormalBundleFrame, NormalSection, normal_frame
from slices.pullback import inner_product, pullback_matrix
from symmetry.isotropy import IsotropyGroup, isotropy_group

logger = get_logger(__name__)

RANK_TOL = 1e-8
SAME_PROJECTOR = 1e-9
SEGMENT_POINTS = 33


@dataclass(frozen=True, eq=False)
class Wall:
    """element = generator^power, of the given order"""
    element: ReparamMap
    power: int
    order: int
    frame: NormalBundleFrame
    operator: np.ndarray

    @lazyproperty
    def projector(self) -> np.ndarray:
        total = np.eye(self.operator.shape[0])
        current = total
        for _ in range(1, self.order):
            current = self.operator @ current
            total = total + current
        return total / self.order

    def _apply(self, matrix, section: NormalSection) -> NormalSection:
        return NormalSection(self.frame, (matrix @ section.coeffs.ravel()).reshape(section.coeffs.shape))

    def pullback(self, section: NormalSection) -> NormalSection:
        return self._apply(self.operator, section)

    def project(self, section: NormalSection) -> NormalSection:
        return self._apply(self.projector, section)


@dataclass(frozen=True)
class WallSummary:
    power: int
    order: int
    projector_rank: int
    witness_dimension: int
    shares_fix_with: list = field(default_factory=list)


@dataclass(frozen=True)
class DiagramReport:
    order: int
    walls: list = field(default_factory=list)
    segments: int = 0
    clear_segments: int = 0

    @property
    def one_chamber(self) -> bool:
        return self.clear_segments == self.segments


def _wall(group: IsotropyGroup, frame: NormalBundleFrame, power: int) -> Wall:
    element = group.elements[power]
    return Wall(element=element, power=power, order=group.order // gcd(power, group.order), frame=frame,
                operator=pullback_matrix(element, frame))


def walls_of(group: IsotropyGroup, frame: NormalBundleFrame) -> list:
    """One wall per nontrivial element, ordered by the power of the generator."""
    return ordered_thread_map(partial(_wall, group, frame), range(1, group.order))


def wall_membership(section: NormalSection, wall: Wall, tol: ToleranceProfile = None) -> bool:
    tol = tol or ToleranceProfile.for_curves(section.base)
    return wall.pullback(section).distance(section) <= tol.eps_section


def bump(frame: NormalBundleFrame, cover: ArcCover, alpha: int, component: int = 0) -> NormalSection:
    """sin² profile on the inner interval of arc alpha, zero at its ends and outside."""
    lo, hi = cover[alpha].inner
    coeffs = np.zeros((frame.m, frame.codim))
    if hi - lo >= 2:
        steps = np.arange(lo + 1, hi)
        coeffs[np.mod(steps, frame.m), component] = np.sin(np.pi * (steps - lo) / (hi - lo)) ** 2
    return NormalSection(frame, coeffs)


def wall_orthogonal_witness(wall: Wall, cover: ArcCover, alpha: int, component: int = 0) -> NormalSection:
    """s_α on arc alpha, -f*s_α on its preimage under f and zero elsewhere."""
    local = bump(wall.frame, cover, alpha, component)
    moved = wall.pullback(local)
    if np.any((np.abs(local.coeffs).sum(axis=1) > 0) & (np.abs(moved.coeffs).sum(axis=1) > 0)):
        raise ArcOverlap(alpha)
    return local - moved


def witness_rank(witnesses) -> int:
    if not witnesses:
        return 0
    gram = np.array([[inner_product(a, b) for b in witnesses] for a in witnesses])
    return int(np.linalg.matrix_rank(gram, tol=RANK_TOL * max(float(np.abs(gram).max()), 1e-300)))


def random_section(frame: NormalBundleFrame, rs: np.random.RandomState, scale: float = 0.1) -> NormalSection:
    return NormalSection(frame, scale * rs.normal(size=(frame.m, frame.codim)))


def _segment_clear(start, end, walls, tol):
    for tau in np.linspace(0.0, 1.0, SEGMENT_POINTS):
        point = start.scaled(1.0 - tau) + end.scaled(tau)
        if any(wall_membership(point, wall, tol) for wall in walls):
            return False
    return True


def diagram_summary(curve: DiscreteLoopImmersion, tol: ToleranceProfile = None, pieces: int = 4,
                    segments: int = 16, seed: int = 0) -> DiagramReport:
    tol = tol or ToleranceProfile.for_curves(curve)
    group = isotropy_group(curve, tol)
    if group.is_trivial:
        return DiagramReport(order=1)
    frame = normal_frame(curve)
    walls = walls_of(group, frame)
    cover = refine_cover(build_arc_cover(curve, tol.eps_image), pieces)

    summaries = []
    for wall in walls:
        witnesses = [wall_orthogonal_witness(wall, cover, alpha) for alpha in range(len(cover))]
        shares = [other.power for other in walls if other is not wall
                  and np.abs(other.projector - wall.projector).max() <= SAME_PROJECTOR]
        summaries.append(WallSummary(
            power=wall.power, order=wall.order,
            projector_rank=int(np.linalg.matrix_rank(wall.projector, tol=RANK_TOL)),
            witness_dimension=witness_rank(witnesses), shares_fix_with=shares,
        ))

    rs = np.random.RandomState(seed)
    clear = 0
    for _ in range(segments):
        start, end = random_section(frame, rs), random_section(frame, rs)
        clear += _segment_clear(start, end, walls, tol)
    logger.debug(f'diagram of {len(walls)} walls, {clear}/{segments} segments avoid every wall')
    return DiagramReport(order=group.order, walls=summaries, segments=segments, clear_segments=clear)
