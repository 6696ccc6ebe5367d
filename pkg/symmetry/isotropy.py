#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : isotropy
# date : 10/18/2026
"""
Isotropy of a loop: the reparametrizations f with c∘f = c.

An isotropy element preserves the pulled-back length element, so after
arclength normalization every element is a rigid rotation t ↦ t + j/k.
The search therefore tests the rotations by 1/k on the normalized curve,
takes the largest valid k as the group order and conjugates the rotations
back to the input parametrization.
"""
from dataclasses import dataclass, field
from functools import partial
from typing import Optional

import numpy as np

from common.core.config import ToleranceProfile
from common.decorators import ordered_thread_map
from common.utils import get_logger
from geometry.curves import DiscreteLoopImmersion, require_valid
from geometry.resample import arclength_reparam
from multiplicity.exceptions import ImageAmbiguity
from multiplicity.graph import image_graph
from orbit.matching import verify_reparam
from orbit.reparam import ReparamMap
from symmetry.exceptions import IsotropyAssertion, SamplingCommensurability

logger = get_logger(__name__)

# 重采样后仍不整除时放弃
MAX_RETRIES = 1
# 一次检查的候选点数
SIMPLE_POINT_CHUNK = 256


@dataclass(frozen=True)
class RotationCandidate:
    order: int
    residual: float


@dataclass(frozen=True, eq=False)
class IsotropyTranscript:
    """
    candidates: residual of the rotation by 1/k for every tested k
    identity_orders: k whose rotation moves points less than 2·eps_match along the loop
    """
    sample_count: int
    candidates: list = field(default_factory=list)
    identity_orders: list = field(default_factory=list)
    reflection_residual: float = float('inf')
    reflection_center: float = 0.0
    retries: int = 0


@dataclass(frozen=True, eq=False)
class IsotropyGroup:
    order: int
    generator: Optional[ReparamMap]
    elements: list
    residual: float
    normalized: DiscreteLoopImmersion
    to_input: ReparamMap
    transcript: IsotropyTranscript

    @property
    def is_trivial(self) -> bool:
        return self.order == 1


@dataclass(frozen=True, eq=False)
class FreenessReport:
    free: bool
    simple_point: Optional[int] = None
    group: Optional[IsotropyGroup] = None

    @property
    def order(self) -> int:
        return 1 if self.group is None else self.group.order


def find_simple_point(curve: DiscreteLoopImmersion, eps_image: float) -> Optional[int]:
    """
    First sample whose image cluster is passed by a single branch and whose
    point the trace passes only once within eps_image.
    Sample clusters alone miss passes whose samples do not line up.
    """
    graph = image_graph(curve, eps_image)
    candidates = [int(cluster.members[0]) for cluster in graph.clusters if cluster.delta == 1]
    for lo in range(0, len(candidates), SIMPLE_POINT_CHUNK):
        chunk = candidates[lo:lo + SIMPLE_POINT_CHUNK]
        counts = curve.passage_counts(curve.samples[chunk], eps_image)
        single = np.flatnonzero(counts == 1)
        if len(single):
            return chunk[int(single[0])]
    logger.debug(f'{len(candidates)} single-branch clusters, none passed once by the trace')
    return None


def _rotation_residual(curve, order):
    return verify_reparam(curve, curve, ReparamMap.rotation(1.0 / order))


def _reflection_scan(curve, chunk=256):
    """Best vertex residual of t ↦ j/m - t over all j: (residual, centre)."""
    m = curve.m
    k = np.arange(m)
    residual = np.empty(m)
    for lo in range(0, m, chunk):
        js = np.arange(lo, min(lo + chunk, m))
        mirrored = curve.samples[np.mod(js[:, None] - k[None, :], m)]
        residual[js] = np.linalg.norm(mirrored - curve.samples[None, :, :], axis=2).max(axis=1)
    j = int(np.argmin(residual))
    return float(residual[j]), j / m


def _rotation_order(normalized, eps_match):
    orders = range(2, normalized.m // 8 + 1)
    identity_orders = [k for k in orders if normalized.length / k <= 2 * eps_match]
    tested = [k for k in orders if k not in identity_orders]
    residuals = ordered_thread_map(partial(_rotation_residual, normalized), tested)
    candidates = [RotationCandidate(order=k, residual=r) for k, r in zip(tested, residuals)]
    valid = [candidate.order for candidate in candidates if candidate.residual <= eps_match]
    logger.debug(f'rotation orders within eps_match at m={normalized.m}: {valid}')
    return max(valid, default=1), candidates, identity_orders


def isotropy_group(curve: DiscreteLoopImmersion, tol: ToleranceProfile = None) -> IsotropyGroup:
    require_valid(curve)
    tol = tol or ToleranceProfile.for_curves(curve)
    m = curve.m
    retries = 0
    while True:
        normalized, h = arclength_reparam(curve, m)
        order, candidates, identity_orders = _rotation_order(normalized, tol.eps_match)
        if m % order == 0:
            break
        if retries >= MAX_RETRIES:
            raise SamplingCommensurability(order, m)
        resampled = order * int(np.ceil(m / order))
        logger.warning(f'rotation of order {order} does not divide {m} samples, resampling to {resampled}')
        m = resampled
        retries += 1

    reflection_residual, center = _reflection_scan(normalized)
    if reflection_residual <= tol.eps_match:
        confirmed = verify_reparam(normalized, normalized, ReparamMap.reflection(center))
        if confirmed <= tol.eps_match:
            raise IsotropyAssertion(confirmed)
    transcript = IsotropyTranscript(
        sample_count=m, candidates=candidates, identity_orders=identity_orders,
        reflection_residual=reflection_residual, reflection_center=center, retries=retries,
    )
    if order == 1:
        return IsotropyGroup(order=1, generator=None, elements=[ReparamMap.identity()], residual=0.0,
                             normalized=normalized, to_input=h, transcript=transcript)

    shift = m // order
    exact = float(np.linalg.norm(np.roll(normalized.samples, -shift, axis=0) - normalized.samples, axis=1).max())
    if exact > tol.eps_match:
        raise SamplingCommensurability(order, m)
    inverse = h.inverse()
    elements = [ReparamMap.identity()] + [
        h.compose(ReparamMap.rotation(j / order).compose(inverse)) for j in range(1, order)
    ]
    generator = elements[1]
    residual = verify_reparam(curve, curve, generator)
    logger.debug(f'isotropy order {order}, generator residual {residual:.3e}')
    return IsotropyGroup(order=order, generator=generator, elements=elements, residual=residual,
                         normalized=normalized, to_input=h, transcript=transcript)


def is_free(curve: DiscreteLoopImmersion, tol: ToleranceProfile = None) -> FreenessReport:
    """A simple point proves freeness; without one the full isotropy search decides."""
    require_valid(curve)
    tol = tol or ToleranceProfile.for_curves(curve)
    try:
        k = find_simple_point(curve, tol.eps_image)
    except ImageAmbiguity as exc:
        logger.debug(f'simple point search skipped: {exc.detail}')
        k = None
    if k is not None:
        return FreenessReport(free=True, simple_point=k)
    group = isotropy_group(curve, tol)
    return FreenessReport(free=group.is_trivial, group=group)


def stratum(curves, tol: ToleranceProfile = None, **overrides) -> dict:
    """
    Curve indices grouped by isotropy order, orders ascending.
    Without tol every curve gets the default profile of its own diameter, with overrides applied.
    """
    strata = {}
    for index, curve in enumerate(curves):
        profile = tol or ToleranceProfile.for_curves(curve, **overrides)
        strata.setdefault(isotropy_group(curve, profile).order, []).append(index)
    return dict(sorted(strata.items()))
