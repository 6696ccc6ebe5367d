#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : matching
# date : 10/18/2026
"""
Orbit equivalence of two sampled loops under reparametrization.

The decision runs three stages. The image test compares the two traces
in one-sided Hausdorff distance, and the multiplicity test compares
passage counts at every image cluster. The seed stage pins an anchor
sample of the first curve inside a minimal-δ interior level component,
tries every passage of the second curve through the anchor point in
both orientations, and marches the correspondence around the loop.
"""
from functools import partial

import numpy as np
from django.conf import settings

from common.core.config import ToleranceProfile
from common.decorators import ordered_thread_map
from common.utils import get_logger
from geometry.curves import DiscreteLoopImmersion, require_valid
from geometry.resample import arclength_reparam
from multiplicity.exceptions import ImageAmbiguity
from multiplicity.graph import delta, image_graph
from multiplicity.partition import level_partition
from orbit.certificates import (
    EquivalenceVerdict, MatchSeed, ObstructionCase, ObstructionRecord, SeparationCertificate,
)
from orbit.exceptions import ToleranceInconsistency
from orbit.reparam import ReparamMap

logger = get_logger(__name__)


def image_separation(c1: DiscreteLoopImmersion, c2: DiscreteLoopImmersion, eps_match: float):
    """ImageMismatch at the sample farthest from the other trace, or None when both traces agree."""
    require_valid(c1)
    require_valid(c2)
    best = None
    for curve_index, (curve, other) in enumerate(((c1, c2), (c2, c1)), start=1):
        dist, _ = other.nearest_on_trace(curve.samples)
        k = int(np.argmax(dist))
        if dist[k] > eps_match and (best is None or dist[k] > best[2]):
            best = (curve.samples[k], curve_index, float(dist[k]))
    if best is None:
        return None
    logger.debug(f'image mismatch on curve {best[1]} at distance {best[2]:.6g}')
    return SeparationCertificate.image_mismatch(*best)


def multiplicity_separation(c1: DiscreteLoopImmersion, c2: DiscreteLoopImmersion, eps_image: float,
                            eps_match: float = None):
    """
    MultiplicityMismatch at the first cluster representative that one curve passes more often
    within eps_image than the other curve does within eps_match.
    """
    if eps_match is None:
        eps_match = ToleranceProfile.for_curves(c1, c2).eps_match
    for curve_index, (curve, other) in enumerate(((c1, c2), (c2, c1)), start=1):
        reps = image_graph(curve, eps_image).reps()
        own = curve.passage_counts(reps, eps_image)
        coarse = other.passage_counts(reps, eps_match)
        bad = np.flatnonzero(own > coarse)
        if len(bad):
            k = int(bad[0])
            fine = int(other.passage_count(reps[k], eps_image))
            deltas = (int(own[k]), fine) if curve_index == 1 else (fine, int(own[k]))
            logger.debug(f'multiplicity mismatch at {reps[k]}: {deltas}')
            return SeparationCertificate.multiplicity_mismatch(reps[k], curve_index, *deltas)
    return None


def enumerate_seeds(c1: DiscreteLoopImmersion, c2: DiscreteLoopImmersion, tol: ToleranceProfile = None) -> list:
    tol = tol or ToleranceProfile.for_curves(c1, c2)
    graph = image_graph(c1, tol.eps_image)
    partition = level_partition(graph, delta(graph))
    minimal = partition.minimal_interior()
    interior = {}
    for component in minimal:
        for cluster in component.interior:
            interior[cluster] = component
    if not interior:
        return []
    candidates = [k for k in range(c1.m) if int(graph.labels[k]) in interior]
    counts = c1.passage_counts(c1.samples[candidates], tol.eps_match)
    anchor = candidates[0]
    for k, count in zip(candidates, counts):
        if count == interior[int(graph.labels[k])].value:
            anchor = k
            break
    component = interior[int(graph.labels[anchor])]
    seeds = []
    for ordinal, passage in enumerate(c2.passages(c1.samples[anchor], tol.eps_match)):
        for orientation in (1, -1):
            seeds.append(MatchSeed(
                lambda0=anchor, mu0=ordinal, orientation=orientation, anchor_param=anchor / c1.m,
                target_param=passage.param, component=component.index, start_edge=passage.start_edge,
            ))
    logger.debug(f'{len(seeds)} seeds at anchor sample {anchor} (component {component.index}, δ={component.value})')
    return seeds


def _window_foot(c2, point, y_prev, direction, budget):
    """
    Nearest point to `point` on the stretch of c2 from lifted parameter y_prev onwards
    in `direction`, at most `budget` of arclength away.
    """
    s_prev = c2.arclength_at(y_prev)
    y_far = float(c2.param_at_arclength(s_prev + direction * budget))
    lo, hi = sorted((y_prev, y_far))
    u_lo, u_hi = lo * c2.m, hi * c2.m
    edges = np.arange(int(np.floor(u_lo)), int(np.ceil(u_hi)))
    if not len(edges):
        edges = np.array([int(np.floor(u_lo))])
    a = c2.samples[np.mod(edges, c2.m)]
    e = c2.edges[np.mod(edges, c2.m)]
    lam_min = np.clip(u_lo - edges, 0.0, 1.0)
    lam_max = np.clip(u_hi - edges, 0.0, 1.0)
    lam = np.einsum('ij,ij->i', point - a, e) / np.einsum('ij,ij->i', e, e)
    lam = np.clip(lam, lam_min, lam_max)
    dist = np.linalg.norm(a + lam[:, None] * e - point, axis=1)
    best = int(np.argmin(dist))
    return float(dist[best]), float((edges[best] + lam[best]) / c2.m)


def _march(seed, c1, c2, eps_match, steps, step):
    """
    Follow c1 from the anchor `steps` samples in direction `step`, tracking c2.
    :return: (lifted c2 parameters, None) or (partial parameters, ObstructionRecord)
    """
    direction = seed.orientation * step
    ys = [seed.target_param]
    k = seed.lambda0
    for _ in range(steps):
        nxt = k + step
        edge = c1.edge_lengths[min(k, nxt) % c1.m]
        point = c1.samples[nxt % c1.m]
        dist, y = _window_foot(c2, point, ys[-1], direction, 2 * edge + 2 * eps_match)
        if dist > eps_match or direction * (y - ys[-1]) <= settings.LOOPSPACE_PARAM_SNAP:
            return ys, ObstructionRecord(
                seed=seed, case=ObstructionCase.BRANCH_MISMATCH, param=(nxt % c1.m) / c1.m, distance=dist,
                detail=f'no continuation of the second curve within eps_match at sample {nxt % c1.m}',
            )
        ys.append(y)
        k = nxt
    return ys, None


def extend_match(seed: MatchSeed, c1: DiscreteLoopImmersion, c2: DiscreteLoopImmersion, tol: ToleranceProfile):
    """
    Grow the correspondence from the seed to a full circle map.
    :return: ReparamMap, or ObstructionRecord when the march breaks off or fails to close
    """
    m = c1.m
    forward = m // 2
    backward = m - forward
    ys_forward, obstruction = _march(seed, c1, c2, tol.eps_match, forward, 1)
    if obstruction:
        return obstruction
    ys_backward, obstruction = _march(seed, c1, c2, tol.eps_match, backward, -1)
    if obstruction:
        return obstruction
    o = seed.orientation
    y_end, y_start = ys_forward[-1], ys_backward[-1]
    shifts = np.arange(-2, 3)
    gaps = np.abs(c2.arclength_at(y_end) - c2.arclength_at(y_start + o * shifts))
    best = int(np.argmin(gaps))
    seam = (seed.lambda0 + forward) % m
    budget = c1.edge_lengths[(seam - 1) % m] + 2 * tol.eps_match
    if gaps[best] > budget:
        return ObstructionRecord(seed=seed, case=ObstructionCase.CLOSURE_FAILURE, param=seam / m,
                                 distance=float(gaps[best]), detail='forward and backward marches do not meet')
    if shifts[best] != 1:
        return ObstructionRecord(seed=seed, case=ObstructionCase.DEGREE_MISMATCH, param=seam / m,
                                 distance=float(gaps[best]), detail=f'lift shift {shifts[best]} at the seam')
    # 一个周期: 样本 lambda0 - backward .. lambda0 + forward - 1
    ys = np.concatenate([ys_backward[::-1], ys_forward[1:-1]])
    ts = np.arange(seed.lambda0 - backward, seed.lambda0 + forward) / m
    closing = ys[0] + o
    if o * (closing - ys[-1]) <= 0:
        return ObstructionRecord(seed=seed, case=ObstructionCase.CLOSURE_FAILURE, param=seam / m,
                                 detail='the closed map is not monotone across the seam')
    f = ReparamMap(ts=ts, ys=ys, deg=o)
    residual = verify_reparam(c1, c2, f)
    if residual > tol.eps_match:
        return ObstructionRecord(seed=seed, case=ObstructionCase.CLOSURE_FAILURE, distance=residual,
                                 detail='interpolated map leaves eps_match between samples')
    return f


def verify_reparam(c1: DiscreteLoopImmersion, c2: DiscreteLoopImmersion, f: ReparamMap, density: int = 8) -> float:
    """sup |c2(f(t)) - c1(t)| over a grid of density·max(m) points plus all breakpoints."""
    n = density * max(c1.m, c2.m)
    t = np.concatenate([np.arange(n) / n, c1.params, np.mod(f.ts, 1.0)])
    return float(np.linalg.norm(c2.evaluate(f(t)) - c1.evaluate(t), axis=1).max())


def _comparable(c1, c2):
    if abs(c1.m - c2.m) / c1.m <= settings.LOOPSPACE_DENSITY_RATIO:
        return c2, None
    logger.debug(f'resampling the second curve from {c2.m} to {c1.m} samples')
    return arclength_reparam(c2, c1.m)


def decide_orbit_equivalence(c1: DiscreteLoopImmersion, c2: DiscreteLoopImmersion,
                             tol: ToleranceProfile = None) -> EquivalenceVerdict:
    require_valid(c1)
    require_valid(c2)
    tol = tol or ToleranceProfile.for_curves(c1, c2)
    target, h = _comparable(c1, c2)
    certificate = image_separation(c1, target, tol.eps_match)
    if certificate:
        return EquivalenceVerdict.distinct(certificate)
    try:
        certificate = multiplicity_separation(c1, target, tol.eps_image, tol.eps_match)
    except ImageAmbiguity as exc:
        raise ToleranceInconsistency(str(exc.detail))
    if certificate:
        return EquivalenceVerdict.distinct(certificate)
    seeds = enumerate_seeds(c1, target, tol)
    if not seeds:
        return EquivalenceVerdict.distinct(SeparationCertificate.combinatorial_obstruction(
            [ObstructionRecord(seed=None, case=ObstructionCase.NO_SEED)]))
    outcomes = ordered_thread_map(partial(extend_match, c1=c1, c2=target, tol=tol), seeds)
    for seed, outcome in zip(seeds, outcomes):
        if isinstance(outcome, ReparamMap):
            f = h.compose(outcome) if h is not None else outcome
            residual = verify_reparam(c1, c2, f)
            logger.debug(f'seed {seed.mu0}/{seed.orientation:+d} matched, residual {residual:.3e}')
            if residual <= tol.eps_match:
                return EquivalenceVerdict.equivalent(f, residual)
    logger.debug(f'all {len(seeds)} seeds obstructed')
    return EquivalenceVerdict.distinct(SeparationCertificate.combinatorial_obstruction(
        [outcome for outcome in outcomes if isinstance(outcome, ObstructionRecord)]))
