#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : tube
# date : 10/18/2026
"""
Tube radii for the map (t, v) ↦ i(t) + v on the normal bundle.

rho(k) is the smaller of the discrete curvature radius at k and half the
distance from p_k to the nearest sample that belongs to another sheet.
Samples of k's own sheet are the monotone-distance neighbourhood of k
(the index run around k along which |p_j - p_k| keeps growing) together
with every sample lying within eps_image of that run's trace and running
in the same direction, so repeated passes of a multiply traversed loop
do not pinch the tube.
"""
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

from common.core.config import ToleranceProfile
from common.utils import get_logger, readonly_array
from geometry.curves import DiscreteLoopImmersion, require_valid
from slices.exceptions import DegenerateTubeProfile
from slices.frames import sample_at

logger = get_logger(__name__)

# 相对直径
DEGENERATE_TUBE = 1e-6


@dataclass(frozen=True, eq=False)
class TubeProfile:
    base: DiscreteLoopImmersion
    rho: np.ndarray

    @property
    def min_rho(self) -> float:
        return float(self.rho.min())

    def at(self, t) -> np.ndarray:
        return sample_at(self.rho, t)


def curvature_radii(curve: DiscreteLoopImmersion) -> np.ndarray:
    """Circumradius of every triple p_{k-1}, p_k, p_{k+1}; inf where the triple is collinear."""
    u = curve.samples - np.roll(curve.samples, 1, axis=0)
    w = np.roll(curve.samples, -1, axis=0) - curve.samples
    a = np.linalg.norm(u, axis=1)
    b = np.linalg.norm(w, axis=1)
    c = np.linalg.norm(u + w, axis=1)
    twice_area = np.sqrt(np.maximum((a * b) ** 2 - np.einsum('ki,ki->k', u, w) ** 2, 0.0))
    with np.errstate(divide='ignore'):
        return np.where(twice_area > 0, a * b * c / (2 * np.where(twice_area > 0, twice_area, 1.0)), np.inf)


def _monotone_run(row, k, m):
    """Steps forward and backward from k while the distance to p_k strictly grows."""
    steps = np.arange(1, m)
    reach = []
    for direction in (1, -1):
        distances = np.concatenate([[0.0], row[np.mod(k + direction * steps, m)]])
        falls = np.flatnonzero(np.diff(distances) <= 0)
        reach.append(int(falls[0]) if len(falls) else m - 1)
    return reach


def _sheet_distance(curve, k, distance, segment, unit, eps_image):
    m = curve.m
    forward, backward = _monotone_run(distance[k], k, m)
    if forward + backward >= m - 1:
        return np.inf
    run = np.mod(np.arange(k - backward, k + forward + 1), m)
    inside = np.zeros(m, dtype=bool)
    inside[run] = True
    others = np.flatnonzero(~inside)
    run_edges = run[:-1]
    gaps = segment[np.ix_(others, run_edges)]
    nearest = run_edges[np.argmin(gaps, axis=1)]
    edge_direction = curve.edges[nearest] / curve.edge_lengths[nearest][:, None]
    same_sheet = (gaps.min(axis=1) <= eps_image) & (np.einsum('ki,ki->k', unit[others], edge_direction) > 0)
    foreign = others[~same_sheet]
    if not len(foreign):
        return np.inf
    return float(distance[k, foreign].min())


def tube_profile(curve: DiscreteLoopImmersion, tol: ToleranceProfile = None) -> TubeProfile:
    require_valid(curve)
    tol = tol or ToleranceProfile.for_curves(curve)
    distance = squareform(pdist(curve.samples))
    segment, _ = curve.segment_distances(curve.samples)
    unit = curve.tangent_frame().unit_tangents
    foreign = np.array([
        _sheet_distance(curve, k, distance, segment, unit, tol.eps_image) for k in range(curve.m)
    ])
    rho = np.minimum(np.minimum(curvature_radii(curve), 0.5 * foreign), curve.diameter)
    floor = DEGENERATE_TUBE * curve.diameter
    k = int(np.argmin(rho))
    if rho[k] < floor:
        raise DegenerateTubeProfile(float(rho[k]), k, floor)
    logger.debug(f'tube radius between {rho.min():.3e} and {rho.max():.3e}')
    return TubeProfile(base=curve, rho=readonly_array(rho))
