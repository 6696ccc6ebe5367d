#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : curves
# date : 10/18/2026
"""
Discrete model of immersions S¹ → Rⁿ.

A loop is stored as m samples p_0..p_{m-1}, the values at parameters
t_k = k/m on S¹ = R/Z. Between samples the curve is the closed
piecewise-linear trace; index arithmetic is cyclic and the closing point
is never duplicated.
"""
from dataclasses import dataclass, field

import numpy as np
from django.conf import settings
from scipy.spatial.distance import pdist

from common.utils import get_logger, lazyproperty, readonly_array, cyclic_runs
from geometry.exceptions import InvalidCurve

logger = get_logger(__name__)

# 相对于曲线尺度的零长度判定
ZERO_LENGTH = 1e-14


@dataclass(frozen=True)
class AmbientSpace:
    """Flat Rⁿ with the standard dot product; the exponential map is vector addition."""
    dim: int

    def inner(self, u, v):
        return np.einsum('...i,...i->...', np.asarray(u, dtype=float), np.asarray(v, dtype=float))

    def norm(self, u):
        return np.linalg.norm(np.asarray(u, dtype=float), axis=-1)

    @staticmethod
    def exp(x, v):
        return np.asarray(x, dtype=float) + np.asarray(v, dtype=float)


@dataclass(frozen=True)
class TangentFrame:
    tangents: np.ndarray
    unit_tangents: np.ndarray
    edge_lengths: np.ndarray


@dataclass(frozen=True)
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.is_valid


@dataclass(frozen=True)
class Passage:
    """One pass of the trace near a point: a maximal run of consecutive edges."""
    start_edge: int
    edge_count: int
    param: float
    distance: float


@dataclass(frozen=True, eq=False)
class DiscreteLoopImmersion:
    samples: np.ndarray
    ambient: AmbientSpace = None

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 2:
            raise InvalidCurve('samples must be a list of points')
        object.__setattr__(self, 'samples', readonly_array(samples))
        if self.ambient is None:
            object.__setattr__(self, 'ambient', AmbientSpace(samples.shape[1]))
        elif self.ambient.dim != samples.shape[1]:
            raise InvalidCurve(f'ambient_dim {self.ambient.dim} does not match point dimension {samples.shape[1]}')

    def __len__(self):
        return self.m

    @property
    def m(self) -> int:
        return self.samples.shape[0]

    @property
    def dim(self) -> int:
        return self.samples.shape[1]

    @lazyproperty
    def params(self) -> np.ndarray:
        return readonly_array(np.arange(self.m) / self.m)

    @lazyproperty
    def edges(self) -> np.ndarray:
        return readonly_array(np.roll(self.samples, -1, axis=0) - self.samples)

    @lazyproperty
    def edge_lengths(self) -> np.ndarray:
        return readonly_array(np.linalg.norm(self.edges, axis=1))

    @lazyproperty
    def length(self) -> float:
        return float(self.edge_lengths.sum())

    @lazyproperty
    def cumulative(self) -> np.ndarray:
        """Arclength at vertices 0..m (the last entry is the total length)."""
        return readonly_array(np.concatenate([[0.0], np.cumsum(self.edge_lengths)]))

    @lazyproperty
    def diameter(self) -> float:
        if self.m < 2:
            return 0.0
        return float(pdist(self.samples).max())

    @lazyproperty
    def measure(self) -> np.ndarray:
        """Trapezoidal arclength weights: the average of the two edges adjacent to each sample."""
        return readonly_array(0.5 * (self.edge_lengths + np.roll(self.edge_lengths, 1)))

    def tangent_frame(self) -> TangentFrame:
        return _tangent_frame(self)

    def evaluate(self, t) -> np.ndarray:
        """Piecewise-linear evaluation at parameters t (any real, read modulo 1)."""
        t = np.asarray(t, dtype=float)
        u = np.mod(t, 1.0) * self.m
        k = np.floor(u).astype(int)
        lam = u - k
        k = np.mod(k, self.m)
        nxt = np.mod(k + 1, self.m)
        return (1.0 - lam)[..., None] * self.samples[k] + lam[..., None] * self.samples[nxt]

    def arclength_at(self, t) -> np.ndarray:
        """Lifted arclength function S(t) with S(t+1) = S(t) + length."""
        t = np.asarray(t, dtype=float)
        turns = np.floor(t)
        u = (t - turns) * self.m
        return turns * self.length + np.interp(u, np.arange(self.m + 1), self.cumulative)

    def param_at_arclength(self, s) -> np.ndarray:
        """Inverse of arclength_at on the lift."""
        s = np.asarray(s, dtype=float)
        turns = np.floor(s / self.length)
        rest = s - turns * self.length
        return turns + np.interp(rest, self.cumulative, np.arange(self.m + 1)) / self.m

    def shifted(self, k: int) -> 'DiscreteLoopImmersion':
        """Same loop with the start moved to sample k (an exact reparametrization)."""
        return DiscreteLoopImmersion(np.roll(self.samples, -k, axis=0), self.ambient)

    def reversed(self) -> 'DiscreteLoopImmersion':
        return DiscreteLoopImmersion(self.samples[::-1].copy(), self.ambient)

    def segment_distances(self, points):
        """
        Distances from each point to each edge segment, with the foot position along the edge.
        :return: (dist, lam) arrays of shape (q, m)
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        dist = np.empty((points.shape[0], self.m))
        lam = np.empty((points.shape[0], self.m))
        squared = np.maximum(self.edge_lengths ** 2, np.finfo(float).tiny)
        chunk = max(1, 2 ** 20 // max(1, self.m * self.dim))
        for lo in range(0, points.shape[0], chunk):
            block = points[lo:lo + chunk]
            diff = block[:, None, :] - self.samples[None, :, :]
            t = np.clip(np.einsum('qmi,mi->qm', diff, self.edges) / squared, 0.0, 1.0)
            foot = self.samples[None, :, :] + t[..., None] * self.edges[None, :, :]
            dist[lo:lo + chunk] = np.linalg.norm(block[:, None, :] - foot, axis=2)
            lam[lo:lo + chunk] = t
        return dist, lam

    def nearest_on_trace(self, points):
        """Distance to the trace and the parameter of the nearest trace point."""
        dist, lam = self.segment_distances(points)
        best = np.argmin(dist, axis=1)
        rows = np.arange(dist.shape[0])
        return dist[rows, best], np.mod((best + lam[rows, best]) / self.m, 1.0)

    def passages(self, point, radius) -> list:
        """Maximal runs of consecutive edges passing within radius of point, ordered by start edge."""
        dist, lam = self.segment_distances(point)
        dist, lam = dist[0], lam[0]
        result = []
        for start, count in cyclic_runs(np.flatnonzero(dist <= radius), self.m):
            run = np.mod(np.arange(start, start + count), self.m)
            best = run[np.argmin(dist[run])]
            result.append(Passage(
                start_edge=int(start), edge_count=int(count),
                param=float(np.mod((best + lam[best]) / self.m, 1.0)), distance=float(dist[best]),
            ))
        return result

    def passage_count(self, point, radius) -> int:
        return len(self.passages(point, radius))

    def passage_counts(self, points, radius) -> np.ndarray:
        """passage_count for many points at once."""
        dist, _ = self.segment_distances(points)
        near = dist <= radius
        counts = (near & ~np.roll(near, 1, axis=1)).sum(axis=1)
        counts[near.all(axis=1)] = 1
        return counts


def _tangent_frame(curve: DiscreteLoopImmersion) -> TangentFrame:
    tangents = (np.roll(curve.samples, -1, axis=0) - np.roll(curve.samples, 1, axis=0)) * (curve.m / 2.0)
    norms = np.linalg.norm(tangents, axis=1)
    safe = np.where(norms > 0, norms, 1.0)
    return TangentFrame(
        tangents=readonly_array(tangents),
        unit_tangents=readonly_array(tangents / safe[:, None]),
        edge_lengths=curve.edge_lengths,
    )


def validate(curve: DiscreteLoopImmersion) -> ValidationReport:
    violations = []
    min_samples = settings.LOOPSPACE_MIN_SAMPLES
    if curve.dim < 2:
        violations.append(f'ambient dimension {curve.dim} < 2')
    if curve.m < min_samples:
        violations.append(f'm < {min_samples}')
    bad_rows = np.flatnonzero(~np.isfinite(curve.samples).all(axis=1))
    for index in bad_rows:
        violations.append(f'non-finite coordinate at index {index}')
    if curve.m and not len(bad_rows):
        scale = max(float(np.abs(curve.samples).max()), 1.0)
        for index in np.flatnonzero(curve.edge_lengths <= ZERO_LENGTH * scale):
            violations.append(f'zero-length edge at index {index}')
        if curve.m >= 3:
            frame = curve.tangent_frame()
            for index in np.flatnonzero(np.linalg.norm(frame.tangents, axis=1) <= ZERO_LENGTH * scale):
                violations.append(f'vanishing central tangent at index {index}')
    if violations:
        logger.debug(f'curve with m={curve.m} has {len(violations)} violations')
    return ValidationReport(violations=violations)


def require_valid(curve: DiscreteLoopImmersion) -> DiscreteLoopImmersion:
    report = validate(curve)
    if not report.is_valid:
        raise InvalidCurve(report.violations)
    return curve
