#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : frames
# date : 10/18/2026
"""
Normal bundle of a sampled loop and its sections.

The normal space at sample k is the orthogonal complement of the central
unit tangent. In the plane the frame is the tangent turned by -π/2, which
is the outward normal of a counterclockwise circle. In higher dimensions
the frame is carried along the loop by projection and polar
orthonormalization; the holonomy it picks up on the way around is spread
evenly over the loop through its matrix logarithm.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import expm, logm, null_space, polar

from common.utils import get_logger, readonly_array
from geometry.curves import DiscreteLoopImmersion, require_valid

logger = get_logger(__name__)

HOLONOMY_CHECK = 1e-9


def sample_at(values, t) -> np.ndarray:
    """Periodic piecewise-linear interpolation of per-sample values at parameters t."""
    values = np.asarray(values, dtype=float)
    m = values.shape[0]
    u = np.mod(np.asarray(t, dtype=float), 1.0) * m
    k = np.floor(u).astype(int)
    lam = u - k
    k = np.mod(k, m)
    lam = lam.reshape(lam.shape + (1,) * (values.ndim - 1))
    return (1.0 - lam) * values[k] + lam * values[np.mod(k + 1, m)]


@dataclass(frozen=True, eq=False)
class NormalBundleFrame:
    """
    frames: (m, n-1, n), rows of frames[k] are an orthonormal basis of the normal space at k
    holonomy: transport of frames[0] once around the loop, in frames[0] coordinates
    seam: closing edge index when the holonomy could not be spread, else None
    """
    base: DiscreteLoopImmersion
    frames: np.ndarray
    holonomy: np.ndarray
    seam: Optional[int] = None

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def codim(self) -> int:
        return self.frames.shape[1]

    @property
    def closing(self) -> np.ndarray:
        """Coordinate change from frames[0] to the frame reached by continuing past sample m-1."""
        if self.seam is None:
            return np.eye(self.codim)
        return self.holonomy

    def next_frames(self) -> np.ndarray:
        following = np.roll(self.frames, -1, axis=0)
        following[-1] = self.closing @ self.frames[0]
        return following

    def vectors(self, coeffs) -> np.ndarray:
        return np.einsum('kc,kcn->kn', np.asarray(coeffs, dtype=float), self.frames)

    def coordinates(self, vectors) -> np.ndarray:
        """Frame coordinates of the normal part of per-sample vectors."""
        return np.einsum('kn,kcn->kc', np.asarray(vectors, dtype=float), self.frames)

    def tangent_defect(self) -> float:
        unit = self.base.tangent_frame().unit_tangents
        return float(np.abs(np.einsum('kcn,kn->kc', self.frames, unit)).max())

    def orthonormal_defect(self) -> float:
        gram = np.einsum('kan,kbn->kab', self.frames, self.frames)
        return float(np.abs(gram - np.eye(self.codim)).max())


@dataclass(frozen=True, eq=False)
class NormalSection:
    frame: NormalBundleFrame
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=float)
        if coeffs.ndim == 1:
            coeffs = coeffs[:, None]
        object.__setattr__(self, 'coeffs', readonly_array(coeffs))

    @classmethod
    def zero(cls, frame: NormalBundleFrame) -> 'NormalSection':
        return cls(frame, np.zeros((frame.m, frame.codim)))

    @classmethod
    def from_vectors(cls, frame: NormalBundleFrame, vectors) -> 'NormalSection':
        return cls(frame, frame.coordinates(vectors))

    @property
    def base(self) -> DiscreteLoopImmersion:
        return self.frame.base

    @property
    def m(self) -> int:
        return self.coeffs.shape[0]

    @property
    def vectors(self) -> np.ndarray:
        return self.frame.vectors(self.coeffs)

    @property
    def sup_norm(self) -> float:
        return float(np.linalg.norm(self.coeffs, axis=1).max())

    def distance(self, other: 'NormalSection') -> float:
        return float(np.linalg.norm(self.coeffs - other.coeffs, axis=1).max())

    def scaled(self, factor) -> 'NormalSection':
        factor = np.asarray(factor, dtype=float)
        if factor.ndim:
            factor = factor[:, None]
        return NormalSection(self.frame, factor * self.coeffs)

    def __add__(self, other: 'NormalSection') -> 'NormalSection':
        return NormalSection(self.frame, self.coeffs + other.coeffs)

    def __sub__(self, other: 'NormalSection') -> 'NormalSection':
        return NormalSection(self.frame, self.coeffs - other.coeffs)

    def __neg__(self) -> 'NormalSection':
        return NormalSection(self.frame, -self.coeffs)


def _planar_frames(unit):
    # 切向量顺时针转 90°
    return np.stack([unit[:, 1], -unit[:, 0]], axis=1)[:, None, :]


def _transported_frames(unit):
    m, n = unit.shape
    frames = np.empty((m + 1, n - 1, n))
    frames[0] = null_space(unit[0][None, :]).T
    for k in range(1, m + 1):
        u = unit[k % m]
        projected = frames[k - 1] - np.outer(frames[k - 1] @ u, u)
        q, _ = polar(projected.T)
        frames[k] = q.T
    return frames


def normal_frame(curve: DiscreteLoopImmersion) -> NormalBundleFrame:
    require_valid(curve)
    unit = curve.tangent_frame().unit_tangents
    m, n = unit.shape
    if n == 2:
        return NormalBundleFrame(base=curve, frames=readonly_array(_planar_frames(unit)), holonomy=np.eye(1))
    transported = _transported_frames(unit)
    holonomy = transported[m] @ transported[0].T
    frames = transported[:m]
    seam = None
    generator = None
    if np.linalg.det(holonomy) > 0:
        generator = np.real(logm(holonomy))
        if np.abs(expm(generator) - holonomy).max() > HOLONOMY_CHECK:
            generator = None
    if generator is None:
        seam = m - 1
        logger.warning(f'normal frame holonomy cannot be spread along the loop, seam at edge {seam}')
    else:
        unwind = np.stack([expm(-(k / m) * generator) for k in range(m)])
        frames = np.einsum('kab,kbn->kan', unwind, frames)
    logger.debug(f'normal frame in R^{n}: holonomy angle {np.abs(np.angle(np.linalg.eigvals(holonomy))).max():.3e}')
    return NormalBundleFrame(base=curve, frames=readonly_array(frames), holonomy=holonomy, seam=seam)
