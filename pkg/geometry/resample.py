#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : resample
# date : 10/18/2026
import numpy as np
from django.conf import settings

from common.utils import get_logger
from geometry.curves import DiscreteLoopImmersion, require_valid
from geometry.exceptions import InvalidCurve
from orbit.reparam import ReparamMap

logger = get_logger(__name__)

CHORD_SPREAD = 1e-11
# 低于此值且不再下降时视为舍入极限
STALL_SPREAD = 1e-8
MAX_ITERATIONS = 200


def point_at_arclength(curve: DiscreteLoopImmersion, s) -> np.ndarray:
    return curve.evaluate(curve.param_at_arclength(s))


def arclength_reparam(curve: DiscreteLoopImmersion, m_new: int):
    """
    Equal-chord resampling starting at p_0.

    Positions start equally spaced in arclength along the input trace and are
    moved until the chords between consecutive new samples agree; a polyline
    whose chords already agree is returned unchanged.

    :return: (resampled curve, ReparamMap h from the new to the old parameter)
    """
    require_valid(curve)
    if m_new < settings.LOOPSPACE_MIN_SAMPLES:
        raise InvalidCurve(f'm < {settings.LOOPSPACE_MIN_SAMPLES}')
    total = curve.length
    s = np.arange(m_new) * total / m_new
    spread = np.inf
    for iteration in range(MAX_ITERATIONS):
        points = point_at_arclength(curve, s)
        chords = np.linalg.norm(np.roll(points, -1, axis=0) - points, axis=1)
        previous, spread = spread, (chords.max() - chords.min()) / chords.mean()
        if spread <= CHORD_SPREAD:
            break
        if spread >= previous and spread <= STALL_SPREAD:
            logger.debug(f'equal-chord spread stalled at {spread:.3e} after {iteration} iterations')
            break
        chord_cumulative = np.concatenate([[0.0], np.cumsum(chords)])
        targets = np.arange(m_new) * chord_cumulative[-1] / m_new
        s = np.interp(targets, chord_cumulative, np.append(s, total))
    else:
        logger.warning(f'equal-chord resampling stopped after {MAX_ITERATIONS} iterations, spread {spread:.3e}')
    resampled = DiscreteLoopImmersion(point_at_arclength(curve, s), curve.ambient)
    h = ReparamMap(ts=np.arange(m_new) / m_new, ys=curve.param_at_arclength(s), deg=1)
    return resampled, h


def resample_arclength(curve: DiscreteLoopImmersion, m_new: int) -> DiscreteLoopImmersion:
    resampled, _ = arclength_reparam(curve, m_new)
    return resampled
