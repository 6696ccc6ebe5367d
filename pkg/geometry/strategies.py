#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : strategies
# date : 10/18/2026
"""hypothesis strategies shared by the app test suites."""
import numpy as np
from hypothesis import strategies as st

from geometry.generators import fourier
from orbit.reparam import ReparamMap


@st.composite
def fourier_curves(draw, m=200, dim=2, max_amplitude=0.4):
    """Seeded embedded loops: unit circle plus small random harmonics."""
    seed = draw(st.integers(min_value=0, max_value=2 ** 31 - 1))
    modes = draw(st.integers(min_value=1, max_value=4))
    amplitude = draw(st.floats(min_value=0.0, max_value=max_amplitude))
    return fourier(m, seed=seed, modes=modes, amplitude=amplitude, dim=dim)


def random_monotone_map(rng, n, max_slope=4.0, offset=0.0, deg=1) -> ReparamMap:
    """
    Random piecewise-linear circle map on n breakpoints with every slope in [1/max_slope, max_slope].

    Relative increments are drawn in [1, max_slope]; normalizing them to sum to 1 keeps
    each slope between 1/max_slope and max_slope.
    """
    increments = rng.uniform(1.0, max_slope, n)
    ys = np.concatenate([[0.0], np.cumsum(increments)[:-1]]) / increments.sum()
    return ReparamMap(ts=np.arange(n) / n, ys=offset + deg * ys, deg=deg)


@st.composite
def monotone_maps(draw, max_slope=4.0, breakpoints=(4, 24), deg=1):
    n = draw(st.integers(min_value=breakpoints[0], max_value=breakpoints[1]))
    seed = draw(st.integers(min_value=0, max_value=2 ** 31 - 1))
    offset = draw(st.floats(min_value=0.0, max_value=1.0, exclude_max=True))
    return random_monotone_map(np.random.RandomState(seed), n, max_slope, offset, deg)


@st.composite
def smooth_maps(draw, max_amplitude=0.5, n=512):
    amplitude = draw(st.floats(min_value=0.0, max_value=max_amplitude))
    mode = draw(st.integers(min_value=1, max_value=3))
    phase = draw(st.floats(min_value=0.0, max_value=2 * np.pi))
    offset = draw(st.floats(min_value=0.0, max_value=1.0, exclude_max=True))
    return ReparamMap.smooth(amplitude=amplitude, mode=mode, phase=phase, offset=offset, n=n)
