#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : generators
# date : 10/18/2026
"""
Curve families for the test corpus and the `gen` command.

Every generator returns a valid DiscreteLoopImmersion sampled at t_k = k/m.
Families that traverse a trace several times (k_fold_circle, figure_eight)
need sample counts that put repeated passes on the same sample points.
"""
import numpy as np
from django.conf import settings

from common.utils import get_logger
from geometry.curves import DiscreteLoopImmersion, require_valid
from geometry.exceptions import GeneratorSpecError

logger = get_logger(__name__)

TWO_PI = 2 * np.pi


def _params(m):
    if m < settings.LOOPSPACE_MIN_SAMPLES:
        raise GeneratorSpecError(f'm={m} is below the sampling floor {settings.LOOPSPACE_MIN_SAMPLES}')
    return np.arange(m) / m


def circle(m, radius=1.0, center=(0.0, 0.0)):
    t = _params(m)
    samples = np.column_stack([np.cos(TWO_PI * t), np.sin(TWO_PI * t)]) * radius + np.asarray(center, dtype=float)
    return DiscreteLoopImmersion(samples)


def ellipse(m, a=2.0, b=1.0):
    t = _params(m)
    return DiscreteLoopImmersion(np.column_stack([a * np.cos(TWO_PI * t), b * np.sin(TWO_PI * t)]))


def k_fold_circle(m, k, radius=1.0):
    """The circle traversed k times; m must be a multiple of k."""
    if k < 1:
        raise GeneratorSpecError(f'k={k} must be at least 1')
    if m % k:
        raise GeneratorSpecError(f'm={m} is not a multiple of k={k}')
    t = _params(m)
    return DiscreteLoopImmersion(np.column_stack([np.cos(TWO_PI * k * t), np.sin(TWO_PI * k * t)]) * radius)


def _lobe(theta, letter, radius):
    """
    'U': circle of the given radius centred at (0, r), counterclockwise from the origin;
    'L': centred at (0, -r), clockwise. Both leave the origin along +x.
    """
    sign = 1.0 if letter == 'U' else -1.0
    return np.column_stack([radius * np.sin(theta), sign * radius * (1.0 - np.cos(theta))])


def figure_eight(m, p=1, q=1, word=None, radii=(1.0, 1.0)):
    """
    Two circles tangent at the origin, the upper one traversed p times then the lower one q times.
    word overrides the traversal order, e.g. 'ULULU'; each letter is one full lobe.
    """
    word = (word or 'U' * p + 'L' * q).upper()
    if not word or set(word) - {'U', 'L'}:
        raise GeneratorSpecError(f'loop word {word!r} must be a non-empty string over U and L')
    if m % len(word):
        raise GeneratorSpecError(f'm={m} is not a multiple of the word length {len(word)}')
    per_lobe = m // len(word)
    _params(m)
    theta = TWO_PI * np.arange(per_lobe) / per_lobe
    upper, lower = float(radii[0]), float(radii[1])
    pieces = [_lobe(theta, letter, upper if letter == 'U' else lower) for letter in word]
    return DiscreteLoopImmersion(np.vstack(pieces))


def rose(m, petals=3, radius=1.0):
    """Rhodonea r = cos(kθ); odd petal counts close after π, even ones use k = petals/2 over 2π."""
    if petals < 1:
        raise GeneratorSpecError(f'petals={petals} must be at least 1')
    if petals % 4 == 2:
        # r = cos(kθ) with odd k has k petals, never 2k
        raise GeneratorSpecError(f'petals={petals}: even petal counts must be multiples of 4')
    t = _params(m)
    if petals % 2:
        k, theta = petals, np.pi * t
    else:
        k, theta = petals // 2, TWO_PI * t
    r = radius * np.cos(k * theta)
    return DiscreteLoopImmersion(np.column_stack([r * np.cos(theta), r * np.sin(theta)]))


def fourier(m, seed=0, modes=3, amplitude=0.3, dim=2):
    """
    Unit circle plus random higher harmonics 2..modes+1 with Σ j(|A_j| + |B_j|) = amplitude.

    amplitude < 1 keeps the derivative away from zero, amplitude < 2/π keeps the loop embedded.
    """
    if not 0 <= amplitude < 1:
        raise GeneratorSpecError(f'amplitude={amplitude} must lie in [0, 1)')
    if dim < 2:
        raise GeneratorSpecError(f'dim={dim} must be at least 2')
    t = _params(m)
    rs = np.random.RandomState(seed)
    samples = np.zeros((m, dim))
    samples[:, 0] = np.cos(TWO_PI * t)
    samples[:, 1] = np.sin(TWO_PI * t)
    orders = np.arange(2, modes + 2)
    a = rs.normal(size=(modes, dim))
    b = rs.normal(size=(modes, dim))
    weight = float((orders[:, None] * (np.linalg.norm(a, axis=1) + np.linalg.norm(b, axis=1))[:, None]).sum())
    if modes and weight > 0:
        scale = amplitude / weight
        for order, coeff_a, coeff_b in zip(orders, a * scale, b * scale):
            samples += np.outer(np.cos(TWO_PI * order * t), coeff_a) + np.outer(np.sin(TWO_PI * order * t), coeff_b)
    return DiscreteLoopImmersion(samples)


def torus_loop(m, windings=3, tube=0.3):
    """Embedded loop in R³ winding around a torus tube."""
    t = _params(m)
    ring = 1.0 + tube * np.cos(TWO_PI * windings * t)
    return DiscreteLoopImmersion(np.column_stack([
        ring * np.cos(TWO_PI * t), ring * np.sin(TWO_PI * t), tube * np.sin(TWO_PI * windings * t),
    ]))


def reparametrize(curve, f):
    """Samples of curve∘f at t_k = k/m, evaluated on the piecewise-linear trace."""
    return DiscreteLoopImmersion(curve.evaluate(f(curve.params)), curve.ambient)


GENERATORS = {
    'circle': circle,
    'ellipse': ellipse,
    'k_fold_circle': k_fold_circle,
    'figure_eight': figure_eight,
    'rose': rose,
    'fourier': fourier,
    'torus_loop': torus_loop,
}


def generate(kind, m, **params):
    try:
        func = GENERATORS[kind]
    except KeyError:
        raise GeneratorSpecError(f'unknown kind {kind!r}, expected one of {", ".join(GENERATORS)}')
    params = {key: value for key, value in params.items() if value is not None}
    try:
        curve = func(m, **params)
    except TypeError as exc:
        raise GeneratorSpecError(f'{kind}: {exc}')
    logger.debug(f'generated {kind} with m={m} params={params}')
    return require_valid(curve)
