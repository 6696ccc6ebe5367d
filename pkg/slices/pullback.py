#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : pullback
# date : 10/18/2026
"""
Action of the isotropy group on normal sections.

For f with i∘f = i the normal spaces at t and f(t) coincide, so
(f*s)(t) is the vector s(f(t)) read in the frame at t. The half-density
variant multiplies by the square root of the arclength stretch of f,
which makes the action isometric for the arclength inner product.
"""
import numpy as np
from django.conf import settings

from common.core.config import ToleranceProfile
from common.utils import get_logger
from orbit.matching import verify_reparam
from orbit.reparam import ReparamMap
from slices.exceptions import NotIsotropy
from slices.frames import NormalBundleFrame, NormalSection

logger = get_logger(__name__)


def require_isotropy(f: ReparamMap, frame: NormalBundleFrame, tol: ToleranceProfile = None) -> float:
    base = frame.base
    tol = tol or ToleranceProfile.for_curves(base)
    residual = verify_reparam(base, base, f)
    if residual > tol.eps_match:
        raise NotIsotropy(residual, tol.eps_match)
    return residual


def _sources(f: ReparamMap, m: int):
    """Samples feeding (f*s)(t_k): left index, right index and the weight of the right one."""
    shift = f.index_shift(m, settings.LOOPSPACE_PARAM_SNAP)
    if shift is not None:
        return shift, shift, np.zeros(m)
    u = f(np.arange(m) / m) * m
    left = np.floor(u).astype(int)
    return np.mod(left, m), np.mod(left + 1, m), u - left


def _pulled_coeffs(f, section):
    left, right, lam = _sources(f, section.m)
    vectors = section.vectors
    moved = (1.0 - lam)[:, None] * vectors[left] + lam[:, None] * vectors[right]
    return section.frame.coordinates(moved)


def pullback_plain(f: ReparamMap, section: NormalSection, tol: ToleranceProfile = None) -> NormalSection:
    require_isotropy(f, section.frame, tol)
    return NormalSection(section.frame, _pulled_coeffs(f, section))


def pullback_matrix(f: ReparamMap, frame: NormalBundleFrame) -> np.ndarray:
    """Matrix of s ↦ f*s on flattened coefficients, (m·c) × (m·c) with c the codimension."""
    m, c = frame.m, frame.codim
    left, right, lam = _sources(f, m)
    frames = frame.frames
    blocks = np.zeros((m, c, m, c))
    rows = np.arange(m)
    blocks[rows, :, left, :] += (1.0 - lam)[:, None, None] * np.einsum('kan,kbn->kab', frames, frames[left])
    blocks[rows, :, right, :] += lam[:, None, None] * np.einsum('kan,kbn->kab', frames, frames[right])
    return blocks.reshape(m * c, m * c)


def jacobian(f: ReparamMap, frame: NormalBundleFrame) -> np.ndarray:
    """Arclength of f(cell_k) over arclength of cell_k, cell_k = [t_k - 1/2m, t_k + 1/2m]."""
    base = frame.base
    t = base.params
    half = 0.5 / base.m
    stretched = np.abs(base.arclength_at(f.lift(t + half)) - base.arclength_at(f.lift(t - half)))
    return stretched / base.measure


def pullback_halfdensity(f: ReparamMap, section: NormalSection, tol: ToleranceProfile = None) -> NormalSection:
    pulled = pullback_plain(f, section, tol)
    return pulled.scaled(np.sqrt(jacobian(f, section.frame)))


def inner_product(s1: NormalSection, s2: NormalSection) -> float:
    """Σ_k ⟨s1(t_k), s2(t_k)⟩ Δℓ_k with the trapezoidal arclength weights of the base."""
    return float(np.einsum('kc,kc,k->', s1.coeffs, s2.coeffs, s1.base.measure))


def section_norm(section: NormalSection) -> float:
    return float(np.sqrt(max(inner_product(section, section), 0.0)))
