#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : chart
# date : 10/18/2026
"""
Slice chart around a base loop i.

tau_push(s) = i + s maps normal sections into loops near i. Its partial
inverse chart_phi splits a nearby loop j into a normal section s and a
base map f0 with j ≈ tau_push(s)∘f0: every sample of j is written as
i(y) + F(y)ᵀc on the piecewise-linear trace of i with linearly
interpolated frames, the cell of y being tracked from one sample to the
next so the branch of i never jumps at self-intersections. The tracked
feet then seed a joint refinement of all feet and grid coefficients on
the piecewise-linear pushed curve.
"""
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix, identity
from scipy.sparse.linalg import spsolve

from common.core.config import ToleranceProfile
from common.utils import get_logger
from geometry.curves import DiscreteLoopImmersion, require_valid
from orbit.reparam import ReparamMap
from slices.exceptions import NonMonotoneChart, OutsideTube, TubeOverflow
from slices.frames import NormalBundleFrame, NormalSection, normal_frame
from slices.pullback import pullback_plain
from slices.tube import TubeProfile, tube_profile
from symmetry.isotropy import isotropy_group

logger = get_logger(__name__)

NEWTON_STEPS = 30
NEWTON_TOL = 1e-13
# 单元边界的容差, 相对单元参数
CELL_SNAP = 1e-9
REFINE_STEPS = 20
REFINE_DAMPING = 1e-14


@dataclass(frozen=True, eq=False)
class ChartPoint:
    """j ≈ tau_push(section)∘reparam; residual is the sup distance of that reconstruction at the samples of j."""
    section: NormalSection
    reparam: ReparamMap
    residual: float
    start: int


def tau_push(section: NormalSection, tube: TubeProfile = None) -> DiscreteLoopImmersion:
    base = section.base
    tube = tube or tube_profile(base)
    norm = section.sup_norm
    if norm >= tube.min_rho:
        raise TubeOverflow(norm, tube.min_rho)
    return DiscreteLoopImmersion(base.samples + section.vectors, base.ambient)


class _FootSolver:
    """Newton iteration for i(y) + F(y)ᵀc = point inside one cell [k/m, (k+1)/m]."""

    def __init__(self, frame: NormalBundleFrame):
        base = frame.base
        self.m = base.m
        self.samples = base.samples
        self.edges = base.edges
        self.frames = frame.frames
        self.following = frame.next_frames()
        self.tol = NEWTON_TOL * max(1.0, base.diameter)

    def solve(self, cell, point, lam):
        k = cell % self.m
        p, e = self.samples[k], self.edges[k]
        fa, fb = self.frames[k], self.following[k]
        c = ((1 - lam) * fa + lam * fb) @ (point - p - lam * e)
        for _ in range(NEWTON_STEPS):
            blend = (1 - lam) * fa + lam * fb
            residual = p + lam * e + blend.T @ c - point
            if np.linalg.norm(residual) <= self.tol:
                return lam, c, blend.T @ c
            jacobian = np.column_stack([e + (fb - fa).T @ c, blend.T])
            try:
                step = np.linalg.solve(jacobian, -residual)
            except np.linalg.LinAlgError:
                return None
            lam += step[0]
            c = c + step[1:]
        return None

    def track(self, cell, point, lam, reach):
        """Move between cells until the foot falls inside one: (cell, lam, c, offset) or None."""
        for _ in range(4 * reach + 8):
            solved = self.solve(cell, point, lam)
            if solved is None:
                return None
            lam, c, offset = solved
            if -CELL_SNAP <= lam <= 1 + CELL_SNAP:
                return cell, lam, c, offset
            shift = int(np.clip(np.floor(lam), -reach, reach))
            cell += shift
            lam = float(np.clip(lam - shift, 0.0, 1.0))
        return None


def _split_jacobian(frame, cells, mu, pushed):
    """Sparse derivative of (1-μ_l)J_a + μ_l J_b - j_l in (μ, grid coefficients); J_k = p_k + F_kᵀc_k."""
    m, codim, dim = frame.m, frame.codim, frame.base.dim
    q = len(mu)
    a, b = np.mod(cells, m), np.mod(cells + 1, m)
    rows = np.arange(q * dim).reshape(q, dim)

    mu_rows, mu_cols, mu_vals = rows.ravel(), np.repeat(np.arange(q), dim), (pushed[b] - pushed[a]).ravel()

    def coeff_block(index, weight):
        # (q, codim, dim): 行 l*dim+i, 列 q + index*codim + k
        block_rows = np.broadcast_to(rows[:, None, :], (q, codim, dim))
        block_cols = np.broadcast_to((q + index[:, None] * codim + np.arange(codim))[:, :, None], (q, codim, dim))
        return block_rows.ravel(), block_cols.ravel(), (weight[:, None, None] * frame.frames[index]).ravel()

    parts = [(mu_rows, mu_cols, mu_vals), coeff_block(a, 1.0 - mu), coeff_block(b, mu)]
    return coo_matrix(
        (np.concatenate([p[2] for p in parts]), (np.concatenate([p[0] for p in parts]),
                                                 np.concatenate([p[1] for p in parts]))),
        shape=(q * dim, q + m * codim),
    ).tocsr()


def _refine_split(frame: NormalBundleFrame, targets, ys, coeffs):
    """
    Gauss-Newton on the piecewise-linear pushed curve: find feet y_l and grid coefficients c
    with tau_push(c) evaluated at y_l equal to the samples of j, all at once.
    Vertices that no sample constrains keep their starting coefficients.
    """
    base = frame.base
    m, codim = frame.m, frame.codim
    q = len(ys)
    u = np.asarray(ys, dtype=float) * m
    cells = np.floor(u).astype(int)
    mu = u - cells
    coeffs = np.array(coeffs, dtype=float)
    tol = NEWTON_TOL * max(1.0, base.diameter)
    best = (np.inf, cells, mu, coeffs)
    for _ in range(REFINE_STEPS + 1):
        pushed = base.samples + frame.vectors(coeffs)
        a, b = np.mod(cells, m), np.mod(cells + 1, m)
        residual = (1.0 - mu)[:, None] * pushed[a] + mu[:, None] * pushed[b] - targets
        error = float(np.abs(residual).max())
        if error >= best[0]:
            break
        best = (error, cells, mu, coeffs)
        if error <= tol:
            break
        jacobian = _split_jacobian(frame, cells, mu, pushed)
        normal = (jacobian.T @ jacobian).tocsc()
        damping = REFINE_DAMPING * max(float(normal.diagonal().max()), np.finfo(float).tiny)
        step = spsolve(normal + damping * identity(normal.shape[0], format='csc'), -(jacobian.T @ residual.ravel()))
        mu = mu + step[:q]
        coeffs = coeffs + step[q:].reshape(m, codim)
        # 越过顶点的样本换到相邻单元
        shift = np.where((mu < -CELL_SNAP) | (mu > 1 + CELL_SNAP), np.floor(mu), 0.0).astype(int)
        cells, mu = cells + shift, mu - shift
    error, cells, mu, coeffs = best
    logger.debug(f'split refinement of {q} samples: max residual {error:.3e}')
    return (cells + mu) / m, coeffs


def chart_phi(curve: DiscreteLoopImmersion, j: DiscreteLoopImmersion, frame: NormalBundleFrame = None,
              tube: TubeProfile = None) -> ChartPoint:
    require_valid(curve)
    require_valid(j)
    if j.dim != curve.dim:
        raise OutsideTube(0, f'dimension {j.dim} differs from the base dimension {curve.dim}')
    frame = frame or normal_frame(curve)
    tube = tube or tube_profile(curve)
    solver = _FootSolver(frame)
    m = curve.m
    reach = 2 + int(np.ceil(2 * m / j.m))

    # 从管子最宽处开始, 分支唯一
    dist, params = curve.nearest_on_trace(j.samples)
    start = int(np.argmax(tube.at(params) - dist))
    u = params[start] * m
    cell, lam = int(np.floor(u)), float(u - np.floor(u))

    ys = np.empty(j.m)
    coeffs = np.empty((j.m, frame.codim))
    for step in range(j.m):
        k = (start + step) % j.m
        found = solver.track(cell, j.samples[k], lam, reach)
        if found is None:
            raise OutsideTube(k, 'no foot point near the previous one')
        cell, lam, c, offset = found
        y = (cell + lam) / m
        if step and y <= ys[step - 1]:
            raise NonMonotoneChart(k)
        radius = float(tube.at(y))
        if np.linalg.norm(offset) > radius:
            raise OutsideTube(k, f'normal offset {np.linalg.norm(offset):.3e} exceeds the tube radius {radius:.3e}')
        ys[step] = y
        coeffs[step] = c
    if ys[-1] >= ys[0] + 1:
        raise NonMonotoneChart(start)

    grid = curve.params
    feet = np.mod(ys, 1.0)
    guess = np.column_stack([np.interp(grid, feet, coeffs[:, index], period=1.0) for index in range(frame.codim)])
    order = np.mod(start + np.arange(j.m), j.m)
    ys, grid_coeffs = _refine_split(frame, j.samples[order], ys, guess)
    if np.any(np.diff(ys) <= 0):
        raise NonMonotoneChart(int(order[int(np.argmin(np.diff(ys)))]))
    if ys[-1] >= ys[0] + 1:
        raise NonMonotoneChart(start)

    section = NormalSection(frame, grid_coeffs)
    norms = np.linalg.norm(section.vectors, axis=1)
    if np.any(norms > tube.rho):
        k = int(np.argmax(norms - tube.rho))
        raise OutsideTube(k, f'normal offset {norms[k]:.3e} exceeds the tube radius {tube.rho[k]:.3e}')
    reparam = ReparamMap(ts=(start + np.arange(j.m)) / j.m, ys=ys, deg=1)
    pushed = DiscreteLoopImmersion(curve.samples + section.vectors, curve.ambient)
    residual = float(np.linalg.norm(pushed.evaluate(reparam(j.params)) - j.samples, axis=1).max())
    logger.debug(f'chart of {j.m} samples: start {start}, section sup {section.sup_norm:.3e}, '
                 f'splitting residual {residual:.3e}')
    return ChartPoint(section=section, reparam=reparam, residual=residual, start=start)


def chart_change(source: NormalSection, target: DiscreteLoopImmersion, frame: NormalBundleFrame = None,
                 tube: TubeProfile = None, source_tube: TubeProfile = None) -> ChartPoint:
    """Coordinates in the chart of target of the loop with coordinates source in the chart of its base."""
    return chart_phi(target, tau_push(source, source_tube), frame=frame, tube=tube)


def transversal_hits(section: NormalSection, group, tol: ToleranceProfile = None) -> list:
    """Distinct sections f*s for f in the isotropy group, in the order of the group elements."""
    tol = tol or ToleranceProfile.for_curves(section.base)
    hits = []
    for element in group.elements:
        pulled = pullback_plain(element, section, tol)
        if all(pulled.distance(hit) > tol.eps_section for hit in hits):
            hits.append(pulled)
    logger.debug(f'{len(hits)} distinct transversal hits for an isotropy group of order {group.order}')
    return hits


def fixed_section_isotropy(section: NormalSection, tube: TubeProfile = None, tol: ToleranceProfile = None) -> int:
    """Isotropy order of tau_push(section)."""
    pushed = tau_push(section, tube)
    return isotropy_group(pushed, tol).order
