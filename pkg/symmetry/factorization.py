#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : factorization
# date : 10/18/2026
from dataclasses import dataclass, replace

import numpy as np

from common.core.config import ToleranceProfile
from common.utils import get_logger
from geometry.curves import DiscreteLoopImmersion, require_valid
from orbit.reparam import ReparamMap
from symmetry.exceptions import ReconstructionFailure
from symmetry.isotropy import isotropy_group

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class PrimitiveFactorization:
    """
    curve(t) ≈ primitive(degree · to_cover(t))
    to_cover: input parameter → arclength parameter of the normalized curve
    """
    primitive: DiscreteLoopImmersion
    degree: int
    to_cover: ReparamMap
    residual: float = 0.0

    def covering(self, u) -> np.ndarray:
        return np.mod(self.degree * np.asarray(u, dtype=float), 1.0)

    def reconstruct(self, t) -> np.ndarray:
        return self.primitive.evaluate(self.covering(self.to_cover(t)))


def covering_residual(curve: DiscreteLoopImmersion, factorization: PrimitiveFactorization, density: int = 8) -> float:
    n = density * curve.m
    t = np.concatenate([np.arange(n) / n, curve.params])
    return float(np.linalg.norm(factorization.reconstruct(t) - curve.evaluate(t), axis=1).max())


def primitive_factorization(curve: DiscreteLoopImmersion, tol: ToleranceProfile = None) -> PrimitiveFactorization:
    require_valid(curve)
    tol = tol or ToleranceProfile.for_curves(curve)
    group = isotropy_group(curve, tol)
    if group.is_trivial:
        return PrimitiveFactorization(primitive=curve, degree=1, to_cover=ReparamMap.identity())
    normalized = group.normalized
    # 一个基本域 [0, 1/k)
    primitive = DiscreteLoopImmersion(normalized.samples[:normalized.m // group.order].copy(), normalized.ambient)
    factorization = PrimitiveFactorization(primitive=primitive, degree=group.order, to_cover=group.to_input.inverse())
    residual = covering_residual(curve, factorization)
    if residual > tol.eps_match:
        raise ReconstructionFailure(f'sup distance {residual:.3e} exceeds eps_match {tol.eps_match:.3e}')
    if not isotropy_group(primitive, tol).is_trivial:
        raise ReconstructionFailure('the primitive loop still has nontrivial isotropy')
    logger.debug(f'primitive loop of degree {group.order} with {primitive.m} samples, residual {residual:.3e}')
    return replace(factorization, residual=residual)
