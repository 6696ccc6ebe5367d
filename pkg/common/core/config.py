#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : config
# date : 10/18/2026
# 容差默认值来自 settings.LOOPSPACE_TOLERANCE, 可以通过 .env 或命令行参数覆盖

from dataclasses import dataclass, replace

from django.conf import settings

from common.exceptions import InvalidToleranceProfile
from common.utils import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class ToleranceProfile:
    """
    eps_image: sample separation at which points count as the same image point
    eps_match: sup distance at which two curves count as the same
    eps_section: coefficient tolerance for normal sections
    """
    eps_image: float
    eps_match: float
    eps_section: float

    def __post_init__(self):
        for name in ('eps_image', 'eps_match', 'eps_section'):
            value = getattr(self, name)
            if not value > 0:
                raise InvalidToleranceProfile(f'{name}={value}')
        if self.eps_image > self.eps_match:
            raise InvalidToleranceProfile(f'eps_image={self.eps_image} > eps_match={self.eps_match}')

    @classmethod
    def for_diameter(cls, diameter: float, **overrides) -> 'ToleranceProfile':
        config = settings.LOOPSPACE_TOLERANCE
        values = {
            'eps_image': config['EPS_IMAGE_FACTOR'] * diameter,
            'eps_match': config['EPS_MATCH_FACTOR'] * diameter,
            'eps_section': config['EPS_SECTION'],
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        profile = cls(**values)
        logger.debug(f'tolerance profile {profile}')
        return profile

    @classmethod
    def for_curves(cls, *curves, **overrides) -> 'ToleranceProfile':
        """Defaults scaled by the largest diameter among the curves."""
        return cls.for_diameter(max(curve.diameter for curve in curves), **overrides)

    def override(self, **overrides) -> 'ToleranceProfile':
        return replace(self, **{key: value for key, value in overrides.items() if value is not None})

    def as_json(self) -> dict:
        return {'eps_image': self.eps_image, 'eps_match': self.eps_match, 'eps_section': self.eps_section}
