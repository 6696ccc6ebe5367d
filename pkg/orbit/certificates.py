#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : certificates
# date : 10/18/2026
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from django.db.models import TextChoices
from django.utils.translation import gettext_lazy as _

from orbit.reparam import ReparamMap


class CertificateKind(TextChoices):
    IMAGE_MISMATCH = 'ImageMismatch', _('Image mismatch')
    MULTIPLICITY_MISMATCH = 'MultiplicityMismatch', _('Multiplicity mismatch')
    COMBINATORIAL_OBSTRUCTION = 'CombinatorialObstruction', _('Combinatorial obstruction')


class ObstructionCase(TextChoices):
    BRANCH_MISMATCH = 'branch-mismatch', _('The continuing branch of the second curve diverges')
    DEGREE_MISMATCH = 'degree-mismatch', _('The march closes with a lift shift other than one turn')
    CLOSURE_FAILURE = 'closure-failure', _('The two marches do not meet at the seam')
    NO_SEED = 'no-seed', _('The second curve never passes the anchor point')


class VerdictStatus(TextChoices):
    EQUIVALENT = 'equivalent', _('Equivalent')
    DISTINCT = 'distinct', _('Distinct')


@dataclass(frozen=True)
class MatchSeed:
    """
    lambda0: anchor sample of the first curve, inside a minimal-δ interior level component
    mu0: ordinal of the second curve's passage through the anchor point
    """
    lambda0: int
    mu0: int
    orientation: int
    anchor_param: float
    target_param: float
    component: int
    start_edge: int

    def as_json(self) -> dict:
        return {
            'lambda0': self.lambda0, 'mu0': self.mu0, 'orientation': self.orientation,
            'anchor_param': self.anchor_param, 'target_param': self.target_param, 'component': self.component,
        }


@dataclass(frozen=True)
class ObstructionRecord:
    seed: Optional[MatchSeed]
    case: str
    param: Optional[float] = None
    distance: Optional[float] = None
    detail: str = ''

    def as_json(self) -> dict:
        return {
            'seed': self.seed.as_json() if self.seed else None,
            'case': str(self.case),
            'param': self.param,
            'distance': self.distance,
            'detail': self.detail,
        }


@dataclass(frozen=True, eq=False)
class SeparationCertificate:
    kind: str
    witness: Optional[np.ndarray] = None
    curve: Optional[int] = None
    distance: Optional[float] = None
    delta_1: Optional[int] = None
    delta_2: Optional[int] = None
    obstructions: list = field(default_factory=list)

    @classmethod
    def image_mismatch(cls, witness, curve, distance):
        return cls(kind=CertificateKind.IMAGE_MISMATCH, witness=np.asarray(witness, dtype=float), curve=curve,
                   distance=float(distance))

    @classmethod
    def multiplicity_mismatch(cls, witness, curve, delta_1, delta_2):
        return cls(kind=CertificateKind.MULTIPLICITY_MISMATCH, witness=np.asarray(witness, dtype=float),
                   curve=curve, delta_1=int(delta_1), delta_2=int(delta_2))

    @classmethod
    def combinatorial_obstruction(cls, obstructions):
        return cls(kind=CertificateKind.COMBINATORIAL_OBSTRUCTION, obstructions=list(obstructions))

    def as_json(self) -> dict:
        data = {'kind': str(self.kind)}
        if self.kind == CertificateKind.IMAGE_MISMATCH:
            data.update(witness=self.witness.tolist(), curve=self.curve, distance=self.distance)
        elif self.kind == CertificateKind.MULTIPLICITY_MISMATCH:
            data.update(witness=self.witness.tolist(), curve=self.curve, delta_1=self.delta_1, delta_2=self.delta_2)
        else:
            data.update(obstructions=[record.as_json() for record in self.obstructions])
        return data


@dataclass(frozen=True, eq=False)
class EquivalenceVerdict:
    status: str
    reparam: Optional[ReparamMap] = None
    residual: Optional[float] = None
    certificate: Optional[SeparationCertificate] = None

    @classmethod
    def equivalent(cls, reparam, residual):
        return cls(status=VerdictStatus.EQUIVALENT, reparam=reparam, residual=float(residual))

    @classmethod
    def distinct(cls, certificate):
        return cls(status=VerdictStatus.DISTINCT, certificate=certificate)

    @property
    def is_equivalent(self) -> bool:
        return self.status == VerdictStatus.EQUIVALENT

    def as_json(self) -> dict:
        return {
            'status': str(self.status),
            'reparam': self.reparam.as_json() if self.reparam else None,
            'certificate': self.certificate.as_json() if self.certificate else None,
            'residual': self.residual,
        }
