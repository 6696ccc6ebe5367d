#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : exceptions
# date : 10/18/2026

from django.utils.translation import gettext_lazy as _
from rest_framework.exceptions import APIException


class DegenerateTubeProfile(APIException):
    default_code = 'degenerate_tube_profile'
    default_detail = _('Tube radius {} at sample {} is below {}; refine the sampling or lower eps_image')

    def __init__(self, rho, index, floor):
        super().__init__(detail=self.default_detail.format(rho, index, floor))


class TubeOverflow(APIException):
    default_code = 'tube_overflow'
    default_detail = _('Section sup norm {} does not stay below the minimal tube radius {}')

    def __init__(self, norm, bound):
        super().__init__(detail=self.default_detail.format(norm, bound))


class OutsideTube(APIException):
    default_code = 'outside_tube'
    default_detail = _('Sample {} of the curve does not decompose inside the tube of the base curve: {}')

    def __init__(self, index, reason):
        super().__init__(detail=self.default_detail.format(index, reason))


class NonMonotoneChart(APIException):
    default_code = 'non_monotone_chart'
    default_detail = _('Foot points stop advancing along the base curve at sample {}; the curve is too far from '
                       'the base in the C¹ sense')

    def __init__(self, index):
        super().__init__(detail=self.default_detail.format(index))


class NotIsotropy(APIException):
    default_code = 'not_isotropy'
    default_detail = _('Reparametrization moves the base curve by {} > eps_match {}')

    def __init__(self, residual, eps_match):
        super().__init__(detail=self.default_detail.format(residual, eps_match))


class ArcOverlap(APIException):
    default_code = 'arc_overlap'
    default_detail = _('Arc {} meets its image under the wall element; an isotropy element without fixed points '
                       'cannot do that, this is a bug')

    def __init__(self, alpha):
        super().__init__(detail=self.default_detail.format(alpha))
