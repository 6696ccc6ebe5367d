#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : exceptions
# date : 10/18/2026

from django.utils.translation import gettext_lazy as _
from rest_framework.exceptions import APIException


class InvalidCurve(APIException):
    default_code = 'invalid_curve'
    default_detail = _('Not a valid discrete immersion: {}')

    def __init__(self, violations):
        if not isinstance(violations, str):
            violations = '; '.join(violations)
        super().__init__(detail=self.default_detail.format(violations))


class CoverConstructionFailed(APIException):
    default_code = 'cover_construction_failed'
    default_detail = _('cover construction failed: no embedded arc of 4 samples starts at index {} (eps_image={})')

    def __init__(self, index, eps_image):
        super().__init__(detail=self.default_detail.format(index, eps_image))


class GeneratorSpecError(APIException):
    default_code = 'generator_spec_error'
    default_detail = _('Invalid curve generator parameters: {}')

    def __init__(self, reason):
        super().__init__(detail=self.default_detail.format(reason))
