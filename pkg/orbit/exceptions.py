#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : exceptions
# date : 10/18/2026

from django.utils.translation import gettext_lazy as _
from rest_framework.exceptions import APIException


class InvalidReparam(APIException):
    default_code = 'invalid_reparam'
    default_detail = _('Not a degree ±1 piecewise-linear circle map: {}')

    def __init__(self, reason):
        super().__init__(detail=self.default_detail.format(reason))


class ToleranceInconsistency(APIException):
    default_code = 'tolerance_inconsistency'
    default_detail = _('Images agree at eps_match but clusters cannot be matched: {}')

    def __init__(self, reason):
        super().__init__(detail=self.default_detail.format(reason))
