#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : exceptions
# date : 10/18/2026

from django.utils.translation import gettext_lazy as _
from rest_framework.exceptions import APIException


class InvalidToleranceProfile(APIException):
    default_code = 'invalid_tolerance_profile'
    default_detail = _('Tolerances must be positive and eps_image must not exceed eps_match: {}')

    def __init__(self, reason):
        super().__init__(detail=self.default_detail.format(reason))
