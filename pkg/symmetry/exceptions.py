#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : exceptions
# date : 10/18/2026

from django.utils.translation import gettext_lazy as _
from rest_framework.exceptions import APIException


class SamplingCommensurability(APIException):
    default_code = 'sampling_commensurability'
    default_detail = _('Detected rotation of order {} does not divide the sample count {} after resampling')

    def __init__(self, order, m):
        super().__init__(detail=self.default_detail.format(order, m))


class ReconstructionFailure(APIException):
    default_code = 'reconstruction_failure'
    default_detail = _('Primitive loop does not reproduce the input: {}; the tolerance profile is inconsistent')

    def __init__(self, reason):
        super().__init__(detail=self.default_detail.format(reason))


class IsotropyAssertion(APIException):
    default_code = 'isotropy_assertion'
    default_detail = _('Orientation-reversing isotropy element with residual {} found; a reflection has fixed points '
                       'and cannot preserve an immersion')

    def __init__(self, residual):
        super().__init__(detail=self.default_detail.format(residual))
