#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : exceptions
# date : 10/18/2026

from django.utils.translation import gettext_lazy as _
from rest_framework.exceptions import APIException


class ImageAmbiguity(APIException):
    default_code = 'image_ambiguity'
    default_detail = _('Image clusters are ambiguous at eps_image={}: {}; sample more finely or lower eps_image')

    def __init__(self, eps_image, reason):
        super().__init__(detail=self.default_detail.format(eps_image, reason))
