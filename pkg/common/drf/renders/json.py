#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : json
# date : 10/18/2026
import math

import numpy as np
from django.conf import settings
from rest_framework.renderers import BaseRenderer
from rest_framework.utils import json

__all__ = ['FixedPrecisionJSONRenderer', 'format_number']


def format_number(value, digits=None) -> str:
    digits = digits or settings.LOOPSPACE_SIGNIFICANT_DIGITS
    value = float(value)
    if not math.isfinite(value):
        return 'null'
    text = '%.*g' % (digits, value)
    return '0' if text == '-0' else text


class FixedPrecisionJSONRenderer(BaseRenderer):
    """
    JSON 输出, 浮点数固定有效位数, 相同输入字节级一致
    """
    media_type = 'application/json'
    format = 'json'
    charset = None

    def __init__(self, digits=None, indent=None):
        self.digits = digits or settings.LOOPSPACE_SIGNIFICANT_DIGITS
        self.indent = indent

    def render(self, data, accepted_media_type=None, renderer_context=None):
        renderer_context = renderer_context or {}
        indent = renderer_context.get('indent', self.indent)
        return (self._encode(data, indent, 0) + '\n').encode('utf-8')

    def _encode(self, value, indent, level):
        if value is None:
            return 'null'
        if isinstance(value, (bool, np.bool_)):
            return 'true' if value else 'false'
        if isinstance(value, (int, np.integer)):
            return str(int(value))
        if isinstance(value, (float, np.floating)):
            return format_number(value, self.digits)
        if isinstance(value, str):
            return json.dumps(value, ensure_ascii=False)
        if isinstance(value, np.ndarray):
            value = value.tolist()
        if hasattr(value, 'as_json'):
            value = value.as_json()
        if isinstance(value, dict):
            items = [f'{json.dumps(str(key), ensure_ascii=False)}: {self._encode(item, indent, level + 1)}'
                     for key, item in value.items()]
            return self._join(items, '{', '}', indent, level)
        if isinstance(value, (list, tuple)):
            items = [self._encode(item, indent, level + 1) for item in value]
            return self._join(items, '[', ']', indent, level)
        raise TypeError(f'Object of type {type(value).__name__} is not JSON serializable')

    @staticmethod
    def _join(items, opening, closing, indent, level):
        if not items:
            return opening + closing
        if not indent:
            return opening + ', '.join(items) + closing
        inner = '\n' + ' ' * (indent * (level + 1))
        return opening + inner + (',' + inner).join(items) + '\n' + ' ' * (indent * level) + closing
