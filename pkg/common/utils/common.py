#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : common
# date : 10/18/2026

import logging
import os

import numpy as np


def get_logger(name='') -> logging.Logger:
    if '/' in name:
        name = os.path.basename(name).replace('.py', '')
    return logging.getLogger(f'loopspace.{name}')


class lazyproperty:
    def __init__(self, func):
        self.func = func

    def __get__(self, instance, cls):
        if instance is None:
            return self
        else:
            value = self.func(instance)
            # frozen dataclass 也能缓存
            object.__setattr__(instance, self.func.__name__, value)
            return value


def readonly_array(values, dtype=float) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.flags.writeable = False
    return array


def cyclic_runs(indices, m):
    """
    把 [0, m) 上的循环下标集合拆成极大连续段, 返回 [(start, length), ...], 按 start 排序.
    整圈时返回 [(0, m)].
    """
    marks = np.zeros(m, dtype=bool)
    marks[np.asarray(indices, dtype=int) % m] = True
    if not marks.any():
        return []
    if marks.all():
        return [(0, m)]
    starts = np.flatnonzero(marks & ~np.roll(marks, 1))
    runs = []
    for start in starts:
        length = 0
        while marks[(start + length) % m]:
            length += 1
        runs.append((int(start), length))
    return runs
