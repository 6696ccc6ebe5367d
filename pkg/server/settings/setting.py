#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : setting
# date : 10/18/2026

from .base import *

# 默认容差, 长度类容差 = 系数 × 曲线直径
LOOPSPACE_TOLERANCE = {
    'EPS_IMAGE_FACTOR': locals().get('EPS_IMAGE_FACTOR', 1e-3),
    'EPS_MATCH_FACTOR': locals().get('EPS_MATCH_FACTOR', 1e-2),
    'EPS_SECTION': locals().get('EPS_SECTION', 1e-6),
}

# 离散模型的采样下限
LOOPSPACE_MIN_SAMPLES = 8

# 种子匹配/旋转候选/墙枚举的线程数
LOOPSPACE_WORKERS = locals().get('MATCH_WORKERS', 4)

# 输出数值格式
LOOPSPACE_SIGNIFICANT_DIGITS = locals().get('OUTPUT_SIGNIFICANT_DIGITS', 17)

# 两条曲线采样密度可比的上限 |m1 - m2| / m1
LOOPSPACE_DENSITY_RATIO = 4

# 可视作同一参数点的相对距离 (参数单位)
LOOPSPACE_PARAM_SNAP = 1e-9
