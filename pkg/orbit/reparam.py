#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : reparam
# date : 10/18/2026
"""
Piecewise-linear circle diffeomorphisms of degree ±1.

A map is stored through one period of its lift: breakpoints ts strictly
increasing with ts[-1] < ts[0] + 1, values ys strictly monotone in the
direction of deg, and the lift rule f(t + 1) = f(t) + deg.
"""
from dataclasses import dataclass

import numpy as np

from common.utils import readonly_array
from orbit.exceptions import InvalidReparam


@dataclass(frozen=True, eq=False)
class ReparamMap:
    ts: np.ndarray
    ys: np.ndarray
    deg: int = 1

    def __post_init__(self):
        ts = np.atleast_1d(np.asarray(self.ts, dtype=float))
        ys = np.atleast_1d(np.asarray(self.ys, dtype=float))
        if ts.shape != ys.shape or ts.ndim != 1 or not len(ts):
            raise InvalidReparam('breakpoint arrays must be non-empty and of equal length')
        if self.deg not in (1, -1):
            raise InvalidReparam(f'degree must be +1 or -1, got {self.deg}')
        if not (np.isfinite(ts).all() and np.isfinite(ys).all()):
            raise InvalidReparam('breakpoints must be finite')
        # 周期窗口 [ts[0], ts[0] + 1)
        turns = np.floor(ts[0])
        ts, ys = ts - turns, ys - self.deg * turns
        shift = np.floor(ys[0])
        ys = ys - shift
        ts_ext = np.append(ts, ts[0] + 1.0)
        ys_ext = np.append(ys, ys[0] + self.deg)
        if np.any(np.diff(ts_ext) <= 0):
            raise InvalidReparam('lift breakpoints must be strictly increasing within one period')
        if np.any(self.deg * np.diff(ys_ext) <= 0):
            raise InvalidReparam('lift values must be strictly monotone in the direction of the degree')
        object.__setattr__(self, 'ts', readonly_array(ts))
        object.__setattr__(self, 'ys', readonly_array(ys))
        object.__setattr__(self, 'deg', int(self.deg))

    @classmethod
    def identity(cls) -> 'ReparamMap':
        return cls(ts=[0.0], ys=[0.0], deg=1)

    @classmethod
    def rotation(cls, shift: float) -> 'ReparamMap':
        return cls(ts=[0.0], ys=[float(shift)], deg=1)

    @classmethod
    def reflection(cls, center: float) -> 'ReparamMap':
        """t ↦ center - t"""
        return cls(ts=[0.0], ys=[float(center)], deg=-1)

    @classmethod
    def from_function(cls, func, n: int, deg: int = 1) -> 'ReparamMap':
        """Piecewise-linear interpolant of a lift func on n equally spaced breakpoints."""
        ts = np.arange(n) / n
        return cls(ts=ts, ys=np.asarray(func(ts), dtype=float), deg=deg)

    @classmethod
    def smooth(cls, amplitude=0.3, mode=1, phase=0.0, offset=0.0, n=1024, deg=1) -> 'ReparamMap':
        """t ↦ offset + deg·(t + amplitude·sin(2π·mode·t + phase)/(2π·mode)); slope in [1-amplitude, 1+amplitude]."""
        if not 0 <= amplitude < 1:
            raise InvalidReparam('amplitude must lie in [0, 1)')
        omega = 2 * np.pi * mode

        def lift(t):
            return offset + deg * (t + amplitude * (np.sin(omega * t + phase) - np.sin(phase)) / omega)

        return cls.from_function(lift, n, deg=deg)

    @property
    def breakpoints(self) -> np.ndarray:
        return np.column_stack([self.ts, self.ys])

    def lift(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        turns = np.floor(t - self.ts[0])
        tau = t - turns
        ts_ext = np.append(self.ts, self.ts[0] + 1.0)
        ys_ext = np.append(self.ys, self.ys[0] + self.deg)
        return np.interp(tau, ts_ext, ys_ext) + self.deg * turns

    def evaluate(self, t) -> np.ndarray:
        """Circle value f(t) in [0, 1)."""
        return np.mod(self.lift(t), 1.0)

    __call__ = evaluate

    def slopes(self) -> np.ndarray:
        ts_ext = np.append(self.ts, self.ts[0] + 1.0)
        ys_ext = np.append(self.ys, self.ys[0] + self.deg)
        return np.diff(ys_ext) / np.diff(ts_ext)

    def inverse(self) -> 'ReparamMap':
        if self.deg == 1:
            return ReparamMap(ts=self.ys, ys=self.ts, deg=1)
        # 递减提升: 反转顺序后仍是递减
        return ReparamMap(ts=self.ys[::-1], ys=self.ts[::-1], deg=-1)

    def compose(self, inner: 'ReparamMap') -> 'ReparamMap':
        """self ∘ inner, exact on the union of both breakpoint sets."""
        start = inner.ts[0]
        # inner 在一个周期内扫过的区间: [y0, y0 + deg)
        y0 = inner.lift(start)
        lo, hi = sorted((y0, y0 + inner.deg))
        turns = np.arange(np.floor(lo - self.ts[0]) - 1, np.ceil(hi - self.ts[0]) + 2)
        candidates = (self.ts[None, :] + turns[:, None]).ravel()
        candidates = candidates[(candidates > lo) & (candidates < hi)]
        pulled = inner.inverse().lift(candidates)
        # 拉回到 [start, start + 1)
        pulled = pulled - np.floor(pulled - start)
        ts = np.unique(np.concatenate([inner.ts, pulled]))
        ts = _merge_close(ts)
        ys = self.lift(inner.lift(ts))
        return ReparamMap(ts=ts, ys=ys, deg=self.deg * inner.deg)

    def power(self, k: int) -> 'ReparamMap':
        result = ReparamMap.identity()
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = base.compose(result)
        return result

    def sup_distance(self, other: 'ReparamMap', grid: int = 4096) -> float:
        """Sup over a grid of the circle distance between the two maps."""
        t = np.concatenate([np.arange(grid) / grid, self.ts, other.ts])
        delta = np.mod(self.lift(t) - other.lift(t) + 0.5, 1.0) - 0.5
        return float(np.abs(delta).max())

    def index_shift(self, m: int, snap: float = 1e-9):
        """
        Sample permutation realized by the map at resolution m, or None.
        :return: integer array sigma with f(k/m) = sigma[k]/m
        """
        values = self.evaluate(np.arange(m) / m) * m
        nearest = np.rint(values)
        if np.abs(values - nearest).max() > snap * m:
            return None
        return np.mod(nearest.astype(int), m)

    def as_json(self) -> dict:
        return {'deg': self.deg, 'breakpoints': self.breakpoints.tolist()}


def _merge_close(ts, gap=1e-13):
    keep = np.concatenate([[True], np.diff(ts) > gap])
    return ts[keep]
