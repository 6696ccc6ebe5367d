#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : unionfind
# date : 10/18/2026


class UnionFind(object):
    """按高度合并的并查集, 节点为 0..n-1"""

    def __init__(self, n: int):
        self.parents: list[int] = list(range(n))
        self.heights: list[int] = [1] * n

    def join(self, v1: int, v2: int):
        r1 = self.root(v1)
        r2 = self.root(v2)
        if r1 == r2:
            return
        h1 = self.heights[r1]
        h2 = self.heights[r2]
        if h1 <= h2:
            self.parents[r1] = r2
            self.heights[r2] = max(h2, h1 + 1)
        else:
            self.parents[r2] = r1
            self.heights[r1] = max(h1, h2 + 1)

    def root(self, v: int) -> int:
        while self.parents[v] != v:
            self.parents[v] = self.parents[self.parents[v]]
            v = self.parents[v]
        return v

    def groups(self) -> list[list[int]]:
        """连通分量, 分量内升序, 分量之间按最小元素排序"""
        members: dict[int, list[int]] = {}
        for v in range(len(self.parents)):
            members.setdefault(self.root(v), []).append(v)
        return sorted(members.values(), key=lambda group: group[0])
