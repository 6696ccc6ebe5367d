#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : serializers
# date : 10/18/2026

from rest_framework import serializers


class ClusterSerializer(serializers.Serializer):
    index = serializers.IntegerField()
    rep = serializers.ListField(child=serializers.FloatField())
    delta = serializers.IntegerField()
    branches = serializers.SerializerMethodField()

    def get_branches(self, obj):
        return [[branch.start, branch.stop] for branch in obj.branches]


class LevelComponentSerializer(serializers.Serializer):
    index = serializers.IntegerField()
    value = serializers.IntegerField()
    has_interior = serializers.BooleanField()
    is_open = serializers.BooleanField()
    clusters = serializers.ListField(child=serializers.IntegerField())
    interior = serializers.ListField(child=serializers.IntegerField())


class ExhaustionLevelSerializer(serializers.Serializer):
    value = serializers.IntegerField()
    components = serializers.ListField(child=serializers.IntegerField())
    covered = serializers.SerializerMethodField()
    cumulative = serializers.FloatField()

    def get_covered(self, obj):
        return len(obj.covered)


class SemicontinuityViolationSerializer(serializers.Serializer):
    cluster = serializers.IntegerField()
    branch = serializers.SerializerMethodField()
    before = serializers.IntegerField()
    after = serializers.IntegerField()

    def get_branch(self, obj):
        return [obj.branch.start, obj.branch.stop]


def cluster_rows(graph, partition=None) -> list:
    rows = []
    for cluster in graph.clusters:
        row = {
            'cluster': cluster.index,
            'rep': cluster.rep,
            'delta': cluster.delta,
            'branches': ' '.join(f'{branch.start}:{branch.stop}' for branch in cluster.branches),
        }
        if partition is not None:
            row['component'] = partition.cluster_component[cluster.index]
        rows.append(row)
    return rows


def component_rows(partition) -> list:
    return [{
        'component': component.index,
        'value': component.value,
        'has_interior': component.has_interior,
        'is_open': component.is_open,
        'clusters': len(component.clusters),
        'interior': len(component.interior),
    } for component in partition.components]
