#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : serializers
# date : 10/18/2026
import math

from django.utils.translation import gettext_lazy as _
from rest_framework import serializers

from common.drf.parsers import parse_json
from slices.frames import NormalSection


class SectionSerializer(serializers.Serializer):
    """
    {"base": curve file reference, "coeffs": [[c_1, ..., c_{n-1}], ...]}
    context['frame'] is the normal frame of the base curve; context['base'] the reference written out
    """
    base = serializers.CharField(label=_("Base curve"))
    coeffs = serializers.ListField(
        child=serializers.ListField(child=serializers.FloatField(), allow_empty=False),
        allow_empty=False, label=_("Coefficients"),
    )

    def validate(self, attrs):
        frame = self.context['frame']
        coeffs = attrs['coeffs']
        if len(coeffs) != frame.m:
            raise serializers.ValidationError(
                {'coeffs': _("{} coefficient rows for a base curve of {} samples").format(len(coeffs), frame.m)})
        for index, row in enumerate(coeffs):
            if len(row) != frame.codim:
                raise serializers.ValidationError(
                    {'coeffs': _("Row {} has {} coefficients, expected {}").format(index, len(row), frame.codim)})
            if not all(math.isfinite(x) for x in row):
                raise serializers.ValidationError({'coeffs': _("non-finite coefficient in row {}").format(index)})
        return attrs

    def create(self, validated_data):
        return NormalSection(self.context['frame'], validated_data['coeffs'])

    def to_representation(self, instance):
        return {'base': self.context.get('base', '-'), 'coeffs': instance.coeffs.tolist()}


class SplitSerializer(serializers.Serializer):
    section = serializers.SerializerMethodField()
    reparam = serializers.SerializerMethodField()
    residual = serializers.FloatField()
    start = serializers.IntegerField()

    def get_section(self, obj):
        return SectionSerializer(obj.section, context=self.context).data

    def get_reparam(self, obj):
        return obj.reparam.as_json()


class WallSummarySerializer(serializers.Serializer):
    power = serializers.IntegerField()
    order = serializers.IntegerField()
    projector_rank = serializers.IntegerField()
    witness_dimension = serializers.IntegerField()
    shares_fix_with = serializers.ListField(child=serializers.IntegerField())


class DiagramReportSerializer(serializers.Serializer):
    order = serializers.IntegerField()
    walls = WallSummarySerializer(many=True)
    segments = serializers.IntegerField()
    clear_segments = serializers.IntegerField()
    one_chamber = serializers.BooleanField()


def load_section(content, frame) -> NormalSection:
    serializer = SectionSerializer(data=parse_json(content), context={'frame': frame})
    serializer.is_valid(raise_exception=True)
    return serializer.save()
