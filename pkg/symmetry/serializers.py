#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : serializers
# date : 10/18/2026

from rest_framework import serializers


class RotationCandidateSerializer(serializers.Serializer):
    order = serializers.IntegerField()
    residual = serializers.FloatField()


class IsotropyTranscriptSerializer(serializers.Serializer):
    sample_count = serializers.IntegerField()
    retries = serializers.IntegerField()
    candidates = RotationCandidateSerializer(many=True)
    identity_orders = serializers.ListField(child=serializers.IntegerField())
    reflection_residual = serializers.FloatField()
    reflection_center = serializers.FloatField()


class IsotropyGroupSerializer(serializers.Serializer):
    order = serializers.IntegerField()
    generator = serializers.SerializerMethodField()
    residual = serializers.FloatField()
    transcript = IsotropyTranscriptSerializer()

    def get_generator(self, obj):
        return obj.generator.as_json() if obj.generator else None


class FreenessReportSerializer(serializers.Serializer):
    order = serializers.IntegerField()
    free = serializers.BooleanField()
    simple_point = serializers.IntegerField(allow_null=True)
    isotropy = IsotropyGroupSerializer(source='group', allow_null=True)


class FactorizationSerializer(serializers.Serializer):
    degree = serializers.IntegerField()
    residual = serializers.FloatField()
    samples = serializers.SerializerMethodField()

    def get_samples(self, obj):
        return obj.primitive.m
