#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : serializers
# date : 10/18/2026
import math

from django.utils.translation import gettext_lazy as _
from rest_framework import serializers

from common.drf.parsers import parse_json
from common.utils import get_logger
from geometry.curves import AmbientSpace, DiscreteLoopImmersion
from geometry.generators import GENERATORS, generate

logger = get_logger(__name__)


class CurveSerializer(serializers.Serializer):
    """{"ambient_dim": n, "samples": [[x, y, ...], ...]}; immersion checks are left to validate()."""
    ambient_dim = serializers.IntegerField(min_value=1, label=_("Ambient dimension"))
    samples = serializers.ListField(
        child=serializers.ListField(child=serializers.FloatField(), allow_empty=False),
        allow_empty=False, label=_("Samples"),
    )

    def validate(self, attrs):
        dim = attrs['ambient_dim']
        for index, point in enumerate(attrs['samples']):
            if len(point) != dim:
                raise serializers.ValidationError(
                    {'samples': _("Point {} has {} coordinates, expected {}").format(index, len(point), dim)})
            if not all(math.isfinite(x) for x in point):
                raise serializers.ValidationError(
                    {'samples': _("non-finite coordinate at index {}").format(index)})
        return attrs

    def create(self, validated_data):
        return DiscreteLoopImmersion(validated_data['samples'], AmbientSpace(validated_data['ambient_dim']))

    def to_representation(self, instance):
        return {'ambient_dim': instance.dim, 'samples': instance.samples.tolist()}


class GeneratorSpecSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=list(GENERATORS), label=_("Kind"))
    m = serializers.IntegerField(min_value=1, label=_("Samples"))
    k = serializers.IntegerField(min_value=1, required=False)
    p = serializers.IntegerField(min_value=0, required=False)
    q = serializers.IntegerField(min_value=0, required=False)
    word = serializers.CharField(required=False)
    radii = serializers.ListField(child=serializers.FloatField(min_value=0), min_length=2, max_length=2,
                                  required=False)
    radius = serializers.FloatField(min_value=0, required=False)
    a = serializers.FloatField(min_value=0, required=False)
    b = serializers.FloatField(min_value=0, required=False)
    petals = serializers.IntegerField(min_value=1, required=False)
    seed = serializers.IntegerField(min_value=0, required=False)
    modes = serializers.IntegerField(min_value=0, required=False)
    amplitude = serializers.FloatField(min_value=0, required=False)
    dim = serializers.IntegerField(min_value=2, required=False)
    windings = serializers.IntegerField(min_value=1, required=False)
    tube = serializers.FloatField(min_value=0, required=False)

    kind_params = {
        'circle': ['radius'],
        'ellipse': ['a', 'b'],
        'k_fold_circle': ['k', 'radius'],
        'figure_eight': ['p', 'q', 'word', 'radii'],
        'rose': ['petals', 'radius'],
        'fourier': ['seed', 'modes', 'amplitude', 'dim'],
        'torus_loop': ['windings', 'tube'],
    }

    def validate(self, attrs):
        kind = attrs['kind']
        if kind == 'k_fold_circle' and 'k' not in attrs:
            raise serializers.ValidationError({'k': _("k_fold_circle requires k")})
        unused = set(attrs) - {'kind', 'm'} - set(self.kind_params[kind])
        if unused:
            logger.warning(f'{kind} ignores parameters {sorted(unused)}')
        return attrs

    def create(self, validated_data):
        kind = validated_data['kind']
        params = {key: validated_data[key] for key in self.kind_params[kind] if key in validated_data}
        return generate(kind, validated_data['m'], **params)


def load_curve(content) -> DiscreteLoopImmersion:
    serializer = CurveSerializer(data=parse_json(content))
    serializer.is_valid(raise_exception=True)
    return serializer.save()


def curve_as_json(curve: DiscreteLoopImmersion) -> dict:
    return CurveSerializer(curve).data
