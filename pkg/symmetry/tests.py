import io
import json
import os
import tempfile
import time

import numpy as np
from django.core.management import call_command
from django.test import SimpleTestCase
from hypothesis import given, settings

from common.core.config import ToleranceProfile
from geometry.curves import DiscreteLoopImmersion
from geometry.generators import circle, figure_eight, k_fold_circle, reparametrize
from geometry.serializers import curve_as_json
from geometry.strategies import smooth_maps
from orbit.matching import decide_orbit_equivalence, verify_reparam
from orbit.reparam import ReparamMap
from symmetry.factorization import covering_residual, primitive_factorization
from symmetry.isotropy import find_simple_point, is_free, isotropy_group, stratum


def wound_circle(m, k):
    """Unit circle traversed k times with m samples, m not necessarily a multiple of k."""
    t = np.arange(m) / m
    return DiscreteLoopImmersion(np.column_stack([np.cos(2 * np.pi * k * t), np.sin(2 * np.pi * k * t)]))


def offset_doubled_circle(n):
    """Unit circle traversed twice, the second pass sampled half a step after the first."""
    theta = 2 * np.pi * np.concatenate([np.arange(n), np.arange(n) + 0.5]) / n
    return DiscreteLoopImmersion(np.column_stack([np.cos(theta), np.sin(theta)]))


class SimplePointTest(SimpleTestCase):
    def test_circle(self):
        self.assertIsNotNone(find_simple_point(circle(100), 0.002))

    def test_three_two_eight_has_none(self):
        self.assertIsNone(find_simple_point(figure_eight(600, 3, 2), 0.004))

    def test_doubled_circle_has_none(self):
        self.assertIsNone(find_simple_point(k_fold_circle(200, 2), 0.002))

    def test_passes_that_miss_each_others_samples(self):
        curve = offset_doubled_circle(100)
        eps_image = ToleranceProfile.for_curves(curve).eps_image
        self.assertIsNone(find_simple_point(curve, eps_image))
        self.assertEqual(curve.passage_count(curve.samples[0], eps_image), 2)


class IsotropyTest(SimpleTestCase):
    def test_circle(self):
        group = isotropy_group(circle(600))
        self.assertEqual(group.order, 1)
        self.assertIsNone(group.generator)

    def test_k_fold_circles(self):
        for k in range(2, 7):
            group = isotropy_group(k_fold_circle(600, k))
            self.assertEqual(group.order, k)
            self.assertLess(group.generator.sup_distance(ReparamMap.rotation(1 / k)), 1e-9)
            self.assertLess(group.residual, 1e-9)

    def test_three_two_eight_is_free(self):
        self.assertEqual(isotropy_group(figure_eight(600, 3, 2)).order, 1)

    def test_doubled_figure_eight(self):
        group = isotropy_group(figure_eight(240, word='ULUL'))
        self.assertEqual(group.order, 2)

    def test_reflections_never_qualify(self):
        for curve in (circle(200), k_fold_circle(300, 3), figure_eight(300, 3, 2)):
            transcript = isotropy_group(curve).transcript
            self.assertGreater(transcript.reflection_residual, ToleranceProfile.for_curves(curve).eps_match)

    def test_elements_without_fixed_points(self):
        curve = k_fold_circle(600, 4)
        group = isotropy_group(curve)
        t = np.arange(2400) / 2400
        for element in group.elements[1:]:
            gap = np.abs(np.mod(element(t) - t + 0.5, 1.0) - 0.5)
            self.assertGreater(gap.min(), 0.2)

    def test_generator_power_closes(self):
        curve = k_fold_circle(300, 3)
        group = isotropy_group(curve)
        eps_match = ToleranceProfile.for_curves(curve).eps_match
        self.assertLessEqual(verify_reparam(curve, curve, group.generator.power(3)), 3 * eps_match)
        self.assertLess(group.generator.power(3).sup_distance(ReparamMap.identity()), 1e-9)

    def test_incommensurate_sample_count(self):
        curve = wound_circle(301, 3)
        group = isotropy_group(curve)
        self.assertEqual(group.order, 3)
        self.assertEqual(group.transcript.retries, 1)
        self.assertEqual(group.transcript.sample_count, 303)
        self.assertLessEqual(group.residual, ToleranceProfile.for_curves(curve).eps_match)

    @settings(max_examples=10, deadline=None)
    @given(smooth_maps(max_amplitude=0.3))
    def test_order_is_reparametrization_invariant(self, f):
        self.assertEqual(isotropy_group(reparametrize(k_fold_circle(600, 3), f)).order, 3)


class FreenessTest(SimpleTestCase):
    def test_circle_has_simple_point_witness(self):
        report = is_free(circle(100))
        self.assertTrue(report.free)
        self.assertIsNotNone(report.simple_point)
        self.assertIsNone(report.group)

    def test_doubled_circle(self):
        report = is_free(k_fold_circle(200, 2))
        self.assertFalse(report.free)
        self.assertEqual(report.order, 2)

    def test_three_two_eight_needs_exhaustive_search(self):
        report = is_free(figure_eight(600, 3, 2))
        self.assertTrue(report.free)
        self.assertIsNone(report.simple_point)
        self.assertEqual(report.group.order, 1)
        self.assertTrue(report.group.transcript.candidates)

    def test_offset_doubled_circle(self):
        report = is_free(offset_doubled_circle(100))
        self.assertFalse(report.free)
        self.assertIsNone(report.simple_point)
        self.assertEqual(report.order, 2)

    @settings(max_examples=10, deadline=None)
    @given(smooth_maps(max_amplitude=0.3))
    def test_freeness_is_reparametrization_invariant(self, f):
        report = is_free(reparametrize(k_fold_circle(600, 3), f))
        self.assertFalse(report.free)
        self.assertIsNone(report.simple_point)
        self.assertEqual(report.order, 3)
        self.assertTrue(is_free(reparametrize(circle(200), f)).free)

    def test_stratum(self):
        curves = [circle(120), k_fold_circle(120, 2), k_fold_circle(120, 3), circle(80)]
        self.assertEqual(stratum(curves), {1: [0, 3], 2: [1], 3: [2]})


class FreenessRuntimeTest(SimpleTestCase):
    def timed(self, curve):
        started = time.perf_counter()
        report = is_free(curve)
        self.assertLess(time.perf_counter() - started, 1.0)
        return report

    def test_named_loops_at_six_hundred_samples(self):
        report = self.timed(circle(600))
        self.assertTrue(report.free)
        self.assertIsNotNone(report.simple_point)
        for k in range(2, 7):
            report = self.timed(k_fold_circle(600, k))
            self.assertFalse(report.free)
            self.assertEqual(report.order, k)
        report = self.timed(figure_eight(600, 3, 2))
        self.assertTrue(report.free)
        self.assertIsNone(report.simple_point)


class FactorizationTest(SimpleTestCase):
    def test_circle_is_its_own_primitive(self):
        curve = circle(100)
        factorization = primitive_factorization(curve)
        self.assertEqual(factorization.degree, 1)
        self.assertIs(factorization.primitive, curve)

    def test_k_fold_circles(self):
        for k in range(1, 7):
            curve = k_fold_circle(600, k)
            factorization = primitive_factorization(curve)
            self.assertEqual(factorization.degree, k)
            self.assertEqual(factorization.primitive.m, 600 // k)
            self.assertLessEqual(covering_residual(curve, factorization), ToleranceProfile.for_curves(curve).eps_match)
            self.assertEqual(isotropy_group(factorization.primitive).order, 1)

    def test_doubled_figure_eight(self):
        factorization = primitive_factorization(figure_eight(240, word='ULUL'))
        self.assertEqual(factorization.degree, 2)
        np.testing.assert_allclose(factorization.primitive.samples, figure_eight(120).samples, atol=1e-9)
        self.assertTrue(decide_orbit_equivalence(factorization.primitive, figure_eight(120)).is_equivalent)

    def test_reparametrized_doubled_circle(self):
        curve = reparametrize(k_fold_circle(400, 2), ReparamMap.smooth(amplitude=0.3, mode=1))
        factorization = primitive_factorization(curve)
        self.assertEqual(factorization.degree, 2)
        self.assertLessEqual(factorization.residual, ToleranceProfile.for_curves(curve).eps_match)


class CommandTest(SimpleTestCase):
    def call(self, *args, **kwargs):
        out = io.StringIO()
        call_command(*args, stdout=out, **kwargs)
        return out.getvalue()

    def test_gen_then_isotropy(self):
        generated = self.call('gen', '--kind', 'k_fold_circle', '--k', '3', '--m', '300')
        data = json.loads(self.call('isotropy', '-', stdin=io.StringIO(generated)))
        self.assertEqual(data['order'], 3)
        self.assertFalse(data['free'])
        self.assertEqual(data['isotropy']['generator']['deg'], 1)

    def test_three_two_eight(self):
        generated = self.call('gen', '--kind', 'figure_eight', '--p', '3', '--q', '2', '--m', '600')
        data = json.loads(self.call('isotropy', '-', stdin=io.StringIO(generated)))
        self.assertEqual(data['order'], 1)
        self.assertTrue(data['free'])
        self.assertIsNone(data['simple_point'])

    def test_primitive(self):
        payload = json.dumps(curve_as_json(k_fold_circle(300, 3)))
        data = json.loads(self.call('primitive', '-', stdin=io.StringIO(payload)))
        self.assertEqual(len(data['samples']), 100)
        report = json.loads(self.call('primitive', '-', '--with-report', stdin=io.StringIO(payload)))
        self.assertEqual(report['degree'], 3)

    def test_stratum(self):
        with tempfile.TemporaryDirectory() as directory:
            paths = []
            for name, curve in (('a', circle(120)), ('b', k_fold_circle(120, 2)), ('c', circle(90))):
                path = os.path.join(directory, f'{name}.json')
                with open(path, 'w') as f:
                    json.dump(curve_as_json(curve), f)
                paths.append(path)
            data = json.loads(self.call('stratum', *paths))
        self.assertEqual([entry['order'] for entry in data['strata']], [1, 2])
        self.assertEqual(data['strata'][0]['curves'], [paths[0], paths[2]])

    def test_output_is_deterministic(self):
        payload = json.dumps(curve_as_json(k_fold_circle(120, 2)))
        first = self.call('isotropy', '-', stdin=io.StringIO(payload))
        second = self.call('isotropy', '-', stdin=io.StringIO(payload))
        self.assertEqual(first, second)
