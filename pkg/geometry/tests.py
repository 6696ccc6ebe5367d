import io
import json
from itertools import combinations
from unittest import mock

import numpy as np
from django.core.management import call_command, CommandError
from django.test import SimpleTestCase
from hypothesis import given, settings

from geometry import resample
from geometry.cover import build_arc_cover, cover_violations, refine_cover
from geometry.curves import DiscreteLoopImmersion, validate
from geometry.exceptions import CoverConstructionFailed, GeneratorSpecError, InvalidCurve
from geometry.generators import circle, ellipse, figure_eight, fourier, k_fold_circle, reparametrize, rose, torus_loop
from geometry.resample import arclength_reparam, resample_arclength
from geometry.serializers import curve_as_json, load_curve
from geometry.strategies import fourier_curves, smooth_maps
from orbit.reparam import ReparamMap


def brute_force_embedded(curve, arc, eps):
    members = [k % curve.m for k in range(arc.start, arc.stop + 1)]
    for (a, ka), (b, kb) in combinations(enumerate(members), 2):
        if b - a >= 2 and np.linalg.norm(curve.samples[ka] - curve.samples[kb]) <= eps:
            return False
    return True


class ValidateTest(SimpleTestCase):
    def test_regular_polygon_is_valid(self):
        report = validate(circle(100))
        self.assertTrue(report.is_valid)
        self.assertEqual(report.violations, [])

    def test_repeated_point(self):
        samples = circle(100).samples.copy()
        samples[4] = samples[3]
        report = validate(DiscreteLoopImmersion(samples))
        self.assertIn('zero-length edge at index 3', report.violations)

    def test_sampling_floor(self):
        report = validate(DiscreteLoopImmersion(circle(8).samples[:7]))
        self.assertEqual(report.violations, ['m < 8'])

    def test_non_finite(self):
        samples = circle(10).samples.copy()
        samples[2, 1] = np.nan
        self.assertIn('non-finite coordinate at index 2', validate(DiscreteLoopImmersion(samples)).violations)

    def test_tangent_frame_is_unit(self):
        frame = torus_loop(90).tangent_frame()
        np.testing.assert_allclose(np.linalg.norm(frame.unit_tangents, axis=1), 1.0, atol=1e-12)
        self.assertTrue((frame.edge_lengths > 0).all())


class ResampleTest(SimpleTestCase):
    def test_equispaced_input_is_kept(self):
        curve = circle(100)
        resampled = resample_arclength(curve, 100)
        np.testing.assert_allclose(resampled.samples, curve.samples, atol=1e-9)
        self.assertAlmostEqual(resampled.length, curve.length, delta=1e-12 * curve.length)

    def test_ellipse_chords_are_equal(self):
        resampled = resample_arclength(ellipse(200), 200)
        edges = resampled.edge_lengths
        self.assertLessEqual((edges.max() - edges.min()) / edges.mean(), 1e-9)

    def test_ellipse_length_within_chord_accuracy(self):
        curve = ellipse(200)
        resampled = resample_arclength(curve, 200)
        self.assertLess(abs(resampled.length - curve.length) / curve.length, 1e-3)

    def test_points_stay_on_trace(self):
        curve = ellipse(200)
        resampled = resample_arclength(curve, 150)
        dist, _ = curve.nearest_on_trace(resampled.samples)
        self.assertLess(dist.max(), 1e-12)

    def test_idempotent(self):
        once = resample_arclength(ellipse(200), 120)
        twice = resample_arclength(once, 120)
        np.testing.assert_allclose(twice.samples, once.samples, atol=1e-9)

    def test_map_sends_new_samples_to_old_parameters(self):
        curve = fourier(160, seed=4)
        resampled, h = arclength_reparam(curve, 100)
        np.testing.assert_allclose(curve.evaluate(h(resampled.params)), resampled.samples, atol=1e-12)

    def test_converges_without_warning(self):
        for curve, m_new in ((fourier(400, seed=3), 400), (ellipse(600), 600), (fourier(400, seed=8), 250)):
            with mock.patch.object(resample.logger, 'warning') as warning:
                resampled = resample_arclength(curve, m_new)
            warning.assert_not_called()
            edges = resampled.edge_lengths
            self.assertLessEqual((edges.max() - edges.min()) / edges.mean(), 1e-9)

    def test_below_floor(self):
        with self.assertRaises(InvalidCurve):
            resample_arclength(circle(100), 7)

    @settings(max_examples=15, deadline=None)
    @given(fourier_curves(m=120))
    def test_idempotent_on_random_loops(self, curve):
        once = resample_arclength(curve, 90)
        np.testing.assert_allclose(resample_arclength(once, 90).samples, once.samples, atol=1e-9)


class ArcCoverTest(SimpleTestCase):
    def test_embedded_circle_gets_several_arcs(self):
        curve = circle(100)
        cover = build_arc_cover(curve, 0.01)
        self.assertGreaterEqual(len(cover), 2)
        self.assertTrue(cover.covers_circle())
        self.assertEqual(cover_violations(curve, cover), [])

    def test_figure_eight_arcs_avoid_node_pairs(self):
        curve = figure_eight(120)
        cover = build_arc_cover(curve, 0.01)
        self.assertTrue(cover.covers_circle())
        for arc in cover:
            self.assertTrue(brute_force_embedded(curve, arc, 0.01))
            # 两次经过原点的样本 0 与 60 不在同一弧上
            self.assertFalse(arc.contains(0) and arc.contains(60))

    def test_tolerance_coarser_than_diameter(self):
        curve = circle(100)
        with self.assertRaisesMessage(CoverConstructionFailed, 'cover construction failed'):
            build_arc_cover(curve, 3 * curve.diameter)

    def test_refined_cover_stays_embedded(self):
        curve = figure_eight(120, 1, 1)
        cover = refine_cover(build_arc_cover(curve, 0.01), 3)
        self.assertTrue(cover.covers_circle())
        self.assertEqual(cover_violations(curve, cover), [])

    def test_max_arc(self):
        cover = build_arc_cover(circle(120), 0.01, max_arc=20)
        self.assertTrue(all(arc.length <= 20 for arc in cover))
        self.assertTrue(cover.covers_circle())

    @settings(max_examples=10, deadline=None)
    @given(fourier_curves(m=150))
    def test_random_loops(self, curve):
        cover = build_arc_cover(curve, 1e-3 * curve.diameter)
        self.assertTrue(cover.covers_circle())
        for arc in cover:
            self.assertTrue(brute_force_embedded(curve, arc, 1e-3 * curve.diameter))


class GeneratorTest(SimpleTestCase):
    def test_k_fold_circle_repeats_samples(self):
        curve = k_fold_circle(300, 3)
        np.testing.assert_allclose(curve.samples[:100], curve.samples[100:200], atol=1e-12)

    def test_k_fold_requires_multiple(self):
        with self.assertRaises(GeneratorSpecError):
            k_fold_circle(301, 3)

    def test_figure_eight_lobes(self):
        curve = figure_eight(300, 3, 2)
        self.assertTrue(validate(curve).is_valid)
        self.assertTrue((curve.samples[:180, 1] >= -1e-12).all())
        self.assertTrue((curve.samples[180:, 1] <= 1e-12).all())
        for start in range(0, 300, 60):
            np.testing.assert_allclose(curve.samples[start], [0.0, 0.0], atol=1e-12)

    def test_figure_eight_word(self):
        curve = figure_eight(300, word='ULULU')
        self.assertTrue((curve.samples[60:120, 1] <= 1e-12).all())
        with self.assertRaises(GeneratorSpecError):
            figure_eight(300, word='UXL')

    def test_rose_petals(self):
        self.assertTrue(validate(rose(240, 3)).is_valid)
        self.assertTrue(validate(rose(240, 4)).is_valid)
        with self.assertRaises(GeneratorSpecError):
            rose(240, 2)

    def test_fourier_is_seeded(self):
        np.testing.assert_array_equal(fourier(100, seed=7).samples, fourier(100, seed=7).samples)
        self.assertFalse(np.array_equal(fourier(100, seed=7).samples, fourier(100, seed=8).samples))
        self.assertEqual(fourier(100, seed=1, dim=3).dim, 3)

    @settings(max_examples=10, deadline=None)
    @given(smooth_maps())
    def test_reparametrized_samples_lie_on_trace(self, f):
        curve = ellipse(200)
        moved = reparametrize(curve, f)
        dist, _ = curve.nearest_on_trace(moved.samples)
        self.assertLess(dist.max(), 1e-12)

    def test_identity_reparametrization(self):
        curve = fourier(64, seed=3)
        np.testing.assert_allclose(reparametrize(curve, ReparamMap.identity()).samples, curve.samples, atol=1e-12)


class TraceQueryTest(SimpleTestCase):
    def test_passages_through_node(self):
        curve = figure_eight(300, 3, 2)
        self.assertEqual(curve.passage_count([0.0, 0.0], 0.004), 5)
        self.assertEqual(curve.passage_count([0.0, 2.0], 0.004), 3)
        self.assertEqual(curve.passage_count([0.0, -2.0], 0.004), 2)

    def test_nearest_on_trace(self):
        dist, param = circle(400).nearest_on_trace([[2.0, 0.0], [0.0, 1.5]])
        self.assertAlmostEqual(dist[0], 1.0, places=12)
        self.assertAlmostEqual(param[1], 0.25, places=9)


class CurveFileTest(SimpleTestCase):
    def test_round_trip(self):
        curve = figure_eight(100)
        loaded = load_curve(json.dumps(curve_as_json(curve)))
        np.testing.assert_array_equal(loaded.samples, curve.samples)

    def test_rejects_nan_constant(self):
        with self.assertRaises(Exception):
            load_curve('{"ambient_dim": 2, "samples": [[NaN, 0], [1, 0]]}')

    def test_rejects_wrong_dimension(self):
        with self.assertRaises(Exception):
            load_curve('{"ambient_dim": 3, "samples": [[0, 0], [1, 0]]}')


class CommandTest(SimpleTestCase):
    def call(self, *args, **kwargs):
        out = io.StringIO()
        call_command(*args, stdout=out, **kwargs)
        return out.getvalue()

    def test_gen_then_validate(self):
        generated = self.call('gen', '--kind', 'k_fold_circle', '--k', '3', '--m', '300')
        report = json.loads(self.call('validate', '-', stdin=io.StringIO(generated)))
        self.assertEqual(report, {'valid': True, 'm': 300, 'violations': []})

    def test_gen_is_deterministic(self):
        first = self.call('gen', '--kind', 'fourier', '--seed', '5', '--m', '64')
        second = self.call('gen', '--kind', 'fourier', '--seed', '5', '--m', '64')
        self.assertEqual(first, second)

    def test_resample(self):
        generated = self.call('gen', '--kind', 'ellipse', '--m', '200')
        data = json.loads(self.call('resample', '-', '--m', '100', stdin=io.StringIO(generated)))
        self.assertEqual(len(data['samples']), 100)

    def test_bad_generator(self):
        with self.assertRaises(CommandError) as ctx:
            self.call('gen', '--kind', 'k_fold_circle', '--k', '3', '--m', '301')
        self.assertEqual(ctx.exception.returncode, 1)

    def test_malformed_file(self):
        with self.assertRaises(CommandError):
            self.call('validate', '-', stdin=io.StringIO('{"samples": 1}'))
