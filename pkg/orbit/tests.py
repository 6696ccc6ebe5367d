import io
import json
import os
import tempfile
import time

import numpy as np
from django.core.management import call_command, CommandError
from django.test import SimpleTestCase
from hypothesis import given, settings

from common.core.config import ToleranceProfile
from geometry.curves import DiscreteLoopImmersion
from geometry.generators import circle, ellipse, figure_eight, fourier, k_fold_circle, reparametrize
from geometry.serializers import curve_as_json
from geometry.strategies import fourier_curves, monotone_maps, random_monotone_map, smooth_maps
from orbit.certificates import CertificateKind, MatchSeed, ObstructionCase, ObstructionRecord, VerdictStatus
from orbit.exceptions import InvalidReparam
from orbit.matching import (
    decide_orbit_equivalence, enumerate_seeds, extend_match, image_separation, multiplicity_separation,
    verify_reparam,
)
from orbit.reparam import ReparamMap


def circle_gap(a, b):
    return np.abs(np.mod(np.asarray(a) - np.asarray(b) + 0.5, 1.0) - 0.5)


def rotated(curve, degrees):
    angle = np.deg2rad(degrees)
    rotation = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
    return DiscreteLoopImmersion(curve.samples @ rotation.T)


class ReparamMapTest(SimpleTestCase):
    def test_identity_and_rotation(self):
        t = np.linspace(-1.45, 2.45, 40)
        np.testing.assert_allclose(ReparamMap.identity()(t), np.mod(t, 1.0), atol=1e-15)
        np.testing.assert_allclose(ReparamMap.rotation(0.3)(t), np.mod(t + 0.3, 1.0), atol=1e-14)

    def test_reflection_is_decreasing(self):
        f = ReparamMap.reflection(0.2)
        self.assertEqual(f.deg, -1)
        self.assertAlmostEqual(float(f(0.05)), 0.15, places=14)
        self.assertAlmostEqual(float(f.lift(1.05) - f.lift(0.05)), -1.0, places=14)

    def test_inverse_and_compose(self):
        f = ReparamMap.smooth(amplitude=0.5, mode=2, phase=0.3, offset=0.1, n=256)
        self.assertLess(f.compose(f.inverse()).sup_distance(ReparamMap.identity()), 1e-12)
        self.assertLess(f.inverse().compose(f).sup_distance(ReparamMap.identity()), 1e-12)
        g = ReparamMap.reflection(0.4)
        h = g.compose(f)
        self.assertEqual(h.deg, -1)
        t = np.linspace(0, 1, 97)
        self.assertLess(circle_gap(h(t), g(f(t))).max(), 1e-12)

    def test_power(self):
        r = ReparamMap.rotation(1 / 3)
        self.assertLess(r.power(3).sup_distance(ReparamMap.identity()), 1e-12)
        self.assertLess(r.power(-1).sup_distance(ReparamMap.rotation(2 / 3)), 1e-12)

    def test_index_shift(self):
        np.testing.assert_array_equal(ReparamMap.rotation(0.25).index_shift(8), [2, 3, 4, 5, 6, 7, 0, 1])
        self.assertIsNone(ReparamMap.rotation(0.1).index_shift(8))

    def test_rejects_non_monotone(self):
        with self.assertRaises(InvalidReparam):
            ReparamMap(ts=[0.0, 0.5], ys=[0.0, -0.1], deg=1)
        with self.assertRaises(InvalidReparam):
            ReparamMap(ts=[0.0], ys=[0.0], deg=2)

    @settings(max_examples=20, deadline=None)
    @given(monotone_maps(), monotone_maps(deg=-1))
    def test_group_operations(self, f, g):
        t = np.linspace(0, 1, 301)
        self.assertLess(circle_gap(g.compose(f)(t), g(f(t))).max(), 1e-10)
        self.assertLess(g.compose(g.inverse()).sup_distance(ReparamMap.identity()), 1e-10)


class ImageSeparationTest(SimpleTestCase):
    def test_rotated_circle_has_same_image(self):
        curve = circle(100)
        self.assertIsNone(image_separation(curve, rotated(curve, 30), 0.02))

    def test_circle_and_ellipse(self):
        certificate = image_separation(circle(200), ellipse(200), 0.04)
        self.assertEqual(certificate.kind, CertificateKind.IMAGE_MISMATCH)
        self.assertEqual(certificate.curve, 2)
        np.testing.assert_allclose(certificate.witness, [2.0, 0.0], atol=1e-12)
        self.assertAlmostEqual(certificate.distance, 1.0, places=12)

    def test_witness_is_far_from_other_trace(self):
        c1, c2 = circle(200), ellipse(200)
        certificate = image_separation(c1, c2, 0.04)
        # 对所有边逐一求距离
        other = c1 if certificate.curve == 2 else c2
        dist, _ = other.segment_distances(certificate.witness)
        self.assertGreater(dist.min(), 0.04)

    def test_circle_and_doubled_circle(self):
        self.assertIsNone(image_separation(circle(100), k_fold_circle(200, 2), 0.02))


class MultiplicitySeparationTest(SimpleTestCase):
    def test_circle_and_doubled_circle(self):
        certificate = multiplicity_separation(circle(100), k_fold_circle(200, 2), 0.002, 0.02)
        self.assertEqual(certificate.kind, CertificateKind.MULTIPLICITY_MISMATCH)
        self.assertEqual((certificate.delta_1, certificate.delta_2), (1, 2))

    def test_reparametrized_eight(self):
        curve = figure_eight(120)
        self.assertIsNone(multiplicity_separation(curve, curve.shifted(17), 0.004, 0.04))

    def test_swapped_circle_counts(self):
        certificate = multiplicity_separation(figure_eight(300, 3, 2), figure_eight(300, 2, 3), 0.004, 0.04)
        self.assertEqual(certificate.kind, CertificateKind.MULTIPLICITY_MISMATCH)
        self.assertEqual((certificate.delta_1, certificate.delta_2), (3, 2))


class SeedTest(SimpleTestCase):
    def test_circle(self):
        curve = circle(100)
        seeds = enumerate_seeds(curve, curve)
        self.assertEqual([seed.orientation for seed in seeds], [1, -1])

    def test_doubled_circle(self):
        curve = k_fold_circle(200, 2)
        seeds = enumerate_seeds(curve, curve)
        self.assertEqual(len(seeds), 4)
        self.assertEqual([seed.orientation for seed in seeds], [1, -1, 1, -1])
        self.assertLess(seeds[0].start_edge, seeds[2].start_edge)

    def test_figure_eight(self):
        curve = figure_eight(120)
        seeds = enumerate_seeds(curve, curve)
        self.assertEqual(len(seeds), 2)
        # 锚点不在结点上
        self.assertNotIn(seeds[0].lambda0, (0, 60))


class ExtendMatchTest(SimpleTestCase):
    def test_wrong_orientation_breaks_off(self):
        curve = circle(100)
        tol = ToleranceProfile.for_curves(curve)
        seed = enumerate_seeds(curve, curve, tol)[1]
        record = extend_match(seed, curve, curve, tol)
        self.assertIsInstance(record, ObstructionRecord)
        self.assertEqual(record.case, ObstructionCase.BRANCH_MISMATCH)

    def test_doubled_against_single_circle(self):
        # 第一条曲线走两圈, 第二条只走一圈: 接缝处提升差两圈
        c1, c2 = k_fold_circle(200, 2), circle(100)
        tol = ToleranceProfile.for_curves(c1, c2)
        seed = MatchSeed(lambda0=0, mu0=0, orientation=1, anchor_param=0.0, target_param=0.0, component=0,
                         start_edge=99)
        record = extend_match(seed, c1, c2, tol)
        self.assertIsInstance(record, ObstructionRecord)
        self.assertEqual(record.case, ObstructionCase.DEGREE_MISMATCH)


class VerifyReparamTest(SimpleTestCase):
    def test_identity(self):
        curve = figure_eight(120)
        self.assertLess(verify_reparam(curve, curve, ReparamMap.identity()), 1e-15)

    def test_wrong_rotation(self):
        c1 = circle(100)
        c2 = c1.shifted(17)
        self.assertLess(verify_reparam(c1, c2, ReparamMap.rotation(-0.17)), 1e-12)
        self.assertAlmostEqual(verify_reparam(c1, c2, ReparamMap.rotation(-0.25)), 2 * np.sin(np.pi * 0.08),
                               places=9)


class DecideTest(SimpleTestCase):
    def assertEquivalent(self, verdict, expected=None, atol=1e-9):
        self.assertEqual(verdict.status, VerdictStatus.EQUIVALENT)
        self.assertIn(verdict.reparam.deg, (1, -1))
        if expected is not None:
            self.assertLess(verdict.reparam.sup_distance(expected), atol)

    def test_same_curve(self):
        curve = fourier(150, seed=2)
        verdict = decide_orbit_equivalence(curve, curve)
        self.assertEquivalent(verdict, ReparamMap.identity())
        self.assertLess(verdict.residual, 1e-12)

    def test_cyclic_shift(self):
        c1 = circle(100)
        verdict = decide_orbit_equivalence(c1, c1.shifted(17))
        self.assertEquivalent(verdict, ReparamMap.rotation(-0.17))
        self.assertLess(verdict.residual, 1e-9)

    def test_reversed_circle(self):
        c1 = circle(100)
        verdict = decide_orbit_equivalence(c1, c1.reversed())
        self.assertEquivalent(verdict, ReparamMap.reflection(-0.01))
        self.assertEqual(verdict.reparam.deg, -1)

    def test_reversed_shifted_three_two_eight(self):
        c1 = figure_eight(300, 3, 2)
        verdict = decide_orbit_equivalence(c1, c1.shifted(41).reversed())
        self.assertEquivalent(verdict, ReparamMap.reflection(40 / 300))
        self.assertLess(verdict.residual, 1e-9)

    def test_doubled_circle_against_itself(self):
        curve = k_fold_circle(200, 2)
        verdict = decide_orbit_equivalence(curve, curve.shifted(30))
        self.assertEquivalent(verdict)
        self.assertEqual(verdict.reparam.deg, 1)
        self.assertLess(verify_reparam(curve, curve.shifted(30), verdict.reparam), 1e-9)

    def test_smooth_reparametrization_is_recovered(self):
        c1 = circle(200)
        f0 = ReparamMap.smooth(amplitude=0.2 * np.pi, mode=1, n=1024)
        c2 = reparametrize(c1, f0)
        verdict = decide_orbit_equivalence(c1, c2)
        self.assertEquivalent(verdict, f0.inverse(), atol=2 / c1.m)
        self.assertLessEqual(verdict.residual, ToleranceProfile.for_curves(c1, c2).eps_match)

    def test_different_sample_counts(self):
        c1 = fourier(120, seed=9)
        c2 = reparametrize(fourier(120, seed=9), ReparamMap.smooth(amplitude=0.3))
        # 密度相差过大, 先重采样再匹配
        c2 = DiscreteLoopImmersion(c2.evaluate(np.arange(1200) / 1200))
        verdict = decide_orbit_equivalence(c1, c2)
        self.assertEquivalent(verdict)
        self.assertLessEqual(verify_reparam(c1, c2, verdict.reparam), ToleranceProfile.for_curves(c1, c2).eps_match)

    def test_circle_and_doubled_circle(self):
        verdict = decide_orbit_equivalence(circle(100), k_fold_circle(200, 2))
        self.assertEqual(verdict.status, VerdictStatus.DISTINCT)
        self.assertEqual(verdict.certificate.kind, CertificateKind.MULTIPLICITY_MISMATCH)

    def test_ellipse_and_circle(self):
        verdict = decide_orbit_equivalence(ellipse(200), circle(200))
        self.assertEqual(verdict.certificate.kind, CertificateKind.IMAGE_MISMATCH)

    def test_same_counts_different_lobe_order(self):
        # 上圆三次下圆两次, 但两个下圆相邻与不相邻
        c1 = figure_eight(300, word='UUULL')
        c2 = figure_eight(300, word='ULULU')
        verdict = decide_orbit_equivalence(c1, c2)
        self.assertEqual(verdict.status, VerdictStatus.DISTINCT)
        self.assertEqual(verdict.certificate.kind, CertificateKind.COMBINATORIAL_OBSTRUCTION)
        records = verdict.certificate.obstructions
        self.assertEqual(len(records), 4)
        self.assertTrue(all(record.case == ObstructionCase.BRANCH_MISMATCH for record in records))

    def test_certificate_kind_is_reparametrization_invariant(self):
        c1, c2 = circle(100), k_fold_circle(200, 2)
        first = decide_orbit_equivalence(c1, c2).certificate.kind
        second = decide_orbit_equivalence(c1.shifted(13), c2.reversed()).certificate.kind
        self.assertEqual(first, second)

    def test_group_consistency(self):
        c1 = fourier(200, seed=7)
        c2 = reparametrize(c1, ReparamMap.smooth(amplitude=0.4, mode=1))
        c3 = reparametrize(c2, ReparamMap.smooth(amplitude=0.3, mode=2, offset=0.25))
        eps_match = ToleranceProfile.for_curves(c1, c2, c3).eps_match
        f = decide_orbit_equivalence(c1, c2).reparam
        g = decide_orbit_equivalence(c2, c3).reparam
        h = decide_orbit_equivalence(c2, c1).reparam
        self.assertLessEqual(verify_reparam(c1, c3, g.compose(f)), 2 * eps_match)
        self.assertLessEqual(verify_reparam(c1, c1, h.compose(f)), 2 * eps_match)

    @settings(max_examples=10, deadline=None)
    @given(fourier_curves(m=200, max_amplitude=0.2), monotone_maps())
    def test_monotone_reparametrizations(self, curve, f0):
        moved = reparametrize(curve, f0)
        verdict = decide_orbit_equivalence(curve, moved)
        self.assertEquivalent(verdict, f0.inverse(), atol=4 / curve.m)
        self.assertLessEqual(verify_reparam(curve, moved, verdict.reparam), verdict.residual + 1e-12)

    @settings(max_examples=10, deadline=None)
    @given(fourier_curves(m=200, max_amplitude=0.2), monotone_maps(deg=-1))
    def test_reversing_reparametrizations(self, curve, f0):
        verdict = decide_orbit_equivalence(curve, reparametrize(curve, f0))
        self.assertEquivalent(verdict)
        self.assertEqual(verdict.reparam.deg, -1)

    @settings(max_examples=10, deadline=None)
    @given(smooth_maps())
    def test_smooth_maps_on_ellipse(self, f0):
        c1 = ellipse(200)
        verdict = decide_orbit_equivalence(c1, reparametrize(c1, f0))
        self.assertEquivalent(verdict, f0.inverse(), atol=2 / c1.m)


class AcceptanceTest(SimpleTestCase):
    def test_hundred_seeded_pairs(self):
        rng = np.random.RandomState(2026)
        started = time.perf_counter()
        for index in range(100):
            curve = fourier(400, seed=index, modes=1 + index % 4, amplitude=0.2)
            f0 = random_monotone_map(rng, int(rng.randint(4, 25)), offset=rng.uniform(0.0, 1.0))
            moved = reparametrize(curve, f0)
            verdict = decide_orbit_equivalence(curve, moved)
            self.assertEqual(verdict.status, VerdictStatus.EQUIVALENT, f'pair {index}')
            self.assertLessEqual(verdict.residual, ToleranceProfile.for_curves(curve, moved).eps_match)
            self.assertLessEqual(verdict.reparam.sup_distance(f0.inverse()), 1e-2, f'pair {index}')
        self.assertLess(time.perf_counter() - started, 60.0)


class CommandTest(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.directory.cleanup()

    def write(self, name, curve):
        path = os.path.join(self.directory.name, name)
        with open(path, 'w') as f:
            json.dump(curve_as_json(curve), f)
        return path

    def test_equivalent(self):
        curve = circle(100)
        out = io.StringIO()
        call_command('equiv', self.write('a.json', curve), self.write('b.json', curve.shifted(17)), stdout=out)
        data = json.loads(out.getvalue())
        self.assertEqual(data['status'], 'equivalent')
        self.assertIsNone(data['certificate'])
        self.assertEqual(data['reparam']['deg'], 1)

    def test_distinct_exit_code(self):
        out = io.StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command('equiv', self.write('a.json', circle(100)), self.write('b.json', k_fold_circle(200, 2)),
                         stdout=out)
        self.assertEqual(ctx.exception.returncode, 3)
        data = json.loads(out.getvalue())
        self.assertEqual(data['status'], 'distinct')
        self.assertEqual(data['certificate']['kind'], 'MultiplicityMismatch')
        self.assertEqual([data['certificate']['delta_1'], data['certificate']['delta_2']], [1, 2])

    def test_stdin_and_file(self):
        curve = figure_eight(120)
        out = io.StringIO()
        call_command('equiv', '-', self.write('b.json', curve.reversed()), stdout=out,
                     stdin=io.StringIO(json.dumps(curve_as_json(curve))))
        self.assertEqual(json.loads(out.getvalue())['reparam']['deg'], -1)
