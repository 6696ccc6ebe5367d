import io
import json
import os
import tempfile

import numpy as np
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from common.core.config import ToleranceProfile
from geometry.cover import build_arc_cover, refine_cover
from geometry.curves import DiscreteLoopImmersion, require_valid
from geometry.generators import circle, ellipse, figure_eight, fourier, k_fold_circle, reparametrize, torus_loop
from geometry.serializers import curve_as_json
from orbit.reparam import ReparamMap
from slices.chart import chart_change, chart_phi, fixed_section_isotropy, tau_push, transversal_hits
from slices.exceptions import DegenerateTubeProfile, NonMonotoneChart, NotIsotropy, OutsideTube, TubeOverflow
from slices.frames import NormalSection, normal_frame
from slices.pullback import inner_product, pullback_halfdensity, pullback_plain, section_norm
from slices.tube import tube_profile
from slices.walls import diagram_summary, wall_membership, wall_orthogonal_witness, walls_of, witness_rank
from symmetry.isotropy import isotropy_group


def wave(frame, amplitude, mode=1, phase=0.0):
    t = frame.base.params
    column = amplitude * np.cos(2 * np.pi * mode * t + phase)
    return NormalSection(frame, np.column_stack([np.roll(column, 7 * index) for index in range(frame.codim)]))


def noise(frame, seed, scale=0.1):
    return NormalSection(frame, scale * np.random.RandomState(seed).normal(size=(frame.m, frame.codim)))


def first_half_bump(frame):
    coeffs = np.zeros((frame.m, frame.codim))
    half = frame.m // 2
    coeffs[1:half - 1, 0] = np.sin(np.pi * np.arange(1, half - 1) / (half - 1)) ** 2
    return NormalSection(frame, coeffs)


def grid_map(m, seed, offset=0.0):
    """Random circle map with breakpoints at the m sample parameters and slopes in [0.5, 2]."""
    steps = np.random.RandomState(seed).uniform(0.7, 1.75, size=m)
    ys = offset + np.concatenate([[0.0], np.cumsum(steps)[:-1]]) / steps.sum()
    return ReparamMap(ts=np.arange(m) / m, ys=ys)


class NormalFrameTest(SimpleTestCase):
    def test_circle_normals_point_outward(self):
        curve = circle(100)
        frame = normal_frame(curve)
        np.testing.assert_allclose(frame.frames[:, 0, :], curve.samples, atol=1e-12)
        self.assertIsNone(frame.seam)

    def test_figure_eight_is_continuous(self):
        frame = normal_frame(figure_eight(120))
        self.assertLess(frame.tangent_defect(), 1e-10)
        self.assertLess(frame.orthonormal_defect(), 1e-10)
        alignment = np.einsum('kan,kan->ka', frame.frames, np.roll(frame.frames, -1, axis=0))
        self.assertGreater(alignment.min(), 0.0)

    def test_space_loops(self):
        for curve in (torus_loop(400, windings=3), fourier(300, seed=1, dim=3), fourier(200, seed=2, dim=4)):
            frame = normal_frame(curve)
            self.assertEqual(frame.codim, curve.dim - 1)
            self.assertLess(frame.tangent_defect(), 1e-10)
            self.assertLess(frame.orthonormal_defect(), 1e-10)
            self.assertIsNone(frame.seam)
            following = frame.next_frames()
            alignment = np.einsum('kan,kbn->kab', frame.frames, following)
            self.assertGreater(np.einsum('kaa->ka', alignment).min(), 0.5)

    def test_deterministic(self):
        curve = torus_loop(200)
        np.testing.assert_array_equal(normal_frame(curve).frames, normal_frame(curve).frames)


class TubeProfileTest(SimpleTestCase):
    def test_circle(self):
        np.testing.assert_allclose(tube_profile(circle(200)).rho, 1.0, atol=1e-9)

    def test_repeated_passes_do_not_pinch(self):
        np.testing.assert_allclose(tube_profile(k_fold_circle(200, 2)).rho, 1.0, atol=1e-9)

    def test_figure_eight_narrows_at_the_node(self):
        curve = figure_eight(120)
        rho = tube_profile(curve).rho
        self.assertAlmostEqual(rho[30], 1.0, places=9)
        self.assertAlmostEqual(rho[1], 0.5 * np.linalg.norm(curve.samples[1] - curve.samples[61]), places=12)
        self.assertLess(rho.min(), 0.01)
        self.assertLess(rho[0], rho[15])

    def test_flat_oval_is_degenerate(self):
        with self.assertRaises(DegenerateTubeProfile):
            tube_profile(ellipse(200, a=1.0, b=1e-8))


class TauPushTest(SimpleTestCase):
    def test_zero_section(self):
        curve = fourier(120, seed=4)
        pushed = tau_push(NormalSection.zero(normal_frame(curve)))
        np.testing.assert_array_equal(pushed.samples, curve.samples)

    def test_circle_grows(self):
        frame = normal_frame(circle(200))
        pushed = tau_push(NormalSection(frame, np.full(200, 0.1)))
        np.testing.assert_allclose(np.linalg.norm(pushed.samples, axis=1), 1.1, atol=1e-12)

    def test_figure_eight_stays_immersed(self):
        curve = figure_eight(120)
        frame = normal_frame(curve)
        tube = tube_profile(curve)
        section = noise(frame, seed=3)
        section = section.scaled(0.3 * tube.min_rho / section.sup_norm)
        pushed = tau_push(section, tube)
        require_valid(pushed)
        np.testing.assert_array_equal(pushed.samples, curve.samples + section.vectors)

    def test_overflow(self):
        frame = normal_frame(circle(100))
        with self.assertRaises(TubeOverflow):
            tau_push(NormalSection(frame, np.full(100, 1.0)))


class ChartTest(SimpleTestCase):
    def test_base_point(self):
        curve = fourier(300, seed=3, amplitude=0.2)
        point = chart_phi(curve, curve)
        self.assertLess(point.section.sup_norm, 1e-10)
        self.assertLess(point.reparam.sup_distance(ReparamMap.identity()), 1e-10)

    def test_round_trip_without_reparametrization(self):
        for curve in (fourier(300, seed=3, amplitude=0.2), torus_loop(300)):
            frame = normal_frame(curve)
            tube = tube_profile(curve)
            section = wave(frame, 0.3 * tube.min_rho, mode=2)
            point = chart_phi(curve, tau_push(section, tube), frame=frame, tube=tube)
            self.assertLess(point.section.distance(section), 1e-8)
            self.assertLess(point.reparam.sup_distance(ReparamMap.identity()), 1e-9)
            self.assertLess(point.residual, 1e-9)

    def test_round_trip_with_reparametrization(self):
        curve = circle(1000)
        frame = normal_frame(curve)
        tube = tube_profile(curve)
        section = wave(frame, 0.02)
        g = ReparamMap.smooth(amplitude=0.5, mode=1, offset=0.3, n=1000)
        self.assertGreaterEqual(g.slopes().min(), 0.5 - 1e-9)
        j = reparametrize(tau_push(section, tube), g)
        point = chart_phi(curve, j, frame=frame, tube=tube)
        self.assertLess(point.reparam.sup_distance(g), 1e-6)
        self.assertLess(point.section.distance(section), 1e-6)
        # 分裂: tau_push(s)∘f0 重建 j
        self.assertLess(point.residual, 1e-6)

    def test_round_trip_at_four_hundred_samples(self):
        cases = [
            (circle(400), ReparamMap.smooth(amplitude=0.5, mode=1, offset=0.3, n=400)),
            (fourier(400, seed=3, amplitude=0.2), grid_map(400, seed=1, offset=0.1)),
            (torus_loop(400), grid_map(400, seed=2, offset=0.7)),
        ]
        for curve, g in cases:
            frame = normal_frame(curve)
            tube = tube_profile(curve)
            section = wave(frame, 0.3 * tube.min_rho, mode=2)
            slopes = g.slopes()
            self.assertGreaterEqual(slopes.min(), 0.5 - 1e-9)
            self.assertLessEqual(slopes.max(), 2.0 + 1e-9)
            j = reparametrize(tau_push(section, tube), g)
            point = chart_phi(curve, j, frame=frame, tube=tube)
            self.assertLessEqual(point.reparam.sup_distance(g), 1e-6)
            self.assertLessEqual(point.section.distance(section), 1e-6)
            self.assertLessEqual(point.residual, 1e-6)

    @settings(max_examples=10, deadline=None)
    @given(st.integers(min_value=0, max_value=2 ** 31 - 1), st.integers(min_value=1, max_value=4),
           st.floats(min_value=0.0, max_value=2 * np.pi), st.floats(min_value=0.0, max_value=0.9))
    def test_splitting_reconstructs_the_loop(self, seed, mode, phase, offset):
        curve = fourier(400, seed=5, amplitude=0.2)
        frame = normal_frame(curve)
        tube = tube_profile(curve)
        section = wave(frame, 0.3 * tube.min_rho, mode=mode, phase=phase)
        j = reparametrize(tau_push(section, tube), grid_map(400, seed, offset))
        point = chart_phi(curve, j, frame=frame, tube=tube)
        rebuilt = reparametrize(tau_push(point.section, tube), point.reparam)
        self.assertLessEqual(np.linalg.norm(rebuilt.samples - j.samples, axis=1).max(), 1e-6)

    def test_outside_tube(self):
        with self.assertRaises(OutsideTube):
            chart_phi(circle(100), circle(100, radius=3.0))

    def test_reversed_curve_is_not_monotone(self):
        with self.assertRaises(NonMonotoneChart):
            chart_phi(circle(100), circle(100).reversed())

    def test_chart_change(self):
        inner = circle(200)
        outer = circle(200, radius=1.05)
        source = NormalSection(normal_frame(inner), np.full(200, 0.02))
        point = chart_change(source, outer)
        np.testing.assert_allclose(point.section.coeffs, -0.03, atol=1e-9)
        self.assertLess(point.reparam.sup_distance(ReparamMap.identity()), 1e-9)


class IsotropyActionTest(SimpleTestCase):
    def setUp(self):
        self.curve = k_fold_circle(200, 2)
        self.frame = normal_frame(self.curve)
        self.half_turn = ReparamMap.rotation(0.5)

    def test_identity(self):
        section = noise(self.frame, seed=1)
        np.testing.assert_allclose(pullback_plain(ReparamMap.identity(), section).coeffs, section.coeffs, atol=1e-12)
        np.testing.assert_allclose(pullback_halfdensity(ReparamMap.identity(), section).coeffs, section.coeffs,
                                   atol=1e-12)

    def test_half_turn_moves_support(self):
        section = first_half_bump(self.frame)
        pulled = pullback_plain(self.half_turn, section)
        self.assertEqual(np.abs(pulled.coeffs[:100]).max(), 0.0)
        np.testing.assert_allclose(pulled.coeffs[100:], section.coeffs[:100], atol=1e-12)

    def test_action_axiom(self):
        curve = k_fold_circle(300, 3)
        frame = normal_frame(curve)
        f = ReparamMap.rotation(1 / 3)
        section = noise(frame, seed=2)
        twice = pullback_plain(f, pullback_plain(f, section))
        np.testing.assert_allclose(pullback_plain(f.compose(f), section).coeffs, twice.coeffs, atol=1e-12)

    def test_not_isotropy(self):
        frame = normal_frame(circle(100))
        with self.assertRaises(NotIsotropy):
            pullback_plain(ReparamMap.rotation(0.25), NormalSection.zero(frame))

    def test_half_density_equals_plain_at_arclength(self):
        section = noise(self.frame, seed=5)
        np.testing.assert_allclose(pullback_halfdensity(self.half_turn, section).coeffs,
                                   pullback_plain(self.half_turn, section).coeffs, atol=1e-12)

    def test_equivariance(self):
        for k in (2, 3):
            curve = k_fold_circle(300, k)
            frame = normal_frame(curve)
            tube = tube_profile(curve)
            f = ReparamMap.rotation(1 / k)
            section = wave(frame, 0.2, mode=1)
            left = tau_push(pullback_plain(f, section), tube)
            right = reparametrize(tau_push(section, tube), f)
            np.testing.assert_allclose(left.samples, right.samples, atol=1e-9)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(min_value=0, max_value=2 ** 31 - 1), st.floats(min_value=0.0, max_value=0.4))
    def test_half_density_isometry(self, seed, amplitude):
        # 非等弧长参数, 但 t ↦ t + 1/2 仍是样本平移
        curve = reparametrize(k_fold_circle(400, 2), ReparamMap.smooth(amplitude=amplitude, mode=2))
        frame = normal_frame(curve)
        s1, s2 = noise(frame, seed), noise(frame, seed + 1)
        pulled1 = pullback_halfdensity(self.half_turn, s1)
        pulled2 = pullback_halfdensity(self.half_turn, s2)
        scale = section_norm(s1) * section_norm(s2)
        self.assertLessEqual(abs(inner_product(pulled1, pulled2) - inner_product(s1, s2)), 1e-8 * scale)


class InnerProductTest(SimpleTestCase):
    def test_zero(self):
        frame = normal_frame(fourier(100, seed=1))
        self.assertEqual(inner_product(noise(frame, 1), NormalSection.zero(frame)), 0.0)

    def test_symmetric(self):
        frame = normal_frame(torus_loop(200))
        s1, s2 = noise(frame, 1), noise(frame, 2)
        self.assertEqual(inner_product(s1, s2), inner_product(s2, s1))

    def test_unit_normal_measures_length(self):
        frame = normal_frame(circle(200))
        normal = NormalSection(frame, np.ones(200))
        self.assertAlmostEqual(inner_product(normal, normal), 2 * np.pi, delta=1e-3)


class TransversalTest(SimpleTestCase):
    def setUp(self):
        self.curve = k_fold_circle(200, 2)
        self.frame = normal_frame(self.curve)
        self.group = isotropy_group(self.curve)

    def test_generic_section_hits_twice(self):
        self.assertEqual(len(transversal_hits(wave(self.frame, 0.05, mode=1), self.group)), 2)

    def test_fixed_section_hits_once(self):
        self.assertEqual(len(transversal_hits(wave(self.frame, 0.05, mode=2), self.group)), 1)

    def test_fixed_sections_keep_the_isotropy(self):
        self.assertEqual(fixed_section_isotropy(wave(self.frame, 0.05, mode=2)), 2)
        self.assertEqual(fixed_section_isotropy(wave(self.frame, 0.05, mode=1)), 1)


class WallTest(SimpleTestCase):
    def setUp(self):
        self.curve = k_fold_circle(200, 2)
        self.frame = normal_frame(self.curve)
        self.tol = ToleranceProfile.for_curves(self.curve)
        self.walls = walls_of(isotropy_group(self.curve), self.frame)
        self.wall = self.walls[0]

    def test_single_wall(self):
        self.assertEqual(len(self.walls), 1)
        self.assertEqual(self.wall.order, 2)

    def test_projector(self):
        projector = self.wall.projector
        self.assertLess(np.abs(projector @ projector - projector).max(), 1e-9)
        s1, s2 = noise(self.frame, 1), noise(self.frame, 2)
        gap = inner_product(self.wall.project(s1), s2) - inner_product(s1, self.wall.project(s2))
        self.assertLess(abs(gap), 1e-9 * section_norm(s1) * section_norm(s2))

    def test_membership(self):
        self.assertTrue(wall_membership(self.wall.project(noise(self.frame, 3)), self.wall, self.tol))
        self.assertTrue(wall_membership(NormalSection.zero(self.frame), self.wall, self.tol))
        self.assertFalse(wall_membership(first_half_bump(self.frame), self.wall, self.tol))

    def test_witness(self):
        cover = refine_cover(build_arc_cover(self.curve, self.tol.eps_image), 4)
        witness = wall_orthogonal_witness(self.wall, cover, 0)
        self.assertGreater(witness.sup_norm, 0.5)
        np.testing.assert_allclose(self.wall.pullback(witness).coeffs, -witness.coeffs, atol=1e-12)
        self.assertFalse(wall_membership(witness, self.wall, self.tol))
        for seed in range(50):
            member = self.wall.project(noise(self.frame, seed))
            self.assertLessEqual(abs(inner_product(witness, member)),
                                 1e-10 * section_norm(witness) * section_norm(member))

    def test_witnesses_are_independent(self):
        curve = k_fold_circle(400, 2)
        tol = ToleranceProfile.for_curves(curve)
        wall = walls_of(isotropy_group(curve), normal_frame(curve))[0]
        cover = refine_cover(build_arc_cover(curve, tol.eps_image), 12)
        first_pass = [alpha for alpha, arc in enumerate(cover) if arc.start >= 0 and arc.stop < 200]
        self.assertGreaterEqual(len(first_pass), 10)
        for d in (1, 5, 10):
            witnesses = [wall_orthogonal_witness(wall, cover, alpha) for alpha in first_pass[:d]]
            self.assertEqual(witness_rank(witnesses), d)

    def test_triple_circle_walls_share_the_fixed_space(self):
        curve = k_fold_circle(240, 3)
        walls = walls_of(isotropy_group(curve), normal_frame(curve))
        self.assertEqual([wall.power for wall in walls], [1, 2])
        self.assertLess(np.abs(walls[0].projector - walls[1].projector).max(), 1e-9)


class DiagramTest(SimpleTestCase):
    def test_free_circle(self):
        report = diagram_summary(circle(120))
        self.assertEqual(report.order, 1)
        self.assertEqual(report.walls, [])

    def test_doubled_circle(self):
        report = diagram_summary(k_fold_circle(120, 2))
        self.assertEqual(len(report.walls), 1)
        wall = report.walls[0]
        self.assertEqual(wall.projector_rank, 60)
        self.assertGreaterEqual(wall.witness_dimension, 4)
        self.assertTrue(report.one_chamber)
        self.assertEqual(report.segments, 16)

    def test_triple_circle(self):
        report = diagram_summary(k_fold_circle(120, 3))
        self.assertEqual([(wall.power, wall.order) for wall in report.walls], [(1, 3), (2, 3)])
        self.assertEqual([wall.shares_fix_with for wall in report.walls], [[2], [1]])
        self.assertEqual([wall.projector_rank for wall in report.walls], [40, 40])

    def test_quadruple_circle(self):
        report = diagram_summary(k_fold_circle(120, 4))
        self.assertEqual([wall.order for wall in report.walls], [4, 2, 4])
        self.assertEqual([wall.projector_rank for wall in report.walls], [30, 60, 30])
        self.assertEqual(report.walls[1].shares_fix_with, [])


class CommandTest(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.directory.cleanup()

    def write(self, name, data):
        path = os.path.join(self.directory.name, name)
        with open(path, 'w') as f:
            json.dump(data, f)
        return path

    def call(self, *args, **kwargs):
        out = io.StringIO()
        call_command(*args, stdout=out, **kwargs)
        return out.getvalue()

    def test_chart(self):
        base = self.write('base.json', curve_as_json(circle(100)))
        curve = self.write('curve.json', curve_as_json(circle(100, radius=1.1)))
        data = json.loads(self.call('chart', base, curve))
        self.assertEqual(data['base'], base)
        np.testing.assert_allclose(data['coeffs'], 0.1, atol=1e-9)

    def test_chart_push(self):
        base = self.write('base.json', curve_as_json(circle(100)))
        section = self.write('section.json', {'base': base, 'coeffs': [[0.1]] * 100})
        data = json.loads(self.call('chart', base, '--push', section))
        np.testing.assert_allclose(np.linalg.norm(data['samples'], axis=1), 1.1, atol=1e-12)

    def test_chart_rejects_bad_sections(self):
        base = self.write('base.json', curve_as_json(circle(100)))
        section = self.write('section.json', {'base': base, 'coeffs': [[0.1]] * 99})
        with self.assertRaises(CommandError):
            self.call('chart', base, '--push', section)
        with self.assertRaises(CommandError):
            self.call('chart', base)

    def test_split(self):
        base = circle(200)
        shifted = DiscreteLoopImmersion(np.roll(base.samples, -50, axis=0))
        data = json.loads(self.call('split', self.write('base.json', curve_as_json(base)),
                                    self.write('curve.json', curve_as_json(shifted))))
        f0 = ReparamMap(ts=np.array(data['reparam']['breakpoints'])[:, 0],
                        ys=np.array(data['reparam']['breakpoints'])[:, 1], deg=data['reparam']['deg'])
        self.assertLess(f0.sup_distance(ReparamMap.rotation(0.25)), 1e-9)
        self.assertLess(data['residual'], 1e-9)
        np.testing.assert_allclose(data['section']['coeffs'], 0.0, atol=1e-9)

    def test_split_uses_tolerance_options(self):
        base = self.write('base.json', curve_as_json(circle(200)))
        curve = self.write('curve.json', curve_as_json(circle(200, radius=1.05)))
        data = json.loads(self.call('split', base, curve, '--eps-image', '0.001'))
        np.testing.assert_allclose(data['section']['coeffs'], 0.05, atol=1e-9)
        # eps_image 大于默认 eps_match
        with self.assertRaises(CommandError):
            self.call('split', base, curve, '--eps-image', '0.5')

    def test_walls(self):
        generated = self.call('gen', '--kind', 'k_fold_circle', '--k', '2', '--m', '120')
        first = self.call('walls', '-', stdin=io.StringIO(generated))
        second = self.call('walls', '-', stdin=io.StringIO(generated))
        self.assertEqual(first, second)
        data = json.loads(first)
        self.assertEqual(data['order'], 2)
        self.assertEqual(len(data['walls']), 1)
        self.assertTrue(data['one_chamber'])
