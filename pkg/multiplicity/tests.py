import io
import json

import numpy as np
from django.core.management import call_command
from django.test import SimpleTestCase
from hypothesis import given, settings

from geometry.curves import DiscreteLoopImmersion
from geometry.generators import circle, figure_eight, fourier, k_fold_circle, rose
from geometry.serializers import curve_as_json
from geometry.strategies import fourier_curves
from multiplicity.exceptions import ImageAmbiguity
from multiplicity.graph import check_semicontinuity, delta, image_graph, passage_count
from multiplicity.partition import exhaustion_levels, level_partition


def brute_force_delta(curve, eps):
    """Per-sample branch count from an all-pairs distance scan and breadth-first grouping."""
    samples = curve.samples
    m = curve.m
    distance = np.linalg.norm(samples[:, None, :] - samples[None, :, :], axis=2)
    label = np.full(m, -1)
    current = 0
    for seed in range(m):
        if label[seed] >= 0:
            continue
        queue = [seed]
        label[seed] = current
        while queue:
            i = queue.pop()
            for j in np.flatnonzero(distance[i] <= eps):
                if label[j] < 0:
                    label[j] = current
                    queue.append(j)
        current += 1
    counts = np.zeros(current, dtype=int)
    for k in range(m):
        if label[k - 1] != label[k]:
            counts[label[k]] += 1
    counts[counts == 0] = 1
    return counts[label]


def field(curve, eps):
    graph = image_graph(curve, eps)
    return np.array([graph.cluster_of(k).delta for k in range(curve.m)])


class ImageGraphTest(SimpleTestCase):
    def test_circle(self):
        curve = circle(100)
        graph = image_graph(curve, 0.002)
        dmap = delta(graph)
        self.assertEqual(len(graph), 100)
        self.assertEqual(dmap.multiset(), {1: 100})
        self.assertAlmostEqual(dmap.total_measure, 1.0, places=12)

    def test_figure_eight_node(self):
        curve = figure_eight(120)
        graph = image_graph(curve, 0.004)
        dmap = delta(graph)
        self.assertEqual(dmap.multiset(), {1: 118, 2: 1})
        node = graph.cluster_of(0)
        self.assertEqual(node.delta, 2)
        self.assertEqual(sorted(node.members.tolist()), [0, 60])
        np.testing.assert_array_equal(field(curve, 0.004), brute_force_delta(curve, 0.004))

    def test_three_two_eight(self):
        curve = figure_eight(300, 3, 2)
        graph = image_graph(curve, 0.004)
        self.assertEqual(graph.cluster_of(0).delta, 5)
        self.assertEqual(graph.cluster_of(30).delta, 3)
        self.assertEqual(graph.cluster_of(210).delta, 2)
        self.assertEqual(delta(graph).multiset(), {2: 59, 3: 59, 5: 1})
        np.testing.assert_array_equal(field(curve, 0.004), brute_force_delta(curve, 0.004))

    def test_doubled_circle(self):
        graph = image_graph(k_fold_circle(200, 2), 0.002)
        self.assertEqual(delta(graph).multiset(), {2: 100})
        self.assertAlmostEqual(delta(graph).total_measure, 1.0, places=12)

    def test_rose_center(self):
        curve = rose(240, 3)
        eps = 1e-3 * curve.diameter
        self.assertEqual(image_graph(curve, eps).cluster_of(40).delta, 3)
        np.testing.assert_array_equal(field(curve, eps), brute_force_delta(curve, eps))

    def test_ambiguous_resolution(self):
        # 切点附近上下两支相距 0.0062, 介于 eps 与 2·eps 之间
        with self.assertRaises(ImageAmbiguity):
            image_graph(figure_eight(400, 3, 2), 0.004)

    def test_reparametrization_invariance(self):
        curve = figure_eight(300, 3, 2)
        expected = delta(image_graph(curve, 0.004)).multiset()
        for moved in (curve.shifted(17), curve.reversed(), curve.shifted(-101).reversed()):
            self.assertEqual(delta(image_graph(moved, 0.004)).multiset(), expected)

    def test_passage_count_agrees_with_delta(self):
        curve = figure_eight(300, 3, 2)
        graph = image_graph(curve, 0.004)
        for k in (0, 15, 30, 200, 250):
            self.assertEqual(passage_count(curve, curve.samples[k], 0.004), graph.cluster_of(k).delta)


class SemicontinuityTest(SimpleTestCase):
    def check(self, curve):
        graph = image_graph(curve, 1e-3 * curve.diameter)
        return check_semicontinuity(graph, delta(graph))

    def test_named_families(self):
        for curve in (circle(100), figure_eight(120), figure_eight(300, 3, 2), figure_eight(300, 2, 3),
                      k_fold_circle(300, 3), rose(240, 3)):
            self.assertTrue(self.check(curve).is_empty)

    def test_four_petal_rose_is_ambiguous(self):
        # 四支在中心交叉, 默认 eps_image 下中心附近的簇分不开
        for m in (240, 400, 600):
            curve = rose(m, 4)
            with self.assertRaises(ImageAmbiguity):
                image_graph(curve, 1e-3 * curve.diameter)

    def test_seeded_fourier_corpus(self):
        for seed in range(50):
            curve = fourier(160, seed=seed, modes=1 + seed % 4, amplitude=0.08 * (1 + seed % 5))
            report = self.check(curve)
            self.assertTrue(report.is_empty, f'seed {seed}: {len(report.violations)} violations')

    def test_isolated_dip(self):
        samples = k_fold_circle(200, 2).samples.copy()
        samples[10] *= 1.05
        curve = DiscreteLoopImmersion(samples)
        graph = image_graph(curve, 0.002)
        report = check_semicontinuity(graph, delta(graph))
        self.assertFalse(report.is_empty)
        self.assertIn(graph.labels[10], [violation.cluster for violation in report.violations])

    @settings(max_examples=20, deadline=None)
    @given(fourier_curves(m=160))
    def test_random_loops(self, curve):
        self.assertTrue(self.check(curve).is_empty)


class LevelPartitionTest(SimpleTestCase):
    def partition(self, curve, eps):
        graph = image_graph(curve, eps)
        return graph, level_partition(graph, delta(graph))

    def test_circle(self):
        _, partition = self.partition(circle(100), 0.002)
        self.assertEqual(len(partition.components), 1)
        self.assertEqual(partition.components[0].value, 1)
        self.assertTrue(partition.components[0].has_interior)
        self.assertTrue(partition.dense)

    def test_figure_eight(self):
        graph, partition = self.partition(figure_eight(120), 0.004)
        self.assertEqual(sorted(c.value for c in partition.components), [1, 1, 2])
        node = partition.components[partition.cluster_component[graph.labels[0]]]
        self.assertEqual(node.value, 2)
        self.assertFalse(node.has_interior)
        self.assertEqual(len(partition.interior_indices), 2)
        self.assertTrue(partition.dense)
        self.assertTrue(partition.minimal_open)

    def test_doubled_circle(self):
        _, partition = self.partition(k_fold_circle(200, 2), 0.002)
        self.assertEqual([(c.value, c.has_interior) for c in partition.components], [(2, True)])

    def test_three_two_exhaustion(self):
        graph, partition = self.partition(figure_eight(300, 3, 2), 0.004)
        self.assertEqual(partition.minimal_value, 2)
        self.assertTrue(partition.minimal_open)
        levels = exhaustion_levels(graph, partition)
        self.assertEqual([level.value for level in levels], [2, 3])
        self.assertAlmostEqual(levels[0].cumulative, 60 / 119)
        self.assertAlmostEqual(levels[-1].cumulative, 1.0)

    @settings(max_examples=15, deadline=None)
    @given(fourier_curves(m=160))
    def test_density_on_random_loops(self, curve):
        _, partition = self.partition(curve, 1e-3 * curve.diameter)
        self.assertTrue(partition.dense)


class CommandTest(SimpleTestCase):
    def call(self, *args, **kwargs):
        out = io.StringIO()
        call_command(*args, stdout=out, **kwargs)
        return out.getvalue()

    def test_delta_json(self):
        payload = json.dumps(curve_as_json(figure_eight(120)))
        data = json.loads(self.call('delta', '-', stdin=io.StringIO(payload)))
        self.assertEqual(sorted(cluster['delta'] for cluster in data['clusters'])[-1], 2)
        node = [cluster for cluster in data['clusters'] if cluster['delta'] == 2][0]
        self.assertEqual(node['branches'], [[0, 0], [60, 60]])
        self.assertEqual(data['semicontinuity_violations'], [])

    def test_delta_csv(self):
        payload = json.dumps(curve_as_json(circle(50)))
        lines = self.call('delta', '-', '--csv', stdin=io.StringIO(payload)).strip().splitlines()
        self.assertEqual(lines[0], 'cluster,rep,delta,branches,component')
        self.assertEqual(len(lines), 51)

    def test_partition(self):
        payload = json.dumps(curve_as_json(figure_eight(300, 3, 2)))
        data = json.loads(self.call('partition', '-', stdin=io.StringIO(payload)))
        self.assertTrue(data['dense'])
        self.assertEqual([level['value'] for level in data['exhaustion']], [2, 3])
