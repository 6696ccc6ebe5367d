from dataclasses import dataclass

from django.core.management import CommandError
from django.test import SimpleTestCase
from rest_framework.exceptions import ParseError

from common.core.config import ToleranceProfile
from common.core.exception import command_exception_handler
from common.decorators import ordered_thread_map
from common.drf.parsers import parse_json
from common.drf.renders import CSVFileRenderer, FixedPrecisionJSONRenderer
from common.drf.renders.json import format_number
from common.exceptions import InvalidToleranceProfile
from common.utils import UnionFind, cyclic_runs, lazyproperty
from server.utils import get_current_command, set_current_command


class ToleranceProfileTest(SimpleTestCase):
    def test_scaled_by_diameter(self):
        profile = ToleranceProfile.for_diameter(2.0)
        self.assertAlmostEqual(profile.eps_image, 2e-3)
        self.assertAlmostEqual(profile.eps_match, 2e-2)
        self.assertEqual(profile.eps_section, 1e-6)

    def test_override(self):
        profile = ToleranceProfile.for_diameter(1.0, eps_match=0.5, eps_image=None)
        self.assertEqual(profile.eps_match, 0.5)
        self.assertAlmostEqual(profile.eps_image, 1e-3)
        self.assertEqual(profile.override(eps_section=1e-3).eps_section, 1e-3)

    def test_invalid(self):
        with self.assertRaises(InvalidToleranceProfile):
            ToleranceProfile(eps_image=-1.0, eps_match=1.0, eps_section=1.0)
        with self.assertRaises(InvalidToleranceProfile):
            ToleranceProfile(eps_image=0.1, eps_match=0.01, eps_section=1.0)


class RendererTest(SimpleTestCase):
    def test_numbers(self):
        self.assertEqual(format_number(0.1, 6), '0.1')
        self.assertEqual(format_number(-0.0, 6), '0')
        self.assertEqual(format_number(float('nan')), 'null')

    def test_json(self):
        content = FixedPrecisionJSONRenderer().render({'a': [1, 2.5], 'b': True, 'c': None})
        self.assertEqual(content, b'{"a": [1, 2.5], "b": true, "c": null}\n')
        self.assertEqual(FixedPrecisionJSONRenderer(indent=2).render({'a': 1}), b'{\n  "a": 1\n}\n')

    def test_csv(self):
        content = CSVFileRenderer().render([{'x': 1, 'y': 0.5, 'z': '=SUM'}])
        self.assertEqual(content, b"x,y,z\n1,0.5,'=SUM\n")

    def test_strict_json(self):
        self.assertEqual(parse_json('{"a": [1, 2]}'), {'a': [1, 2]})
        with self.assertRaises(ParseError):
            parse_json('{"a": NaN}')


class CommandExceptionTest(SimpleTestCase):
    def test_domain_error(self):
        with self.assertLogs('drf_exception', 'ERROR'):
            error = command_exception_handler(InvalidToleranceProfile('eps_image=-1'), 'test')
        self.assertIsInstance(error, CommandError)
        self.assertEqual(error.returncode, 1)
        self.assertIn('[invalid_tolerance_profile]', str(error))

    def test_unexpected_error(self):
        with self.assertLogs('unexpected_exception', 'ERROR'):
            error = command_exception_handler(ValueError('boom'), 'test')
        self.assertEqual(str(error), 'ValueError: boom')

    def test_command_error_passes_through(self):
        original = CommandError('exit', returncode=3)
        self.assertIs(command_exception_handler(original, 'test'), original)


class ThreadMapTest(SimpleTestCase):
    def test_keeps_order(self):
        self.assertEqual(ordered_thread_map(lambda x: x * x, range(20), max_workers=4), [x * x for x in range(20)])

    def test_threads_see_the_command(self):
        set_current_command('isotropy')
        try:
            names = ordered_thread_map(lambda _: get_current_command().name, range(8), max_workers=4)
        finally:
            set_current_command(None)
        self.assertEqual(names, ['isotropy'] * 8)


@dataclass(frozen=True)
class Counted:
    calls: list

    @lazyproperty
    def value(self):
        self.calls.append(1)
        return 42


class UtilsTest(SimpleTestCase):
    def test_cyclic_runs(self):
        self.assertEqual(cyclic_runs([0, 1, 5, 9], 10), [(5, 1), (9, 3)])
        self.assertEqual(cyclic_runs([], 10), [])
        self.assertEqual(cyclic_runs(range(10), 10), [(0, 10)])

    def test_union_find(self):
        finder = UnionFind(4)
        finder.join(0, 1)
        finder.join(2, 3)
        self.assertEqual(finder.root(0), finder.root(1))
        self.assertNotEqual(finder.root(0), finder.root(2))

    def test_lazyproperty_on_frozen_dataclass(self):
        counted = Counted(calls=[])
        self.assertEqual(counted.value, 42)
        self.assertEqual(counted.value, 42)
        self.assertEqual(len(counted.calls), 1)
