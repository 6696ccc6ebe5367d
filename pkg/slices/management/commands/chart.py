from django.core.management import CommandError

from geometry.serializers import curve_as_json
from slices.chart import chart_phi, tau_push
from slices.frames import normal_frame
from slices.serializers import SectionSerializer, load_section
from slices.tube import tube_profile

from common.core.command import BaseCurveCommand


class Command(BaseCurveCommand):
    help = 'Slice chart coordinates of a curve near a base curve, or the curve of a section with --push'

    def add_command_arguments(self, parser):
        parser.add_argument('base', help='base curve JSON file, or - for standard input')
        parser.add_argument('curve', nargs='?', default=None, help='curve JSON file in the tube of the base curve')
        parser.add_argument('--push', default=None, metavar='SECTION',
                            help='section JSON file; print the curve base + section instead')

    def run(self, **options):
        if (options['curve'] is None) == (options['push'] is None):
            raise CommandError('exactly one of curve and --push is required', returncode=1)
        base = self.read_curve(options['base'])
        tol = self.tolerance(base, **options)
        frame = normal_frame(base)
        tube = tube_profile(base, tol)
        if options['push']:
            section = load_section(self.read_bytes(options['push']), frame)
            self.render(curve_as_json(tau_push(section, tube)), **options)
            return
        point = chart_phi(base, self.read_curve(options['curve']), frame=frame, tube=tube)
        self.render(SectionSerializer(point.section, context={'base': options['base']}).data, **options)
