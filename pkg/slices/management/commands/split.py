from slices.chart import chart_phi
from slices.frames import normal_frame
from slices.serializers import SplitSerializer
from slices.tube import tube_profile

from common.core.command import BaseCurveCommand


class Command(BaseCurveCommand):
    help = 'Split a curve near a base curve into a normal section and a reparametrization'

    def add_command_arguments(self, parser):
        parser.add_argument('base', help='base curve JSON file, or - for standard input')
        parser.add_argument('curve', help='curve JSON file in the tube of the base curve')

    def run(self, **options):
        base = self.read_curve(options['base'])
        curve = self.read_curve(options['curve'])
        tol = self.tolerance(base, curve, **options)
        point = chart_phi(base, curve, frame=normal_frame(base), tube=tube_profile(base, tol))
        self.render(SplitSerializer(point, context={'base': options['base']}).data, **options)
