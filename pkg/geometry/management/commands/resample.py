from geometry.resample import arclength_reparam
from geometry.serializers import curve_as_json

from common.core.command import BaseCurveCommand


class Command(BaseCurveCommand):
    help = 'Resample a curve at equal arclength spacing'

    def add_command_arguments(self, parser):
        parser.add_argument('curve', help='curve JSON file, or - for standard input')
        parser.add_argument('--m', type=int, default=None, help='new sample count (default: unchanged)')
        parser.add_argument('--with-map', action='store_true', default=False,
                            help='also emit the map from the new to the old parameter')

    def run(self, **options):
        curve = self.read_curve(options['curve'])
        resampled, h = arclength_reparam(curve, options['m'] or curve.m)
        data = curve_as_json(resampled)
        if options['with_map']:
            data = {'curve': data, 'reparam': h.as_json()}
        self.render(data, **options)
