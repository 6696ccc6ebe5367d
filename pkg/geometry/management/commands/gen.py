from geometry.serializers import GeneratorSpecSerializer, curve_as_json

from common.core.command import BaseCurveCommand


class Command(BaseCurveCommand):
    help = 'Generate a curve from a named family'

    def add_command_arguments(self, parser):
        parser.add_argument('--kind', required=True)
        parser.add_argument('--m', type=int, required=True)
        for name in ('k', 'p', 'q', 'petals', 'seed', 'modes', 'dim', 'windings'):
            parser.add_argument(f'--{name}', type=int, default=None)
        for name in ('radius', 'a', 'b', 'amplitude', 'tube'):
            parser.add_argument(f'--{name}', type=float, default=None)
        parser.add_argument('--word', default=None, help='lobe order of a figure eight, e.g. ULULU')
        parser.add_argument('--radii', type=float, nargs=2, default=None)

    def run(self, **options):
        fields = GeneratorSpecSerializer().fields
        data = {key: options[key] for key in fields if options.get(key) is not None}
        serializer = GeneratorSpecSerializer(data=data)
        serializer.is_valid(raise_exception=True)
        self.render(curve_as_json(serializer.save()), **options)
