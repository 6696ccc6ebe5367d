from geometry.serializers import curve_as_json
from symmetry.factorization import primitive_factorization
from symmetry.serializers import FactorizationSerializer

from common.core.command import BaseCurveCommand


class Command(BaseCurveCommand):
    help = 'Primitive loop of a multiply traversed curve'

    def add_command_arguments(self, parser):
        parser.add_argument('curve', help='curve JSON file, or - for standard input')
        parser.add_argument('--with-report', action='store_true', default=False,
                            help='wrap the primitive curve with its degree and reconstruction residual')

    def run(self, **options):
        curve = self.read_curve(options['curve'])
        factorization = primitive_factorization(curve, self.tolerance(curve, **options))
        data = curve_as_json(factorization.primitive)
        if options['with_report']:
            data = {'curve': data, **FactorizationSerializer(factorization).data}
        self.render(data, **options)
