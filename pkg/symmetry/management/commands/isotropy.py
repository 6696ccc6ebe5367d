from symmetry.isotropy import is_free
from symmetry.serializers import FreenessReportSerializer

from common.core.command import BaseCurveCommand


class Command(BaseCurveCommand):
    help = 'Isotropy group of a curve under reparametrization'

    def add_command_arguments(self, parser):
        parser.add_argument('curve', help='curve JSON file, or - for standard input')

    def run(self, **options):
        curve = self.read_curve(options['curve'])
        report = is_free(curve, self.tolerance(curve, **options))
        self.render(FreenessReportSerializer(report).data, **options)
