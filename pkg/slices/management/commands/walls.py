from slices.serializers import DiagramReportSerializer
from slices.walls import diagram_summary

from common.core.command import BaseCurveCommand


class Command(BaseCurveCommand):
    help = 'Walls of the isotropy action on normal sections and the one-chamber check'

    def add_command_arguments(self, parser):
        parser.add_argument('curve', help='curve JSON file, or - for standard input')
        parser.add_argument('--pieces', type=int, default=4, help='split every cover arc into this many test arcs')
        parser.add_argument('--segments', type=int, default=16, help='random segments for the chamber check')
        parser.add_argument('--seed', type=int, default=0)

    def run(self, **options):
        curve = self.read_curve(options['curve'])
        report = diagram_summary(curve, self.tolerance(curve, **options), pieces=options['pieces'],
                                 segments=options['segments'], seed=options['seed'])
        self.render(DiagramReportSerializer(report).data, **options)
