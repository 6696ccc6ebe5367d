from geometry.curves import validate

from common.core.command import BaseCurveCommand


class Command(BaseCurveCommand):
    help = 'Check that a curve file is a valid discrete immersion'

    def add_command_arguments(self, parser):
        parser.add_argument('curve', help='curve JSON file, or - for standard input')

    def run(self, **options):
        curve = self.read_curve(options['curve'])
        report = validate(curve)
        self.render({'valid': report.is_valid, 'm': curve.m, 'violations': report.violations}, **options)
