from django.core.management.base import CommandError

from orbit.matching import decide_orbit_equivalence

from common.core.command import BaseCurveCommand


class Command(BaseCurveCommand):
    help = 'Decide whether two curves differ only by a reparametrization'

    def add_command_arguments(self, parser):
        parser.add_argument('curve1', help='curve JSON file, or - for standard input')
        parser.add_argument('curve2', help='curve JSON file')

    def run(self, **options):
        c1 = self.read_curve(options['curve1'])
        c2 = self.read_curve(options['curve2'])
        verdict = decide_orbit_equivalence(c1, c2, self.tolerance(c1, c2, **options))
        self.render(verdict, **options)
        if not verdict.is_equivalent:
            # 输出已写出, 退出码 3 表示不等价
            raise CommandError(f'distinct: {verdict.certificate.kind}', returncode=3)
