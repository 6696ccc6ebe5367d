from symmetry.isotropy import stratum

from common.core.command import BaseCurveCommand


class Command(BaseCurveCommand):
    help = 'Group curves by isotropy order'

    def add_command_arguments(self, parser):
        parser.add_argument('curves', nargs='+', help='curve JSON files; at most one may be - for standard input')

    def run(self, **options):
        paths = options['curves']
        curves = [self.read_curve(path) for path in paths]
        strata = stratum(curves, eps_image=options.get('eps_image'), eps_match=options.get('eps_match'),
                         eps_section=options.get('eps_section'))
        data = {'strata': [
            {'order': order, 'curves': [paths[index] for index in indices]} for order, indices in strata.items()
        ]}
        self.render(data, **options)
