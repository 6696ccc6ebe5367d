from multiplicity.graph import delta, image_graph
from multiplicity.partition import exhaustion_levels, level_partition
from multiplicity.serializers import ExhaustionLevelSerializer, LevelComponentSerializer, component_rows

from common.core.command import BaseCurveCommand


class Command(BaseCurveCommand):
    help = 'Connected level components of the multiplicity function'
    csv_supported = True

    def add_command_arguments(self, parser):
        parser.add_argument('curve', help='curve JSON file, or - for standard input')

    def run(self, **options):
        curve = self.read_curve(options['curve'])
        tol = self.tolerance(curve, **options)
        graph = image_graph(curve, tol.eps_image)
        partition = level_partition(graph, delta(graph))
        data = {
            'eps_image': tol.eps_image,
            'components': LevelComponentSerializer(partition.components, many=True).data,
            'interior': partition.interior_indices,
            'dense': partition.dense,
            'uncovered': partition.uncovered,
            'minimal_open': partition.minimal_open,
            'exhaustion': ExhaustionLevelSerializer(exhaustion_levels(graph, partition), many=True).data,
        }
        self.render(data, rows=component_rows(partition), **options)
