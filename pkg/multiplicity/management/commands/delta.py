from multiplicity.graph import check_semicontinuity, delta, image_graph
from multiplicity.partition import level_partition
from multiplicity.serializers import (
    ClusterSerializer, LevelComponentSerializer, SemicontinuityViolationSerializer, cluster_rows,
)

from common.core.command import BaseCurveCommand


class Command(BaseCurveCommand):
    help = 'Multiplicity of every image cluster of a curve'
    csv_supported = True

    def add_command_arguments(self, parser):
        parser.add_argument('curve', help='curve JSON file, or - for standard input')

    def run(self, **options):
        curve = self.read_curve(options['curve'])
        tol = self.tolerance(curve, **options)
        graph = image_graph(curve, tol.eps_image)
        dmap = delta(graph)
        partition = level_partition(graph, dmap)
        report = check_semicontinuity(graph, dmap)
        data = {
            'eps_image': tol.eps_image,
            'clusters': ClusterSerializer(graph.clusters, many=True).data,
            'components': LevelComponentSerializer(partition.components, many=True).data,
            'semicontinuity_violations': SemicontinuityViolationSerializer(report.violations, many=True).data,
        }
        self.render(data, rows=cluster_rows(graph, partition), **options)
