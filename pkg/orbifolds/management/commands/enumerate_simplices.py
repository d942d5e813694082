from django.core.management.base import BaseCommand

from cohomology.reports import PhaseTimer, RunReport, save_run
from orbifolds.cli import HANDLED_ERRORS, command_error, max_degree_option, read_complex, write_report
from orbifolds.documents import digest
from orbifolds.simplicial import simplicial_set


class Command(BaseCommand):
    help = 'Count the simplices of S degree by degree and report its connected components'

    def add_arguments(self, parser):
        parser.add_argument('path', help='Orbifold complex document')
        parser.add_argument('--max-degree', type=int, help='Highest degree to count')
        parser.add_argument('--all', action='store_true', help='Count degenerate simplices as well')
        parser.add_argument('--save', action='store_true', help='Store the report in the run ledger')
        parser.add_argument('--timings', action='store_true', help='Print phase timings after the report')

    def handle(self, *args, **options):
        max_degree = max_degree_option(options)
        normalized = not options['all']
        timer = PhaseTimer()
        try:
            with timer.phase('load'):
                complex_, _, raw = read_complex(options['path'])
            sset = simplicial_set(complex_)
            with timer.phase('count'):
                counts = [sset.count(k, normalized=normalized) for k in range(max_degree + 1)]
            with timer.phase('components'):
                components = sset.connected_components()
        except HANDLED_ERRORS as e:
            raise command_error(e, self.stdout)

        flags = {'max-degree': max_degree, 'normalized': normalized}
        report = RunReport('enumerate_simplices', digest(raw), flags, timings=timer.timings)
        for k, count in enumerate(counts):
            report.lines.append(f'S_{k}: {count}')
        report.lines.append(f'components: {len(components)}')
        for component in components:
            report.lines.append(f'  {" ".join(component)}')
        report.data = {'counts': counts, 'components': components}

        write_report(self, report, include_timings=options['timings'])
        if options['save']:
            record = save_run(report)
            self.stdout.write(self.style.SUCCESS(f'Saved run {record.pk}'))
