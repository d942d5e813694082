from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from algebra.groups import group_from_spec, group_from_table
from algebra.rings import parse_ring
from cohomology.group_cohomology import compare_with_periodic, group_cohomology
from cohomology.local_systems import CoefficientModule
from cohomology.reports import PhaseTimer, RunReport, save_run
from orbifolds.cli import (HANDLED_ERRORS, SEMANTIC_FAILURE, command_error, max_degree_option,
                           write_report)
from orbifolds.documents import digest, read_document
from orbifolds.exceptions import DocumentFormatError


class Command(BaseCommand):
    help = 'Compute H^k(G; A) for a finite group acting trivially on a free module'

    def add_arguments(self, parser):
        parser.add_argument('--group', required=True,
                            help='cyclic:n, or table:PATH for a JSON file holding {"mul": [[...]]}')
        parser.add_argument('--ring', default='Z', help='Coefficient ring: Z, Q or Zmod:m')
        parser.add_argument('--rank', type=int, default=1, help='Rank of the coefficient module')
        parser.add_argument('--max-degree', type=int, help='Compute H^0 .. H^D')
        parser.add_argument('--normalized', action='store_true',
                            help='Use the normalized bar complex (no identity entries)')
        parser.add_argument('--check-periodic', action='store_true',
                            help='Cross-check a cyclic group against its periodic resolution')
        parser.add_argument('--json-out', help='Write the report as JSON to this path')
        parser.add_argument('--save', action='store_true', help='Store the report in the run ledger')
        parser.add_argument('--timings', action='store_true', help='Print phase timings after the report')

    def handle(self, *args, **options):
        max_degree = max_degree_option(options)
        timer = PhaseTimer()
        mismatches = {}
        try:
            group, source = self.group(options['group'])
            module = CoefficientModule(parse_ring(options['ring']), options['rank'])
            with timer.phase('bar'):
                invariants = group_cohomology(group, module, max_degree, normalized=options['normalized'])
            if options['check_periodic']:
                with timer.phase('periodic'):
                    mismatches = compare_with_periodic(group, module, max_degree, invariants)
        except HANDLED_ERRORS as e:
            raise command_error(e, self.stdout)

        flags = {'group': options['group'] if source is None else 'table', 'ring': module.ring.spec,
                 'rank': module.rank, 'max-degree': max_degree, 'normalized': options['normalized']}
        report = RunReport('group_cohomology', digest(source if source is not None else options['group']),
                           flags, timings=timer.timings)
        report.lines.append(f'group: {group} (order {group.order})')
        report.add_degrees(module.ring, invariants)
        for k, (bar, periodic) in sorted(mismatches.items()):
            report.validation.append(f'H^{k}: bar resolution gives {bar.render(module.ring)}, '
                                     f'periodic resolution gives {periodic.render(module.ring)}')
        if options['check_periodic'] and not mismatches:
            report.lines.append('periodic resolution: agrees')

        if options.get('json_out'):
            path = Path(options['json_out'])
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(report.dumps(), encoding='utf-8')
        write_report(self, report, include_timings=options['timings'])
        if options['save']:
            record = save_run(report)
            self.stdout.write(self.style.SUCCESS(f'Saved run {record.pk}'))
        if mismatches:
            raise CommandError(f'bar and periodic resolutions disagree in {len(mismatches)} degrees',
                               returncode=SEMANTIC_FAILURE)

    def group(self, spec):
        """The group and, for table:PATH, the raw bytes of the file"""
        if not spec.startswith('table:'):
            return group_from_spec(spec), None
        path = spec[len('table:'):]
        data, raw = read_document(path)
        if 'mul' not in data or not isinstance(data['mul'], list):
            raise DocumentFormatError(f'{path}: expected an object with a "mul" table', path='mul')
        return group_from_table(data['mul'], name=data.get('name', Path(path).stem)), raw
