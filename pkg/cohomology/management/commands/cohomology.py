from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from algebra.homology import complex_cohomology
from algebra.rings import parse_ring
from cohomology.engine import assemble, check_basis_sizes, check_delta_squared
from cohomology.local_systems import CoefficientModule, load_local_system, trivial_system, validate_coherence
from cohomology.reports import PhaseTimer, RunReport, save_run
from orbifolds.cli import (HANDLED_ERRORS, SEMANTIC_FAILURE, command_error, max_degree_option,
                           progress_option, read_complex, write_report)
from orbifolds.documents import LOCAL_SYSTEM, digest, load_document, write_document


class Command(BaseCommand):
    help = 'Compute the cohomology of an orbifold complex with coefficients in a local system'

    def add_arguments(self, parser):
        parser.add_argument('path', help='Orbifold complex document')
        parser.add_argument('--coefficients', default='trivial',
                            help='"trivial" or a local-system document')
        parser.add_argument('--ring', help='Coefficient ring for trivial coefficients: Z, Q or Zmod:m (default Z)')
        parser.add_argument('--rank', type=int, help='Rank of the trivial coefficient module (default 1)')
        parser.add_argument('--max-degree', type=int, help='Compute H^0 .. H^D')
        parser.add_argument('--unnormalized', action='store_true',
                            help='Use every simplex, degenerate ones included')
        parser.add_argument('--json-out', help='Write the report as JSON to this path')
        parser.add_argument('--emit-matrices', help='Write each differential as JSON into this directory')
        parser.add_argument('--save', action='store_true', help='Store the report in the run ledger')
        parser.add_argument('--timings', action='store_true', help='Print phase timings after the report')
        parser.add_argument('--progress', action='store_true', help='Show progress bars')

    def handle(self, *args, **options):
        max_degree = max_degree_option(options)
        progress = progress_option(options)
        normalized = not options['unnormalized']
        timer = PhaseTimer()
        try:
            with timer.phase('load'):
                complex_, _, raw = read_complex(options['path'], max_degree=max_degree)
                system, system_raw = self.coefficients(complex_, options)
            module = system.module
            flags = {'coefficients': 'trivial' if options['coefficients'] == 'trivial' else 'document',
                     'ring': module.ring.spec, 'rank': module.rank, 'max-degree': max_degree,
                     'normalized': normalized}
            report = RunReport('cohomology', digest(raw, system_raw), flags)

            _, warnings = check_basis_sizes(complex_, max_degree, module.rank, normalized,
                                            cap=settings.ORBIFOLD_BASIS_CAP,
                                            warn_columns=settings.ORBIFOLD_BASIS_WARN_COLUMNS)
            for line in warnings:
                self.stderr.write(line)

            with timer.phase('coherence'):
                coherence = validate_coherence(system, complex_, max_degree)
            if not coherence.ok:
                report.validation.extend(coherence.lines())
                write_report(self, report)
                raise CommandError(f'local system is not coherent on {len(coherence.failures)} 2-simplices',
                                   returncode=SEMANTIC_FAILURE)

            with timer.phase('assemble'):
                slices = assemble(complex_, system, max_degree, normalized, progress=progress,
                                  compress_top=not options.get('emit_matrices'))
                check_delta_squared(slices)
            with timer.phase('cohomology'):
                invariants = complex_cohomology([s.delta for s in slices], progress=progress)
        except HANDLED_ERRORS as e:
            raise command_error(e, self.stdout)

        report.add_degrees(module.ring, invariants)
        report.timings = timer.timings
        report.data = {'basis': [s.size for s in slices]}

        if options.get('emit_matrices'):
            out = Path(options['emit_matrices'])
            for s in slices:
                write_document(out / f'delta_{s.degree}.json', s.delta.to_json())
        if options.get('json_out'):
            path = Path(options['json_out'])
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(report.dumps(), encoding='utf-8')

        write_report(self, report, include_timings=options['timings'])
        if options['save']:
            record = save_run(report)
            self.stdout.write(self.style.SUCCESS(f'Saved run {record.pk}'))

    def coefficients(self, complex_, options):
        if options['coefficients'] == 'trivial':
            ring = parse_ring(options.get('ring') or 'Z')
            rank = 1 if options.get('rank') is None else options['rank']
            return trivial_system(complex_, CoefficientModule(ring, rank)), 'trivial'
        data, raw, _ = load_document(options['coefficients'], LOCAL_SYSTEM)
        system = load_local_system(data, complex_)
        module = system.module
        if options.get('ring') and parse_ring(options['ring']) != module.ring:
            raise CommandError(f'--ring {options["ring"]} conflicts with the document ring {module.ring.label}',
                               returncode=SEMANTIC_FAILURE)
        if options.get('rank') is not None and options['rank'] != module.rank:
            raise CommandError(f'--rank {options["rank"]} conflicts with the document rank {module.rank}',
                               returncode=SEMANTIC_FAILURE)
        return system, raw
