from django.core.management.base import BaseCommand, CommandError

from cohomology.local_systems import load_local_system, validate_coherence
from cohomology.reports import RunReport
from orbifolds.atlas import load_atlas
from orbifolds.cli import (HANDLED_ERRORS, SEMANTIC_FAILURE, command_error, max_degree_option,
                           read_complex, write_report)
from orbifolds.complex import load_complex, validate_mu
from orbifolds.derivation import derive_complex
from orbifolds.documents import ATLAS, COMPLEX, LOCAL_SYSTEM, digest, load_document


class Command(BaseCommand):
    help = 'Validate an orbifold complex, chart atlas or local-system document'

    def add_arguments(self, parser):
        parser.add_argument('path', help='JSON document to validate')
        parser.add_argument('--complex', dest='complex_path',
                            help='Complex document a local system refers to')
        parser.add_argument('--max-degree', type=int, help='Degree cap for mu completeness and coherence')

    def handle(self, *args, **options):
        max_degree = max_degree_option(options)
        try:
            data, raw, kind = load_document(options['path'])
            report = RunReport('validate_document', digest(raw), {'kind': kind, 'max-degree': max_degree})
            if kind == COMPLEX:
                self.check_complex(report, data, max_degree)
            elif kind == ATLAS:
                self.check_atlas(report, data)
            elif kind == LOCAL_SYSTEM:
                self.check_local_system(report, data, raw, max_degree, options.get('complex_path'))
        except HANDLED_ERRORS as e:
            raise command_error(e, self.stdout)

        write_report(self, report)
        if report.validation:
            raise CommandError(f'{kind} document has {len(report.validation)} violations',
                               returncode=SEMANTIC_FAILURE)
        self.stdout.write(self.style.SUCCESS(f'{options["path"]} is a valid {kind} document'))

    def check_complex(self, report, data, max_degree):
        complex_ = load_complex(data, max_degree=max_degree)
        mu_report = validate_mu(complex_)
        report.lines.append(f'top simplices: {len(complex_.top_simplices)}')
        report.lines.append(f'intersections: {len(complex_.intersections)}')
        report.lines.append(f'mu tables: {len(complex_.mu_tables)}')
        report.lines.append(f'mu checks: {mu_report.checks}')
        report.validation.extend(mu_report.lines())

    def check_atlas(self, report, data):
        atlas = load_atlas(data)
        complex_ = derive_complex(atlas)
        mu_report = validate_mu(complex_)
        report.lines.append(f'charts: {len(atlas.charts)}')
        report.lines.append(f'embeddings: {len(atlas.embeddings)}')
        report.lines.append(f'derived mu tables: {len(complex_.mu_tables)}')
        report.lines.append(f'mu checks: {mu_report.checks}')
        report.validation.extend(mu_report.lines())

    def check_local_system(self, report, data, raw, max_degree, complex_path):
        if not complex_path:
            raise CommandError('a local-system document needs --complex', returncode=SEMANTIC_FAILURE)
        complex_, _, complex_raw = read_complex(complex_path, max_degree=max_degree)
        report.input_digest = digest(raw, complex_raw)
        system = load_local_system(data, complex_)
        coherence = validate_coherence(system, complex_, max_degree)
        report.lines.append(f'module: {system.module}')
        report.lines.append(f'non-identity twists: {len(system.non_identity())}')
        report.lines.append(f'2-simplices checked: {coherence.checked}')
        report.validation.extend(coherence.lines())
