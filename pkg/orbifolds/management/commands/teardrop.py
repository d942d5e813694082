from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from algebra.groups import cyclic_group
from algebra.invariants import ZERO_MODULE
from algebra.rings import parse_ring
from cohomology.engine import check_basis_sizes, cohomology
from cohomology.group_cohomology import group_cohomology
from cohomology.local_systems import CoefficientModule, trivial_system
from cohomology.reports import RunReport
from orbifolds.cli import (HANDLED_ERRORS, SEMANTIC_FAILURE, command_error, max_degree_option,
                           progress_option, write_report)
from orbifolds.complex import load_complex, validate_mu
from orbifolds.documents import digest, write_document
from orbifolds.teardrop import generate_teardrop, nontrivial_mu_values


class Command(BaseCommand):
    help = 'Generate the teardrop orbifold with a cone point of order n'

    def add_arguments(self, parser):
        parser.add_argument('--n', type=int, required=True, help='Order of the cone point (at least 2)')
        parser.add_argument('--out', help='Directory for the complex and atlas documents')
        parser.add_argument('--check', action='store_true',
                            help='Compute the cohomology and compare it with A, 0, A, H^m(C_n; A)')
        parser.add_argument('--max-degree', type=int, help='Degree cap for --check')
        parser.add_argument('--ring', default='Z', help='Coefficient ring for --check: Z, Q or Zmod:m')
        parser.add_argument('--progress', action='store_true', help='Show progress bars')

    def handle(self, *args, **options):
        n = options['n']
        max_degree = max_degree_option(options)
        progress = progress_option(options)
        try:
            fixture = generate_teardrop(n, progress=progress)
            # the written document must stand on its own
            reloaded = load_complex(fixture.complex_document, max_degree=max_degree)
            mu_report = validate_mu(reloaded)
        except HANDLED_ERRORS as e:
            raise command_error(e, self.stdout)

        report = RunReport('teardrop', digest(fixture.complex_document, fixture.atlas_document), {'n': n})
        report.lines.append(f'top simplices: {len(reloaded.top_simplices)}')
        report.lines.append(f'intersections: {len(reloaded.intersections)}')
        report.lines.append(f'mu tables: {len(reloaded.mu_tables)}')
        for key, table in nontrivial_mu_values(fixture.complex):
            shown = f'identity -> {table[0]}' if len(table) == 1 else f'table {list(table)}'
            report.lines.append(f'{key}: {shown}')
        report.validation.extend(mu_report.lines())

        if options.get('out'):
            out = Path(options['out'])
            write_document(out / f'teardrop-{n}.complex.json', fixture.complex_document)
            write_document(out / f'teardrop-{n}.atlas.json', fixture.atlas_document)
            report.lines.append(f'wrote teardrop-{n}.complex.json and teardrop-{n}.atlas.json')

        mismatches = []
        if options['check'] and mu_report.ok:
            mismatches = self.check_theorem(report, reloaded, n, max_degree, options['ring'], progress)

        write_report(self, report)
        if report.validation:
            raise CommandError(f'generated teardrop fails mu validation ({len(report.validation)} violations)',
                               returncode=SEMANTIC_FAILURE)
        if mismatches:
            raise CommandError(f'cohomology differs from the expected pattern in degrees '
                               f'{", ".join(str(k) for k in mismatches)}', returncode=SEMANTIC_FAILURE)
        self.stdout.write(self.style.SUCCESS(f'Teardrop of order {n} generated and validated'))

    def check_theorem(self, report, complex_, n, max_degree, ring_spec, progress):
        try:
            module = CoefficientModule(parse_ring(ring_spec))
            check_basis_sizes(complex_, max_degree, module.rank, cap=settings.ORBIFOLD_BASIS_CAP,
                              warn_columns=settings.ORBIFOLD_BASIS_WARN_COLUMNS)
            computed = cohomology(complex_, trivial_system(complex_, module), max_degree, progress=progress)
            group = group_cohomology(cyclic_group(n), module, max_degree)
        except HANDLED_ERRORS as e:
            raise command_error(e, self.stdout)
        report.flags.update({'check': True, 'max-degree': max_degree, 'ring': module.ring.spec})
        # A, 0, A below the cone point, then the isotropy group's cohomology
        expected = ([group[0], ZERO_MODULE, group[0]] + group[3:])[:len(computed)]
        mismatches = []
        ring = module.ring
        for k, (got, want) in enumerate(zip(computed, expected)):
            status = 'ok' if got == want else f'expected {want.render(ring)}'
            report.lines.append(f'H^{k} = {got.render(ring)} ({status})')
            if got != want:
                mismatches.append(k)
        return mismatches
