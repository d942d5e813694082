from django.core.management.base import BaseCommand

from cohomology.reports import recent_runs


class Command(BaseCommand):
    help = 'List stored runs, newest first'

    def add_arguments(self, parser):
        parser.add_argument('--command', dest='run_command', help='Only runs of this command')
        parser.add_argument('--limit', type=int, default=20, help='How many runs to show')

    def handle(self, *args, **options):
        runs = recent_runs(options.get('run_command'), options['limit'])
        if not runs:
            self.stdout.write('No stored runs')
            return
        for run in runs:
            summary = '; '.join(line for line in run.report.get('lines', []) if line.startswith('H^'))
            self.stdout.write(f'{run.pk} {run.created_at:%Y-%m-%d %H:%M:%S} {run.command} '
                              f'{run.input_digest[:12]} {summary}'.rstrip())
        self.stdout.write(self.style.SUCCESS(f'{len(runs)} runs'))
