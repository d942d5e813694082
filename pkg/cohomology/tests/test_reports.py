import json

from django.test import SimpleTestCase, TestCase

from algebra.invariants import ModuleInvariants, ZERO_MODULE
from algebra.rings import ZZ, integers_mod
from cohomology.models import RunRecord
from cohomology.reports import PhaseTimer, RunReport, recent_runs, save_run


def sample_report():
    report = RunReport('cohomology', 'ab' * 32, {'ring': 'Z', 'max-degree': 2, 'normalized': True})
    report.add_degrees(ZZ, [ModuleInvariants(1), ZERO_MODULE, ModuleInvariants(0, (2, 4))])
    return report


class RunReportTests(SimpleTestCase):

    def test_render(self):
        self.assertEqual(sample_report().render(), '\n'.join([
            'command: cohomology',
            f'input: sha256:{"ab" * 32}',
            'flags: max-degree=2 normalized=True ring=Z',
            'H^0 = Z',
            'H^1 = 0',
            'H^2 = Z/2 + Z/4',
        ]) + '\n')

    def test_timings_only_when_asked(self):
        report = sample_report()
        report.timings = {'assemble': 0.25}
        self.assertEqual(report.render(), sample_report().render())
        self.assertTrue(report.render(include_timings=True).endswith('--\nassemble: 0.250s\n'))

    def test_validation_section(self):
        report = sample_report()
        report.validation = ['first problem', 'second problem']
        self.assertIn('validation: 2 problems\n  first problem\n  second problem\n', report.render())

    def test_json(self):
        report = sample_report()
        data = json.loads(report.dumps())
        self.assertEqual(data['inputDigest'], 'ab' * 32)
        self.assertEqual(data['perDegree'][2], {'degree': 2, 'module': 'Z/2 + Z/4',
                                                'invariants': {'free_rank': 0, 'torsion': [2, 4]}})
        self.assertEqual(list(data['flags']), ['max-degree', 'normalized', 'ring'])
        self.assertEqual(report.dumps(), sample_report().dumps())

    def test_modular_rendering(self):
        report = RunReport('group_cohomology', 'cd' * 32)
        report.add_degrees(integers_mod(4), [ModuleInvariants(2), ModuleInvariants(0, (2,))])
        self.assertEqual(report.lines, ['H^0 = (Z/4)^2', 'H^1 = Z/2'])

    def test_phase_timer(self):
        timer = PhaseTimer()
        for _ in range(2):
            with timer.phase('load'):
                pass
        self.assertEqual(list(timer.timings), ['load'])
        self.assertGreaterEqual(timer.timings['load'], 0.0)


class LedgerTests(TestCase):

    def test_save_and_list(self):
        first = save_run(sample_report())
        second = save_run(RunReport('enumerate_simplices', 'ef' * 32))
        self.assertEqual(RunRecord.objects.count(), 2)
        self.assertEqual(first.report['lines'][0], 'H^0 = Z')
        self.assertEqual([r.pk for r in recent_runs(limit=1)], [second.pk])
        self.assertEqual([r.pk for r in recent_runs('cohomology')], [first.pk])
        self.assertIn('cohomology', str(first))
