from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from algebra.groups import cyclic_group, group_from_table
from algebra.invariants import ModuleInvariants, ZERO_MODULE
from algebra.matrices import ExactMatrix
from algebra.rings import QQ, ZZ, integers_mod
from cohomology.exceptions import GroupActionError
from cohomology.group_cohomology import (bar_differentials, check_action, compare_with_periodic, cyclic_action,
                                         generator_of, group_cohomology, periodic_cyclic_cohomology,
                                         periodic_differentials, trivial_action)
from cohomology.local_systems import CoefficientModule

KLEIN = group_from_table([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]], name='V4')

Z = ModuleInvariants(1)


def torsion(*factors):
    return ModuleInvariants(0, factors)


class TrivialActionTests(SimpleTestCase):

    def test_cyclic_three(self):
        self.assertEqual(group_cohomology(cyclic_group(3), CoefficientModule(), 4),
                         [Z, ZERO_MODULE, torsion(3), ZERO_MODULE, torsion(3)])

    def test_trivial_group(self):
        self.assertEqual(group_cohomology(cyclic_group(1), CoefficientModule(), 3), [Z] + [ZERO_MODULE] * 3)

    def test_mod_two_coefficients(self):
        ring = integers_mod(2)
        self.assertEqual(group_cohomology(cyclic_group(2), CoefficientModule(ring), 3), [Z] * 4)

    def test_rationals_see_only_degree_zero(self):
        self.assertEqual(group_cohomology(cyclic_group(4), CoefficientModule(QQ), 3), [Z] + [ZERO_MODULE] * 3)

    def test_klein_four(self):
        self.assertEqual(group_cohomology(KLEIN, CoefficientModule(), 3, normalized=True),
                         [Z, ZERO_MODULE, torsion(2, 2), torsion(2)])

    def test_rank_two(self):
        self.assertEqual(group_cohomology(cyclic_group(2), CoefficientModule(ZZ, 2), 2),
                         [ModuleInvariants(2), ZERO_MODULE, torsion(2, 2)])

    def test_negative_degree(self):
        self.assertEqual(group_cohomology(cyclic_group(2), CoefficientModule(), -1), [])

    @settings(max_examples=20, deadline=None)
    @given(st.integers(2, 6), st.integers(0, 3))
    def test_normalized_matches_unnormalized(self, n, max_degree):
        group, module = cyclic_group(n), CoefficientModule()
        self.assertEqual(group_cohomology(group, module, max_degree, normalized=True),
                         group_cohomology(group, module, max_degree))

    def test_differentials_compose_to_zero(self):
        module = CoefficientModule()
        differentials = bar_differentials(KLEIN, module, trivial_action(KLEIN, module), 2)
        self.assertEqual([d.shape for d in differentials], [(4, 1), (16, 4), (64, 16)])
        for lower, upper in zip(differentials, differentials[1:]):
            self.assertTrue((upper @ lower).is_zero())


class TwistedActionTests(SimpleTestCase):

    def setUp(self):
        self.group = cyclic_group(2)
        self.module = CoefficientModule()
        self.sign = cyclic_action(self.group, self.module, 1, ExactMatrix.from_rows(ZZ, [[-1]]))

    def test_sign_representation(self):
        self.assertEqual(group_cohomology(self.group, self.module, 3, action=self.sign),
                         [ZERO_MODULE, torsion(2), ZERO_MODULE, torsion(2)])

    def test_periodic_resolution_agrees(self):
        periodic = periodic_cyclic_cohomology(2, ExactMatrix.from_rows(ZZ, [[-1]]), 3)
        self.assertEqual(periodic, group_cohomology(self.group, self.module, 3, action=self.sign))

    def test_swap_representation_is_induced(self):
        swap = cyclic_action(self.group, CoefficientModule(ZZ, 2), 1, ExactMatrix.from_rows(ZZ, [[0, 1], [1, 0]]))
        self.assertEqual(group_cohomology(self.group, CoefficientModule(ZZ, 2), 3, action=swap),
                         [Z, ZERO_MODULE, ZERO_MODULE, ZERO_MODULE])

    def test_action_must_be_multiplicative(self):
        with self.assertRaises(GroupActionError) as raised:
            check_action(self.group, self.module, [self.module.identity(), ExactMatrix.from_rows(ZZ, [[2]])])
        self.assertEqual(raised.exception.pair, (1, 1))
        three = cyclic_group(3)
        wrong = [self.module.identity(), ExactMatrix.from_rows(ZZ, [[-1]]), ExactMatrix.from_rows(ZZ, [[-1]])]
        with self.assertRaises(GroupActionError) as raised:
            check_action(three, self.module, wrong)
        self.assertEqual(raised.exception.pair, (1, 1))

    def test_identity_must_act_trivially(self):
        with self.assertRaises(GroupActionError) as raised:
            check_action(self.group, self.module, [ExactMatrix.from_rows(ZZ, [[-1]])] * 2)
        self.assertEqual(raised.exception.pair, (0, 0))

    def test_matrices_must_fit_the_module(self):
        with self.assertRaises(GroupActionError):
            check_action(self.group, self.module, [self.module.identity()] * 3)
        with self.assertRaises(GroupActionError):
            check_action(self.group, self.module, [ExactMatrix.identity(ZZ, 2)] * 2)
        with self.assertRaises(GroupActionError):
            check_action(self.group, self.module, [ExactMatrix.identity(QQ, 1)] * 2)

    def test_non_generator(self):
        with self.assertRaises(GroupActionError):
            cyclic_action(cyclic_group(4), self.module, 2, ExactMatrix.from_rows(ZZ, [[-1]]))


class PeriodicResolutionTests(SimpleTestCase):

    def test_agrees_with_the_bar_resolution(self):
        for n in (2, 3, 4, 6):
            with self.subTest(n=n):
                group, module = cyclic_group(n), CoefficientModule()
                bar = group_cohomology(group, module, 4, normalized=True)
                self.assertEqual(compare_with_periodic(group, module, 4, bar), {})

    def test_reports_disagreement(self):
        group, module = cyclic_group(3), CoefficientModule()
        wrong = [Z, ZERO_MODULE, torsion(9), ZERO_MODULE]
        self.assertEqual(compare_with_periodic(group, module, 3, wrong), {2: (torsion(9), torsion(3))})

    def test_needs_a_cyclic_group(self):
        with self.assertRaises(GroupActionError):
            compare_with_periodic(KLEIN, CoefficientModule(), 2, [])

    def test_generator_order(self):
        with self.assertRaises(GroupActionError):
            periodic_differentials(3, ExactMatrix.from_rows(ZZ, [[-1]]), 2)

    def test_generator_of(self):
        self.assertEqual(generator_of(cyclic_group(6)), 1)
        self.assertEqual(generator_of(cyclic_group(1)), 0)
        self.assertIsNone(generator_of(KLEIN))
