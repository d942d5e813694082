from itertools import permutations

from django.test import SimpleTestCase

from algebra.exceptions import GroupAxiomError, InvalidOrderError
from algebra.groups import cyclic_group, group_from_spec, group_from_table, is_homomorphism

KLEIN = [
    [0, 1, 2, 3],
    [1, 0, 3, 2],
    [2, 3, 0, 1],
    [3, 2, 1, 0],
]

PERMUTATIONS = list(permutations(range(3)))
S3 = [[PERMUTATIONS.index(tuple(p[q[i]] for i in range(3))) for q in PERMUTATIONS] for p in PERMUTATIONS]


class CyclicGroupTests(SimpleTestCase):

    def test_trivial(self):
        group = cyclic_group(1)
        self.assertEqual(group.order, 1)
        self.assertTrue(group.is_trivial)

    def test_arithmetic_mod_three(self):
        group = cyclic_group(3)
        self.assertEqual(group.multiply(1, 2), 0)
        self.assertEqual(group.inverse(1), 2)

    def test_generator(self):
        group = cyclic_group(3)
        self.assertEqual([group.power(1, k) for k in (1, 2, 3)], [1, 2, 0])

    def test_invalid_order(self):
        for bad in (0, -2, 2.5, True):
            with self.assertRaises(InvalidOrderError):
                cyclic_group(bad)

    def test_shorthand(self):
        self.assertEqual(group_from_spec('cyclic:5'), cyclic_group(5))
        with self.assertRaises(InvalidOrderError):
            group_from_spec('dihedral:4')

    def test_elements_multiply(self):
        group = cyclic_group(4)
        a, b = group.element(3), group.element(2)
        self.assertEqual((a * b).index, 1)
        self.assertTrue((a * a.inverse()).is_identity)


class GroupFromTableTests(SimpleTestCase):

    def test_one_by_one(self):
        self.assertTrue(group_from_table([[0]]).is_trivial)

    def test_klein_four_is_self_inverse(self):
        group = group_from_table(KLEIN)
        self.assertEqual(group.order, 4)
        self.assertEqual(group.inv, (0, 1, 2, 3))
        self.assertTrue(group.is_abelian())

    def test_nonabelian(self):
        group = group_from_table(S3)
        self.assertFalse(group.is_abelian())
        for x in range(6):
            self.assertEqual(group.multiply(x, group.inverse(x)), 0)

    def test_missing_inverse(self):
        with self.assertRaisesRegex(GroupAxiomError, 'no inverse'):
            group_from_table([[0, 1], [1, 1]])

    def test_identity_not_at_zero(self):
        with self.assertRaisesRegex(GroupAxiomError, 'identity'):
            group_from_table([[1, 0], [0, 1]])

    def test_non_permutation_row(self):
        table = [row[:] for row in KLEIN]
        table[2][3] = 2
        with self.assertRaises(GroupAxiomError):
            group_from_table(table)

    def test_non_associative_names_triple(self):
        # a Latin square with identity 0 that is not associative
        table = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with self.assertRaisesRegex(GroupAxiomError, r'associativity fails on the triple \(\d+,\d+,\d+\)'):
            group_from_table(table)

    def test_ragged_table(self):
        with self.assertRaises(GroupAxiomError):
            group_from_table([[0, 1], [1]])

    def test_homomorphism_check(self):
        c4, c2 = cyclic_group(4), cyclic_group(2)
        self.assertTrue(is_homomorphism(c4, c2, [0, 1, 0, 1]))
        self.assertFalse(is_homomorphism(c4, c2, [0, 1, 1, 0]))
