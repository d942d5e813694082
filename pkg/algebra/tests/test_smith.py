import random
from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st
from sympy import Matrix, gcd

from algebra.matrices import ExactMatrix
from algebra.rings import QQ, ZZ, integers_mod, parse_ring
from algebra.smith import invariant_factors, smith_decomposition, smith_normal_form


def random_matrix(rng, ring, rows, cols, spread=6):
    values = [[ring.coerce(rng.randint(-spread, spread)) for _ in range(cols)] for _ in range(rows)]
    return ExactMatrix.from_rows(ring, values, cols=cols)


class SmithPostconditions:
    """Shared assertions for U*A*V = S"""

    def assertSmith(self, matrix):
        ring = matrix.ring
        U, S, V = smith_normal_form(matrix)
        self.assertEqual(U @ matrix @ V, S)

        for i, j, _ in S.entries():
            self.assertEqual(i, j, f'off-diagonal entry at ({i}, {j})')

        diagonal = [S[i, i] for i in range(min(S.rows, S.cols))]
        for d, e in zip(diagonal, diagonal[1:]):
            self.assertTrue(ring.divides(d, e), f'{d} does not divide {e} in {ring}')

        for unimodular in (U, V):
            det = Matrix([[int(v) for v in row] for row in unimodular.to_lists()]).det() \
                if ring != QQ else Matrix(unimodular.to_lists()).det()
            if ring == ZZ:
                self.assertIn(det, (1, -1))
            elif ring == QQ:
                self.assertNotEqual(det, 0)
            else:
                self.assertEqual(gcd(int(det), ring.modulus), 1)
        return diagonal


class SmithNormalFormTests(SmithPostconditions, SimpleTestCase):

    def test_diag_two_three(self):
        matrix = ExactMatrix.from_rows(ZZ, [[2, 0], [0, 3]])
        diagonal = self.assertSmith(matrix)
        self.assertEqual(diagonal, [1, 6])

    def test_identity(self):
        matrix = ExactMatrix.identity(ZZ, 4)
        _, S, _ = smith_normal_form(matrix)
        self.assertTrue(S.is_identity())

    def test_zero(self):
        matrix = ExactMatrix.zeros(ZZ, 2, 3)
        _, S, _ = smith_normal_form(matrix)
        self.assertTrue(S.is_zero())
        self.assertEqual(S.shape, (2, 3))

    def test_negative_pivot_is_normalized(self):
        matrix = ExactMatrix.from_rows(ZZ, [[-4, 6], [2, -8]])
        diagonal = self.assertSmith(matrix)
        self.assertEqual(diagonal, [2, 10])

    def test_mod_six_uses_gcd_with_modulus(self):
        # 4 generates the ideal (2) in Z/6
        matrix = ExactMatrix.from_rows(integers_mod(6), [[4, 0], [0, 3]])
        diagonal = self.assertSmith(matrix)
        self.assertEqual(diagonal, [1, 0])

    def test_mod_eight(self):
        matrix = ExactMatrix.from_rows(integers_mod(8), [[6, 2], [4, 4]])
        self.assertSmith(matrix)

    def test_rationals(self):
        matrix = ExactMatrix.from_rows(QQ, [[Fraction(1, 2), 1], [1, 2]])
        diagonal = self.assertSmith(matrix)
        self.assertEqual(diagonal, [1, 0])

    def test_invariant_factors(self):
        matrix = ExactMatrix.from_rows(ZZ, [[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
        self.assertEqual(invariant_factors(matrix), [2, 6, 12])

    def test_v_inverse(self):
        rng = random.Random(7)
        for _ in range(20):
            matrix = random_matrix(rng, ZZ, 3, 4)
            decomposition = smith_decomposition(matrix)
            self.assertTrue((decomposition.V @ decomposition.V_inverse).is_identity())

    def test_matrix_without_rows_keeps_unimodular_v(self):
        for ring in (ZZ, QQ, integers_mod(6)):
            with self.subTest(ring=ring):
                decomposition = smith_decomposition(ExactMatrix.zeros(ring, 0, 3))
                self.assertTrue(decomposition.V.is_identity())
                self.assertTrue(decomposition.V_inverse.is_identity())
                self.assertEqual(decomposition.diagonal, [])

    def test_thousand_random_matrices(self):
        rng = random.Random(20240611)
        rings = [ZZ, ZZ, QQ, integers_mod(2), integers_mod(6), integers_mod(12), integers_mod(7)]
        for _ in range(1000):
            ring = rng.choice(rings)
            matrix = random_matrix(rng, ring, rng.randint(0, 5), rng.randint(0, 5))
            self.assertSmith(matrix)


class SmithPropertyTests(SmithPostconditions, SimpleTestCase):

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.lists(st.integers(-50, 50), min_size=3, max_size=3), min_size=1, max_size=4))
    def test_integer_matrices(self, rows):
        self.assertSmith(ExactMatrix.from_rows(ZZ, rows))

    @settings(max_examples=200, deadline=None)
    @given(st.integers(2, 30), st.lists(st.lists(st.integers(0, 100), min_size=4, max_size=4), min_size=1, max_size=4))
    def test_modular_matrices(self, modulus, rows):
        ring = integers_mod(modulus)
        self.assertSmith(ExactMatrix.from_rows(ring, [[ring.coerce(v) for v in row] for row in rows]))


class RingTests(SimpleTestCase):

    def test_bezout_step_is_invertible(self):
        for ring in (ZZ, integers_mod(12)):
            for a, b in ((12, 18), (5, 3), (4, 0), (-6, 9)):
                a, b = ring.coerce(a), ring.coerce(b)
                with self.subTest(ring=ring, a=a, b=b):
                    g, (x, y, s, t) = ring.bezout(a, b)
                    self.assertEqual(ring.reduce(x * a + y * b), g)
                    self.assertEqual(ring.reduce(s * a + t * b), 0)
                    self.assertEqual(ring.reduce(x * t - y * s), 1)

    def test_parse_ring(self):
        self.assertEqual(parse_ring('Zmod:6'), integers_mod(6))
        self.assertTrue(parse_ring('Zmod:7').is_field)
        self.assertFalse(parse_ring('Zmod:6').is_field)
        self.assertTrue(parse_ring('Q').is_field)
