import random
from itertools import product
from math import comb

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from orbifolds.complex import load_complex
from orbifolds.exceptions import NoSimplexError, UnknownSimplexError
from orbifolds.simplicial import (OrbSimplex, enumerate_all, enumerate_nondegenerate, face, is_degenerate,
                                  parse_simplex, simplex_group, simplicial_set)
from orbifolds.tests.fixtures import circle, nerve_document, random_simplex, single_simplex, sphere, teardrop

IDENTITY_SAMPLES = 10_000


def s(text):
    return parse_simplex(text)


class CountTests(SimpleTestCase):

    def test_teardrop(self):
        sset = simplicial_set(teardrop(3).complex)
        self.assertEqual(sset.count(0), 6)
        self.assertEqual(sset.count(1), 48)
        self.assertEqual(len(enumerate_nondegenerate(teardrop(3).complex, 1)), 48)

    def test_single_simplex_is_the_nerve_of_its_group(self):
        sset = simplicial_set(single_simplex(2))
        self.assertEqual([sset.count(k) for k in range(3)], [1, 1, 1])
        self.assertEqual([sset.count(k, normalized=False) for k in range(3)], [1, 2, 4])
        self.assertEqual([len(enumerate_all(single_simplex(3), k)) for k in range(3)], [1, 3, 9])

    def test_trivial_single_simplex(self):
        sset = simplicial_set(single_simplex(1))
        self.assertEqual([sset.count(k) for k in range(3)], [1, 0, 0])

    def test_circle(self):
        sset = simplicial_set(circle())
        self.assertEqual(sset.count(1), 6)
        self.assertEqual(sset.count(2), 6)
        self.assertEqual(sset.count(2, normalized=False), 3 + 6 * 3)

    def test_count_matches_enumeration(self):
        sset = simplicial_set(teardrop(2).complex)
        for k in range(4):
            for normalized in (True, False):
                self.assertEqual(sset.count(k, normalized), len(sset.simplices(k, normalized)))

    def test_degenerate_simplices_by_inclusion_exclusion(self):
        # nondegenerate + degenerate = sum of |G|^k over strings of top simplices with a common point
        for complex_ in (teardrop(2).complex, circle(), single_simplex(3), sphere()):
            sset = simplicial_set(complex_)
            for k in range(4):
                with self.subTest(complex=complex_.top_simplices, k=k):
                    total = degenerate = 0
                    for sigmas in product(complex_.top_simplices, repeat=k + 1):
                        record = complex_.intersections.get(frozenset(sigmas))
                        if record is None:
                            continue
                        order = record.isotropy.order
                        total += order ** k
                        repeats = [i for i in range(k) if sigmas[i] == sigmas[i + 1]]
                        for size in range(1, len(repeats) + 1):
                            degenerate += (-1) ** (size + 1) * comb(len(repeats), size) * order ** (k - size)
                    self.assertEqual(sset.count(k, normalized=False), total)
                    self.assertEqual(sset.count(k) + degenerate, total)

    def test_enumeration_order(self):
        simplices = enumerate_nondegenerate(single_simplex(3), 2)
        self.assertEqual([x.arrows for x in simplices], [(1, 1), (1, 2), (2, 1), (2, 2)])
        self.assertTrue(all(not is_degenerate(x) for x in simplices))

    def test_negative_degree(self):
        with self.assertRaises(ValueError):
            enumerate_all(circle(), -1)


class FaceTests(SimpleTestCase):

    def setUp(self):
        self.complex = teardrop(3).complex
        self.sset = simplicial_set(self.complex)

    def assertFaces(self, simplex, expected):
        self.assertEqual([str(x) for x in self.sset.faces(s(simplex))], expected)

    def test_seam_triangle(self):
        self.assertFaces('f <-0- c <-0- a', ['c <-1- a', 'f <-0- a', 'f <-0- c'])

    def test_loop_closing_on_the_seam(self):
        self.assertFaces('a <-0- c <-1- a', ['c <-1- a', 'a <-1- a', 'a <-0- c'])

    def test_triangles_of_the_loop(self):
        self.assertFaces('a <-0- b <-0- c', ['b <-0- c', 'a <-0- c', 'a <-0- b'])
        self.assertFaces('b <-0- f <-0- c', ['f <-0- c', 'b <-0- c', 'b <-0- f'])
        self.assertFaces('a <-0- d <-0- b', ['d <-0- b', 'a <-0- b', 'a <-0- d'])
        self.assertFaces('d <-0- e <-0- b', ['e <-0- b', 'd <-0- b', 'd <-0- e'])
        self.assertFaces('a <-0- f <-0- d', ['f <-0- d', 'a <-0- d', 'a <-0- f'])

    def test_degenerate_middle_face(self):
        self.assertEqual(face(self.complex, s('f <-0- e <-0- f'), 1), s('f <-0- f'))
        self.assertTrue(is_degenerate(s('f <-0- f')))

    def test_merge_inside_the_cone_group(self):
        self.assertEqual(face(self.complex, s('a <-1- b <-2- c'), 1), s('a <-0- c'))
        self.assertEqual(face(self.complex, s('a <-2- a <-2- a'), 1), s('a <-1- a'))

    def test_leading_edge(self):
        self.assertEqual(self.sset.leading_edge(s('f <-0- c <-0- a')), s('f <-0- c'))
        self.assertEqual(self.sset.leading_edge(s('c <-0- a <-0- f <-0- d')), s('c <-1- a'))
        with self.assertRaises(IndexError):
            self.sset.leading_edge(s('a'))

    def test_face_index_out_of_range(self):
        with self.assertRaises(IndexError):
            self.sset.face(s('a'), 0)
        with self.assertRaises(IndexError):
            self.sset.face(s('a <-1- b'), 2)

    def test_degeneracy(self):
        self.assertEqual(self.sset.degeneracy(s('a <-1- b'), 0), s('a <-0- a <-1- b'))
        self.assertEqual(self.sset.degeneracy(s('a <-1- b'), 1), s('a <-1- b <-0- b'))
        with self.assertRaises(IndexError):
            self.sset.degeneracy(s('a'), 1)

    def test_check(self):
        self.sset.check(s('a <-2- c'))
        with self.assertRaises(ValueError):
            self.sset.check(s('a <-1- d'))
        with self.assertRaises(NoSimplexError):
            self.sset.check(s('a <-0- e <-0- f'))
        with self.assertRaises(UnknownSimplexError):
            self.sset.check(s('a <-0- q'))

    def test_simplex_group(self):
        self.assertEqual(simplex_group(self.complex, ['a', 'b', 'c']).order, 3)
        self.assertTrue(simplex_group(self.complex, ['c', 'f']).is_trivial)


class SimplicialIdentityTests(SimpleTestCase):

    def assertIdentities(self, sset, x):
        k = x.degree
        for j in range(k + 1):
            for i in range(j):
                if k >= 2:
                    self.assertEqual(sset.face(sset.face(x, j), i), sset.face(sset.face(x, i), j - 1),
                                     f'd{i} d{j} on {x}')
            y = sset.degeneracy(x, j)
            self.assertEqual(sset.face(y, j), x, f'd{j} s{j} on {x}')
            self.assertEqual(sset.face(y, j + 1), x, f'd{j + 1} s{j} on {x}')
            for i in range(k + 2):
                if i < j and k >= 1:
                    self.assertEqual(sset.face(y, i), sset.degeneracy(sset.face(x, i), j - 1), f'd{i} s{j} on {x}')
                elif i > j + 1:
                    self.assertEqual(sset.face(y, i), sset.degeneracy(sset.face(x, i - 1), j), f'd{i} s{j} on {x}')
            for i in range(j + 1):
                self.assertEqual(sset.degeneracy(sset.degeneracy(x, j), i),
                                 sset.degeneracy(sset.degeneracy(x, i), j + 1), f's{i} s{j} on {x}')

    def test_teardrop_samples(self):
        sset = simplicial_set(teardrop(3).complex)
        rng = random.Random(20240611)
        for _ in range(IDENTITY_SAMPLES):
            x = random_simplex(rng, sset.complex, rng.randint(0, 4))
            self.assertIdentities(sset, x)

    def test_every_small_simplex_of_the_teardrop(self):
        sset = simplicial_set(teardrop(2).complex)
        for k in range(3):
            for x in sset.simplices(k, normalized=False):
                self.assertIdentities(sset, x)

    @settings(max_examples=200, deadline=None)
    @given(st.randoms(use_true_random=False), st.integers(0, 3))
    def test_sphere_and_nerves(self, rng, degree):
        for complex_ in (sphere(), single_simplex(4)):
            sset = simplicial_set(complex_)
            self.assertIdentities(sset, random_simplex(rng, complex_, degree))

    def test_faces_of_normalized_simplices_exist(self):
        sset = simplicial_set(teardrop(3).complex)
        for x in sset.simplices(2):
            for y in sset.faces(x):
                sset.check(y)


class ParseTests(SimpleTestCase):

    def test_round_trip(self):
        x = OrbSimplex(('f', 'c', 'a'), (0, 1))
        self.assertEqual(str(x), 'f <-0- c <-1- a')
        self.assertEqual(parse_simplex(str(x)), x)
        self.assertEqual(parse_simplex('a'), OrbSimplex(('a',)))

    def test_malformed(self):
        for text in ('', 'a <-1-', 'a <-x- b', 'a -1- b', 'a <-1 b'):
            with self.subTest(text=text):
                with self.assertRaises(ValueError):
                    parse_simplex(text)

    def test_arrow_count(self):
        with self.assertRaises(ValueError):
            OrbSimplex(('a', 'b'), ())


class ComponentTests(SimpleTestCase):

    def test_teardrop_is_connected(self):
        self.assertEqual(simplicial_set(teardrop(2).complex).connected_components(),
                         [['a', 'b', 'c', 'd', 'e', 'f']])

    def test_disjoint_pieces(self):
        complex_ = load_complex(nerve_document(['A', 'B', 'C'], [('A',), ('B', 'C')], dim=1))
        self.assertEqual(simplicial_set(complex_).connected_components(), [['A'], ['B', 'C']])


class BasisIndexTests(SimpleTestCase):

    def test_positions_follow_the_enumeration(self):
        for complex_ in (teardrop(2).complex, circle(), single_simplex(3)):
            sset = simplicial_set(complex_)
            for k in range(4):
                for normalized in (True, False):
                    with self.subTest(complex=complex_.top_simplices, k=k, normalized=normalized):
                        index = sset.basis_index(k, normalized)
                        simplices = sset.simplices(k, normalized)
                        self.assertEqual(len(index), len(simplices))
                        self.assertEqual([index.index(x) for x in simplices], list(range(len(simplices))))

    def test_degenerate_simplices_have_no_position(self):
        index = simplicial_set(teardrop(3).complex).basis_index(2)
        self.assertIsNone(index.index(s('a <-0- a <-1- b')))
        self.assertIsNone(index.index(s('f <-0- e <-0- e')))
        self.assertIsNotNone(index.index(s('a <-1- a <-1- b')))
        unnormalized = simplicial_set(teardrop(3).complex).basis_index(2, normalized=False)
        self.assertIsNotNone(unnormalized.index(s('a <-0- a <-1- b')))

    def test_unknown_string(self):
        index = simplicial_set(circle()).basis_index(2)
        with self.assertRaises(UnknownSimplexError):
            index.index(s('A <-0- B <-0- C'))
