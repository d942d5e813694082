import copy

from django.test import SimpleTestCase

from orbifolds.complex import MuKey, complex_to_document, intersection_of, load_complex, mu_apply, validate_mu
from orbifolds.exceptions import ComplexValidationError, MissingMuError, UnknownSimplexError
from orbifolds.tests.fixtures import circle_document, single_simplex_document, teardrop


def key(tau, rho, x, y):
    return MuKey(frozenset(tau), frozenset(rho), x, y)


class LoadComplexTests(SimpleTestCase):

    def test_circle(self):
        complex_ = load_complex(circle_document(), max_degree=4)
        self.assertEqual(complex_.top_simplices, ('A', 'B', 'C'))
        self.assertEqual(len(complex_.intersections), 6)
        self.assertIsNone(intersection_of(complex_, ['A', 'B', 'C']))
        self.assertTrue(intersection_of(complex_, ['A', 'C']).isotropy.is_trivial)

    def test_single_simplex_implies_its_identity_table(self):
        complex_ = load_complex(single_simplex_document(4), max_degree=5)
        s = frozenset(['s'])
        self.assertEqual(complex_.group_of(s).order, 4)
        self.assertEqual([mu_apply(complex_, key('s', 's', 's', 's'), g) for g in range(4)], [0, 1, 2, 3])

    def test_duplicate_top_simplex(self):
        document = circle_document()
        document['topSimplices'].append('A')
        with self.assertRaises(ComplexValidationError):
            load_complex(document)

    def test_missing_singleton(self):
        document = circle_document()
        document['intersections'] = [e for e in document['intersections'] if e['subset'] != ['B']]
        with self.assertRaises(ComplexValidationError) as raised:
            load_complex(document)
        self.assertEqual(raised.exception.key, frozenset(['B']))

    def test_unknown_top_simplex_in_intersection(self):
        document = circle_document()
        document['intersections'].append({'subset': ['A', 'Z'], 'isotropy': 'cyclic:1'})
        with self.assertRaises(UnknownSimplexError):
            load_complex(document)

    def test_unknown_group(self):
        document = single_simplex_document(2)
        document['intersections'][0]['isotropy'] = 'H'
        with self.assertRaises(ComplexValidationError):
            load_complex(document)

    def test_non_injective_table(self):
        document = single_simplex_document(3)
        document['mu'] = [{'tau': ['s'], 'rho': ['s'], 'from': 's', 'to': 's', 'table': [0, 0, 1]}]
        with self.assertRaises(ComplexValidationError):
            load_complex(document)

    def test_table_of_wrong_length(self):
        document = single_simplex_document(3)
        document['mu'] = [{'tau': ['s'], 'rho': ['s'], 'from': 's', 'to': 's', 'table': [0, 1]}]
        with self.assertRaises(ComplexValidationError):
            load_complex(document)

    def test_explicit_group_table(self):
        document = single_simplex_document(2)
        document['groups'] = {'G': {'order': 2, 'mul': [[0, 1], [1, 0]]}}
        self.assertEqual(load_complex(document).group_of(frozenset(['s'])).order, 2)

    def test_declared_order_must_match(self):
        document = single_simplex_document(2)
        document['groups'] = {'G': {'order': 3, 'mul': [[0, 1], [1, 0]]}}
        with self.assertRaises(ComplexValidationError):
            load_complex(document)

    def test_rho_outside_tau(self):
        with self.assertRaises(ComplexValidationError):
            key(['a'], ['a', 'b'], 'a', 'b')


class MuTests(SimpleTestCase):

    def setUp(self):
        self.fixture = teardrop(3)
        self.complex = self.fixture.complex

    def test_missing_table_is_reported(self):
        document = copy.deepcopy(self.fixture.complex_document)
        document['mu'] = [m for m in document['mu'] if not (m['tau'] == ['a', 'c', 'f'] and m['rho'] == ['a', 'c'])]
        with self.assertRaises(MissingMuError):
            load_complex(document, max_degree=2)

    def test_mu_apply_rejects_elements_outside_the_domain(self):
        with self.assertRaises(ValueError):
            mu_apply(self.complex, key('acf', 'ac', 'c', 'a'), 1)

    def test_mu_apply_on_the_seam(self):
        self.assertEqual(mu_apply(self.complex, key('acf', 'ac', 'c', 'a'), 0), 1)
        self.assertEqual(mu_apply(self.complex, key('acf', 'ac', 'a', 'c'), 0), 2)

    def test_mu_apply_unknown_simplex(self):
        with self.assertRaises(UnknownSimplexError):
            mu_apply(self.complex, key('xy', 'x', 'x', 'x'), 0)

    def test_generated_tables_validate(self):
        report = validate_mu(self.complex)
        self.assertTrue(report.ok, report.lines()[:5])
        self.assertGreater(report.checks, 672)

    def test_corrupted_table_is_a_violation(self):
        document = copy.deepcopy(self.fixture.complex_document)
        for entry in document['mu']:
            if entry['tau'] == ['a', 'c', 'f'] and entry['rho'] == ['a', 'c'] and entry['from'] == 'c' \
                    and entry['to'] == 'a':
                entry['table'] = [0]
        report = validate_mu(load_complex(document))
        self.assertFalse(report.ok)
        # the corrupted value sits in exactly the two triples that go out and back along c <- a
        tau, rho = ('a', 'c', 'f'), ('a', 'c')
        self.assertEqual(sorted(v.detail for v in report.of_kind('multiplicativity')),
                         [(tau, rho, 'a', 'c', 'a', 0, 0), (tau, rho, 'c', 'a', 'c', 0, 0)])

    def test_round_trip_along_a_pair_is_the_identity(self):
        # mu_{s,t}(h) * mu_{t,s}(h^-1) = mu_{s,s}(e)
        complex_ = self.complex
        checked = set()
        for table_key in complex_.mu_tables:
            tau, rho, s, t = table_key.lookup
            if not (complex_.has_table(tau, rho, t, s) and complex_.has_table(tau, rho, s, s)):
                continue
            domain, codomain = complex_.group_of(tau), complex_.group_of(rho)
            there = complex_.table_for(tau, rho, s, t).table
            back = complex_.table_for(tau, rho, t, s).table
            stay = complex_.table_for(tau, rho, s, s).table
            for h in range(domain.order):
                self.assertEqual(codomain.multiply(there[h], back[domain.inverse(h)]), stay[0], str(table_key))
            checked.add(table_key)
        self.assertIn(key('acf', 'ac', 'c', 'a'), checked)

    def test_loading_is_deterministic(self):
        first = load_complex(copy.deepcopy(self.fixture.complex_document))
        second = load_complex(copy.deepcopy(self.fixture.complex_document))
        self.assertEqual(first.top_simplices, second.top_simplices)
        self.assertEqual(first.intersections, second.intersections)
        self.assertEqual(first.mu_tables, second.mu_tables)
        self.assertEqual(list(first.mu_tables), list(second.mu_tables))
        self.assertEqual(complex_to_document(first), complex_to_document(second))

    def test_table_that_is_not_a_homomorphism(self):
        # the trivial group of {s, t} must land on the identity of G_s
        document = {
            'topSimplices': ['s', 't'],
            'groups': {'G': 'cyclic:2', 'T': 'cyclic:1'},
            'intersections': [
                {'subset': ['s'], 'isotropy': 'G'},
                {'subset': ['t'], 'isotropy': 'G'},
                {'subset': ['s', 't'], 'isotropy': 'T'},
            ],
            'mu': [
                {'tau': ['s', 't'], 'rho': ['s'], 'from': 's', 'to': 's', 'table': [1]},
            ],
        }
        report = validate_mu(load_complex(document))
        self.assertFalse(report.ok)
        self.assertTrue(report.of_kind('multiplicativity'))

    def test_document_round_trip_keeps_tables(self):
        reloaded = load_complex(complex_to_document(self.complex))
        for k, table in self.complex.mu_tables.items():
            self.assertEqual(reloaded.table_for(*k.lookup), table)
