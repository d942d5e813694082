"""Small complexes shared by the orbifolds and cohomology tests."""

import json
import random
from functools import lru_cache
from itertools import combinations

from orbifolds.complex import load_complex
from orbifolds.simplicial import OrbSimplex, simplicial_set
from orbifolds.teardrop import generate_teardrop


def nerve_document(tops, meets, dim):
    """A complex with trivial isotropy whose intersections are the given subsets and all their faces"""
    subsets = set()
    for meet in meets:
        for size in range(1, len(meet) + 1):
            subsets.update(frozenset(c) for c in combinations(meet, size))
    order = {name: i for i, name in enumerate(tops)}
    intersections = [{'subset': sorted(s, key=order.__getitem__), 'isotropy': 'cyclic:1'}
                     for s in sorted(subsets, key=lambda s: (len(s), sorted(order[x] for x in s)))]
    return {
        'kind': 'orbifold-complex',
        'dim': dim,
        'topSimplices': list(tops),
        'groups': {'cyclic:1': 'cyclic:1'},
        'intersections': intersections,
        'mu': [],
    }


def circle_document():
    # three arcs, consecutive ones sharing an endpoint
    return nerve_document(['A', 'B', 'C'], [('A', 'B'), ('B', 'C'), ('A', 'C')], dim=1)


def sphere_document():
    # the four faces of a tetrahedron: any three share a vertex, all four share nothing
    tops = ['P', 'Q', 'R', 'S']
    return nerve_document(tops, list(combinations(tops, 3)), dim=2)


def single_simplex_document(n):
    """One top simplex with isotropy C_n; S is the nerve of C_n"""
    return {
        'kind': 'orbifold-complex',
        'dim': 2,
        'topSimplices': ['s'],
        'groups': {'G': f'cyclic:{n}'},
        'intersections': [{'subset': ['s'], 'isotropy': 'G'}],
        'mu': [],
    }


def circle():
    return load_complex(circle_document(), max_degree=5)


def sphere():
    return load_complex(sphere_document(), max_degree=5)


def single_simplex(n):
    return load_complex(single_simplex_document(n), max_degree=6)


@lru_cache(maxsize=None)
def teardrop(n):
    """Generated once per order and shared across test classes"""
    return generate_teardrop(n)


def write_json(directory, name, data):
    path = directory / name
    path.write_text(json.dumps(data, indent=2), encoding='utf-8')
    return path


def random_simplex(rng: random.Random, complex_, degree: int) -> OrbSimplex:
    """A random string of top simplices with random arrows, degenerate ones allowed"""
    sset = simplicial_set(complex_)
    sigmas = [rng.choice(complex_.top_simplices)]
    subset = frozenset(sigmas)
    for _ in range(degree):
        choices = [s for s in complex_.top_simplices if subset | {s} in complex_.intersections]
        sigmas.append(rng.choice(choices))
        subset = subset | {sigmas[-1]}
    order = sset.group(sigmas).order
    arrows = []
    for a, b in zip(sigmas, sigmas[1:]):
        # lean on degenerate arrows now and then so degeneracy identities get exercised
        arrows.append(0 if a == b and rng.random() < 0.3 else rng.randrange(order))
    return OrbSimplex(tuple(sigmas), tuple(arrows))
