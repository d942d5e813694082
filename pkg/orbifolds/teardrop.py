"""
The teardrop orbifold: a 2-sphere with one cone point w of order n.

Base triangulation: the upper hemisphere is the cone on the equator t, u, v
from w, the lower hemisphere the cone from z.

    a = {t, v, w}   b = {t, u, w}   c = {u, v, w}
    d = {t, v, z}   e = {t, u, z}   f = {u, v, z}

The upper chart is the n-fold branched cover of the upper hemisphere, with
C_n rotating the 3n lifted triangles around w. The lower chart is the lower
hemisphere itself. Six small equatorial charts (three vertex germs and
three edge germs) glue the two.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from algebra.exceptions import InvalidOrderError
from algebra.groups import cyclic_group, trivial_group

from .atlas import Atlas, VertexChart, atlas_to_document
from .charts import ChartEmbedding, CombinatorialChart, chart_from_spec, identity_embedding, orbit
from .complex import OrbifoldComplex, complex_to_document
from .derivation import derive_complex

logger = logging.getLogger(__name__)

BASE_VERTICES = ('w', 't', 'u', 'v', 'z')
EQUATOR = ('t', 'u', 'v')
UPPER_SIMPLICES = {'a': ('t', 'v', 'w'), 'b': ('t', 'u', 'w'), 'c': ('u', 'v', 'w')}
LOWER_SIMPLICES = {'d': ('t', 'v', 'z'), 'e': ('t', 'u', 'z'), 'f': ('u', 'v', 'z')}
EQUATORIAL_EDGES = (('t', 'u'), ('u', 'v'), ('t', 'v'))


@dataclass
class TeardropFixture:
    n: int
    atlas: Atlas
    complex: OrbifoldComplex
    complex_document: dict
    atlas_document: dict


def _upper_chart(n: int) -> CombinatorialChart:
    def lifted(x, k):
        return f'{x}{k % n}'

    vertices = ['w'] + [lifted(x, k) for k in range(n) for x in EQUATOR]
    labels = ['w'] + [x for _ in range(n) for x in EQUATOR]
    triangles = []
    for k in range(n):
        triangles.append(('w', lifted('t', k), lifted('u', k)))
        triangles.append(('w', lifted('u', k), lifted('v', k)))
        triangles.append(('w', lifted('v', k), lifted('t', k + 1)))
    action = [['w'] + [lifted(x, k + j) for k in range(n) for x in EQUATOR] for j in range(n)]
    return chart_from_spec('upper', cyclic_group(n), vertices, labels, triangles, action)


def _lower_chart() -> CombinatorialChart:
    vertices = ['z', 't', 'u', 'v']
    return chart_from_spec('lower', trivial_group(), vertices, vertices, LOWER_SIMPLICES.values(), [vertices])


def _equatorial_charts() -> Dict[str, CombinatorialChart]:
    charts = {}
    for x in EQUATOR:
        charts[f'equator-{x}'] = chart_from_spec(f'equator-{x}', trivial_group(), [x], [x], [[x]], [[x]])
    for x, y in EQUATORIAL_EDGES:
        charts[f'equator-{x}{y}'] = chart_from_spec(f'equator-{x}{y}', trivial_group(), [x, y], [x, y],
                                                    [[x, y]], [[x, y]])
    return charts


def _embedding(source: CombinatorialChart, target: CombinatorialChart, vertex_map: Dict[str, str]) -> ChartEmbedding:
    embedding = ChartEmbedding(source, target, vertex_map, (0,) * source.group.order,
                               name=f'{source.name}->{target.name}')
    embedding.validate()
    return embedding


def _named(embeddings: List[ChartEmbedding]) -> List[ChartEmbedding]:
    """Give the translates of one reference embedding distinct names"""
    if len(embeddings) == 1:
        return embeddings
    return [ChartEmbedding(e.source, e.target, e.vertex_map, e.group_map, name=f'{e.name}#{h}')
            for h, e in enumerate(embeddings)]


def build_teardrop_atlas(n: int) -> Atlas:
    upper, lower = _upper_chart(n), _lower_chart()
    charts = {'upper': upper, 'lower': lower}
    charts.update(_equatorial_charts())

    references: List[ChartEmbedding] = []
    for x in EQUATOR:
        point = charts[f'equator-{x}']
        references.append(_embedding(point, upper, {x: f'{x}0'}))
        references.append(_embedding(point, lower, {x: x}))
    upper_edges = {('t', 'u'): {'t': 't0', 'u': 'u0'}, ('u', 'v'): {'u': 'u0', 'v': 'v0'},
                   ('t', 'v'): {'t': 't1', 'v': 'v0'}}
    for x, y in EQUATORIAL_EDGES:
        edge = charts[f'equator-{x}{y}']
        references.append(_embedding(edge, upper, upper_edges[(x, y)]))
        references.append(_embedding(edge, lower, {x: x, y: y}))
        for endpoint in (x, y):
            references.append(_embedding(charts[f'equator-{endpoint}'], edge, {endpoint: endpoint}))

    embeddings: List[ChartEmbedding] = []
    for chart in charts.values():
        embeddings.extend(_named(orbit(identity_embedding(chart))))
    for reference in references:
        embeddings.extend(_named(orbit(reference)))

    base_simplices = {name: frozenset(vs) for name, vs in {**UPPER_SIMPLICES, **LOWER_SIMPLICES}.items()}
    lifts = {
        'a': frozenset({'w', f'v{n - 1}', 't0'}),
        'b': frozenset({'w', 't0', 'u0'}),
        'c': frozenset({'w', 'u0', 'v0'}),
    }
    lifts.update({name: frozenset(vs) for name, vs in LOWER_SIMPLICES.items()})
    simplex_charts = {**{name: 'upper' for name in UPPER_SIMPLICES}, **{name: 'lower' for name in LOWER_SIMPLICES}}
    vertex_charts = {'w': VertexChart('upper', 'w'), 'z': VertexChart('lower', 'z')}
    vertex_charts.update({x: VertexChart(f'equator-{x}', x) for x in EQUATOR})

    atlas = Atlas(
        base_vertices=BASE_VERTICES,
        top_simplices=tuple(UPPER_SIMPLICES) + tuple(LOWER_SIMPLICES),
        base_simplices=base_simplices,
        charts=charts,
        embeddings=embeddings,
        simplex_charts=simplex_charts,
        lifts=lifts,
        vertex_charts=vertex_charts,
        lambdas={},
    )
    # one lambda per (top simplex, vertex): the translate that lands in the chosen lift,
    # so the upper simplices share the identity lambda at w
    for sigma in atlas.top_simplices:
        for x in BASE_VERTICES:
            if x not in base_simplices[sigma]:
                continue
            candidates = atlas.between(vertex_charts[x].chart, simplex_charts[sigma])
            atlas.lambdas[(sigma, x)] = next(e for e in candidates if e(vertex_charts[x].point) in lifts[sigma])
    atlas.validate()
    return atlas


def generate_teardrop(n: int, progress: bool = False) -> TeardropFixture:
    """Charts, derived mu tables and documents for the order-n teardrop"""
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise InvalidOrderError(f'the cone point needs order at least 2, got {n!r}')
    atlas = build_teardrop_atlas(n)
    complex_ = derive_complex(atlas, progress=progress)
    logger.info(f'Generated teardrop of order {n}: {len(atlas.charts)} charts, '
                f'{len(complex_.intersections)} intersections')
    return TeardropFixture(
        n=n,
        atlas=atlas,
        complex=complex_,
        complex_document=complex_to_document(complex_, include_implied=True),
        atlas_document=atlas_to_document(atlas),
    )


def nontrivial_mu_values(complex_: OrbifoldComplex) -> List[Tuple[str, Tuple[int, ...]]]:
    """Keys whose table is not the identity on element labels, with the whole table"""
    return [(str(key), table.table)
            for key, table in sorted(complex_.mu_tables.items(), key=lambda kv: str(kv[0]))
            if not table.is_identity]
