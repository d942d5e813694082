"""
Chart atlases over a base triangulation.

An atlas records, for every top simplex sigma, the chart it lives in and its
chosen lift; for every base vertex x, a small chart around x with its lifted
point; every embedding between charts; and the chosen embeddings
lambda_{sigma,x} from the chart of x into the chart of sigma.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Tuple

from algebra.exceptions import AlgebraError
from algebra.groups import FiniteGroup, group_from_spec, group_from_table

from .charts import ChartEmbedding, CombinatorialChart, Simplex, base_name, closure
from .exceptions import ChartInconsistencyError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VertexChart:
    """The chart U_x around a base vertex and the lifted point of x in it"""
    chart: str
    point: str


@dataclass
class Atlas:
    base_vertices: Tuple[str, ...]
    top_simplices: Tuple[str, ...]
    base_simplices: Dict[str, FrozenSet[str]]
    charts: Dict[str, CombinatorialChart]
    embeddings: List[ChartEmbedding]
    simplex_charts: Dict[str, str]
    lifts: Dict[str, Simplex]
    vertex_charts: Dict[str, VertexChart]
    lambdas: Dict[Tuple[str, str], ChartEmbedding]
    dim: int = 2
    _between: Dict[Tuple[str, str], List[ChartEmbedding]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._between = {}
        for embedding in self.embeddings:
            self._between.setdefault((embedding.source.name, embedding.target.name), []).append(embedding)

    # -- lookups ---------------------------------------------------------

    @property
    def chart_order(self) -> List[str]:
        return list(self.charts)

    def chart_of(self, sigma: str) -> CombinatorialChart:
        return self.charts[self.simplex_charts[sigma]]

    def vertex_chart(self, x: str) -> CombinatorialChart:
        return self.charts[self.vertex_charts[x].chart]

    def point(self, x: str) -> str:
        return self.vertex_charts[x].point

    def between(self, source: str, target: str) -> List[ChartEmbedding]:
        return self._between.get((source, target), [])

    def lam(self, sigma: str, x: str) -> ChartEmbedding:
        try:
            return self.lambdas[(sigma, x)]
        except KeyError:
            raise ChartInconsistencyError(f'no chosen embedding lambda for ({sigma}, {x})')

    def intersection(self, subset: Iterable[str]) -> FrozenSet[str]:
        """Base vertices common to every top simplex in the subset"""
        subset = list(subset)
        common = set(self.base_simplices[subset[0]])
        for sigma in subset[1:]:
            common &= self.base_simplices[sigma]
        return frozenset(common)

    def max_vertex(self, subset: Iterable[str]) -> str:
        """v(tau): largest isotropy group, earlier base vertex on ties"""
        common = self.intersection(subset)
        if not common:
            raise ChartInconsistencyError(f'{sorted(subset)} do not meet')
        ordered = [x for x in self.base_vertices if x in common]
        return max(ordered, key=lambda x: (self.vertex_chart(x).group.order, -ordered.index(x)))

    def isotropy(self, subset: Iterable[str]) -> FiniteGroup:
        return self.vertex_chart(self.max_vertex(subset)).group

    # -- checks ----------------------------------------------------------

    def validate(self):
        """Re-check every chart, embedding, lift and lambda"""
        for chart in self.charts.values():
            chart.validate()
        for embedding in self.embeddings:
            embedding.validate()
        for sigma in self.top_simplices:
            chart = self.chart_of(sigma)
            lift = self.lifts[sigma]
            if lift not in chart.simplices:
                raise ChartInconsistencyError(f'lift of {sigma} is not a simplex of {chart.name}')
            if chart.base_label(lift) != base_name(self.base_simplices[sigma]):
                raise ChartInconsistencyError(f'lift of {sigma} is labelled {chart.base_label(lift)}')
        for x, vertex_chart in self.vertex_charts.items():
            chart = self.charts[vertex_chart.chart]
            if chart.label(vertex_chart.point) != x:
                raise ChartInconsistencyError(f'point {vertex_chart.point} of the chart of {x} is labelled '
                                              f'{chart.label(vertex_chart.point)}')
            if any(chart.act(g, vertex_chart.point) != vertex_chart.point for g in range(chart.group.order)):
                raise ChartInconsistencyError(f'the group of the chart of {x} does not fix its point')
        for (sigma, x), lam in self.lambdas.items():
            if lam.source.name != self.vertex_charts[x].chart or lam.target.name != self.simplex_charts[sigma]:
                raise ChartInconsistencyError(f'lambda ({sigma}, {x}) joins the wrong charts')
            if lam(self.point(x)) not in self.lifts[sigma]:
                raise ChartInconsistencyError(f'lambda ({sigma}, {x}) does not land in the lift of {sigma}')
        for sigma in self.top_simplices:
            for x in self.base_simplices[sigma]:
                self.lam(sigma, x)


# -- documents -----------------------------------------------------------

def _group_spec(group: FiniteGroup):
    if group.name.startswith('C') and group.name[1:].isdigit():
        return f'cyclic:{group.order}'
    return {'order': group.order, 'mul': [list(row) for row in group.mul]}


def atlas_to_document(atlas: Atlas) -> dict:
    names = [e.name or f'e{i}' for i, e in enumerate(atlas.embeddings)]

    def name_of(embedding):
        return names[atlas.embeddings.index(embedding)]

    charts = []
    for chart in atlas.charts.values():
        maximal = [s for s in chart.simplices if not any(s < t for t in chart.simplices)]
        charts.append({
            'name': chart.name,
            'group': _group_spec(chart.group),
            'vertices': [{'name': v, 'label': chart.label(v)} for v in chart.vertices],
            'simplices': [[v for v in chart.vertices if v in s] for s in sorted(maximal, key=chart.sort_key)],
            'action': [list(row) for row in chart.action],
        })
    return {
        'kind': 'orbifold-atlas',
        'dim': atlas.dim,
        'baseVertices': list(atlas.base_vertices),
        'topSimplices': [{
            'name': sigma,
            'vertices': [x for x in atlas.base_vertices if x in atlas.base_simplices[sigma]],
            'chart': atlas.simplex_charts[sigma],
        } for sigma in atlas.top_simplices],
        'charts': charts,
        'embeddings': [{
            'name': names[i],
            'source': e.source.name,
            'target': e.target.name,
            'vertexMap': {v: e.vertex_map[v] for v in e.source.vertices},
            'groupMap': list(e.group_map),
        } for i, e in enumerate(atlas.embeddings)],
        'lifts': {sigma: [v for v in atlas.chart_of(sigma).vertices if v in atlas.lifts[sigma]]
                  for sigma in atlas.top_simplices},
        'vertexCharts': {x: {'chart': vc.chart, 'point': vc.point} for x, vc in atlas.vertex_charts.items()},
        'lambdas': [{'simplex': sigma, 'vertex': x, 'embedding': name_of(lam)}
                    for (sigma, x), lam in atlas.lambdas.items()],
    }


def load_atlas(document: dict) -> Atlas:
    """Rebuild an Atlas from its document and re-check every invariant"""
    charts: Dict[str, CombinatorialChart] = {}
    for entry in document['charts']:
        spec = entry['group']
        try:
            group = group_from_spec(spec) if isinstance(spec, str) else group_from_table(spec['mul'], name=entry['name'])
        except AlgebraError as e:
            raise ChartInconsistencyError(f'chart {entry["name"]}: {e}') from e
        vertices = [v['name'] for v in entry['vertices']]
        labels = [v['label'] for v in entry['vertices']]
        if entry['name'] in charts:
            raise ChartInconsistencyError(f'duplicate chart {entry["name"]}')
        charts[entry['name']] = CombinatorialChart(entry['name'], tuple(vertices), closure(entry['simplices']),
                                                   group, tuple(tuple(r) for r in entry['action']), tuple(labels))

    def chart(name):
        if name not in charts:
            raise ChartInconsistencyError(f'unknown chart {name!r}')
        return charts[name]

    embeddings, by_name = [], {}
    for entry in document['embeddings']:
        embedding = ChartEmbedding(chart(entry['source']), chart(entry['target']), dict(entry['vertexMap']),
                                   tuple(entry['groupMap']), name=entry['name'])
        if embedding.name in by_name:
            raise ChartInconsistencyError(f'duplicate embedding name {embedding.name}')
        by_name[embedding.name] = embedding
        embeddings.append(embedding)

    lambdas = {}
    for entry in document['lambdas']:
        if entry['embedding'] not in by_name:
            raise ChartInconsistencyError(f'lambda ({entry["simplex"]}, {entry["vertex"]}) names an unknown embedding')
        lambdas[(entry['simplex'], entry['vertex'])] = by_name[entry['embedding']]

    tops = document['topSimplices']
    for x, vc in document['vertexCharts'].items():
        chart(vc['chart'])
    for t in tops:
        chart(t['chart'])
    atlas = Atlas(
        base_vertices=tuple(document['baseVertices']),
        top_simplices=tuple(t['name'] for t in tops),
        base_simplices={t['name']: frozenset(t['vertices']) for t in tops},
        charts=charts,
        embeddings=embeddings,
        simplex_charts={t['name']: t['chart'] for t in tops},
        lifts={sigma: frozenset(vertices) for sigma, vertices in document['lifts'].items()},
        vertex_charts={x: VertexChart(vc['chart'], vc['point']) for x, vc in document['vertexCharts'].items()},
        lambdas=lambdas,
        dim=document.get('dim', 2),
    )
    missing = [sigma for sigma in atlas.top_simplices if sigma not in atlas.lifts]
    if missing:
        raise ChartInconsistencyError(f'no lift for {", ".join(missing)}')
    unknown = sorted({x for vs in atlas.base_simplices.values() for x in vs} - set(atlas.vertex_charts))
    if unknown:
        raise ChartInconsistencyError(f'no vertex chart for {", ".join(unknown)}')
    atlas.validate()
    logger.info(f'Loaded atlas with {len(charts)} charts and {len(embeddings)} embeddings')
    return atlas
