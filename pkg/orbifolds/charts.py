"""
Combinatorial charts: finite simplicial complexes with a simplicial group
action, and the equivariant embeddings between them.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from algebra.groups import FiniteGroup, is_homomorphism

from .exceptions import ChartInconsistencyError

logger = logging.getLogger(__name__)

Simplex = FrozenSet[str]


def closure(simplices: Iterable[Iterable[str]]) -> FrozenSet[Simplex]:
    """All nonempty faces of the given simplices"""
    faces = set()
    for simplex in simplices:
        simplex = tuple(simplex)
        for size in range(1, len(simplex) + 1):
            faces.update(frozenset(face) for face in combinations(simplex, size))
    return frozenset(faces)


def base_name(vertices: Iterable[str]) -> str:
    """Name of a base-triangulation simplex from its vertex names"""
    return ','.join(sorted(vertices))


@dataclass(frozen=True)
class CombinatorialChart:
    """A lifted star (vertices, simplices) with a group acting on it"""
    name: str
    vertices: Tuple[str, ...]
    simplices: FrozenSet[Simplex]
    group: FiniteGroup
    action: Tuple[Tuple[str, ...], ...]
    vertex_labels: Tuple[str, ...]
    index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'vertices', tuple(self.vertices))
        object.__setattr__(self, 'simplices', frozenset(frozenset(s) for s in self.simplices))
        object.__setattr__(self, 'action', tuple(tuple(row) for row in self.action))
        object.__setattr__(self, 'vertex_labels', tuple(self.vertex_labels))
        object.__setattr__(self, 'index', {v: i for i, v in enumerate(self.vertices)})

    def __hash__(self):
        return hash(self.name)

    def act(self, g: int, vertex: str) -> str:
        return self.action[g][self.index[vertex]]

    def act_simplex(self, g: int, simplex: Iterable[str]) -> Simplex:
        return frozenset(self.act(g, v) for v in simplex)

    def label(self, vertex: str) -> str:
        return self.vertex_labels[self.index[vertex]]

    def base_label(self, simplex: Iterable[str]) -> str:
        return base_name(self.label(v) for v in simplex)

    def sort_key(self, simplex: Iterable[str]) -> Tuple[int, ...]:
        return tuple(sorted(self.index[v] for v in simplex))

    def simplices_labelled(self, label: str) -> List[Simplex]:
        return sorted((s for s in self.simplices if self.base_label(s) == label), key=self.sort_key)

    def validate(self):
        """Raise ChartInconsistencyError unless the chart invariants hold"""
        group, n = self.group, len(self.vertices)
        if len(self.vertex_labels) != n:
            raise ChartInconsistencyError(f'chart {self.name}: {len(self.vertex_labels)} labels for {n} vertices')
        if len(self.action) != group.order:
            raise ChartInconsistencyError(f'chart {self.name}: action has {len(self.action)} rows '
                                          f'for a group of order {group.order}')
        for g, row in enumerate(self.action):
            if sorted(row) != sorted(self.vertices):
                raise ChartInconsistencyError(f'chart {self.name}: element {g} does not permute the vertices')
        if self.action[0] != self.vertices:
            raise ChartInconsistencyError(f'chart {self.name}: the identity moves a vertex')
        for g in range(group.order):
            for h in range(group.order):
                gh = group.mul[g][h]
                for v in self.vertices:
                    if self.act(g, self.act(h, v)) != self.act(gh, v):
                        raise ChartInconsistencyError(f'chart {self.name}: ({g}*{h}).{v} differs from {g}.({h}.{v})')
        for simplex in self.simplices:
            if not simplex <= set(self.vertices):
                raise ChartInconsistencyError(f'chart {self.name}: simplex {sorted(simplex)} has unknown vertices')
            if len({self.label(v) for v in simplex}) != len(simplex):
                raise ChartInconsistencyError(f'chart {self.name}: simplex {sorted(simplex)} repeats a base vertex')
            for g in range(group.order):
                if self.act_simplex(g, simplex) not in self.simplices:
                    raise ChartInconsistencyError(f'chart {self.name}: element {g} does not map '
                                                  f'{sorted(simplex)} to a simplex')
        for v in self.vertices:
            for g in range(group.order):
                if self.label(self.act(g, v)) != self.label(v):
                    raise ChartInconsistencyError(f'chart {self.name}: labels are not constant on the orbit of {v}')
        by_label: Dict[str, List[Simplex]] = {}
        for simplex in self.simplices:
            by_label.setdefault(self.base_label(simplex), []).append(simplex)
        for label, members in by_label.items():
            orbit = {self.act_simplex(g, members[0]) for g in range(group.order)}
            if any(m not in orbit for m in members):
                raise ChartInconsistencyError(f'chart {self.name}: simplices labelled {label} lie in several orbits')


@dataclass(frozen=True)
class ChartEmbedding:
    """Equivariant simplicial embedding with its induced group homomorphism"""
    source: CombinatorialChart
    target: CombinatorialChart
    vertex_map: Dict[str, str]
    group_map: Tuple[int, ...]
    name: str = ''

    def __post_init__(self):
        object.__setattr__(self, 'group_map', tuple(self.group_map))

    def __hash__(self):
        return hash((self.source.name, self.target.name, tuple(sorted(self.vertex_map.items())), self.group_map))

    def __eq__(self, other):
        if not isinstance(other, ChartEmbedding):
            return NotImplemented
        return (self.source.name == other.source.name and self.target.name == other.target.name
                and self.vertex_map == other.vertex_map and self.group_map == other.group_map)

    def __call__(self, vertex: str) -> str:
        return self.vertex_map[vertex]

    def image(self, simplex: Iterable[str]) -> Simplex:
        return frozenset(self.vertex_map[v] for v in simplex)

    def map_group(self, g: int) -> int:
        return self.group_map[g]

    def preimage(self, h: int) -> Optional[int]:
        hits = [g for g, image in enumerate(self.group_map) if image == h]
        return hits[0] if len(hits) == 1 else None

    def describe(self) -> str:
        return self.name or f'{self.source.name}->{self.target.name}'

    def validate(self):
        source, target = self.source, self.target
        if set(self.vertex_map) != set(source.vertices):
            raise ChartInconsistencyError(f'{self.describe()}: vertex map is not defined on every vertex')
        if len(set(self.vertex_map.values())) != len(self.vertex_map):
            raise ChartInconsistencyError(f'{self.describe()}: vertex map is not injective')
        for v, image in self.vertex_map.items():
            if image not in target.index:
                raise ChartInconsistencyError(f'{self.describe()}: {v} maps to unknown vertex {image}')
            if target.label(image) != source.label(v):
                raise ChartInconsistencyError(f'{self.describe()}: {v} and {image} carry different labels')
        for simplex in source.simplices:
            if self.image(simplex) not in target.simplices:
                raise ChartInconsistencyError(f'{self.describe()}: {sorted(simplex)} does not map to a simplex')
        if len(self.group_map) != source.group.order or any(not 0 <= h < target.group.order for h in self.group_map):
            raise ChartInconsistencyError(f'{self.describe()}: group map has the wrong shape')
        if len(set(self.group_map)) != len(self.group_map):
            raise ChartInconsistencyError(f'{self.describe()}: group map is not injective')
        if not is_homomorphism(source.group, target.group, self.group_map):
            raise ChartInconsistencyError(f'{self.describe()}: group map is not a homomorphism')
        for g in range(source.group.order):
            for v in source.vertices:
                if self.vertex_map[source.act(g, v)] != target.act(self.group_map[g], self.vertex_map[v]):
                    raise ChartInconsistencyError(f'{self.describe()}: not equivariant at element {g}, vertex {v}')


def compose(second: ChartEmbedding, first: ChartEmbedding) -> ChartEmbedding:
    """second after first"""
    if first.target.name != second.source.name:
        raise ChartInconsistencyError(f'cannot compose {second.describe()} after {first.describe()}')
    return ChartEmbedding(
        first.source, second.target,
        {v: second.vertex_map[image] for v, image in first.vertex_map.items()},
        tuple(second.group_map[g] for g in first.group_map),
        name=f'({second.describe()})o({first.describe()})',
    )


def translate(h: int, embedding: ChartEmbedding) -> ChartEmbedding:
    """h applied after the embedding: x -> h.emb(x), g -> h emb(g) h^-1"""
    target = embedding.target
    group = target.group
    h_inv = group.inverse(h)
    return ChartEmbedding(
        embedding.source, target,
        {v: target.act(h, image) for v, image in embedding.vertex_map.items()},
        tuple(group.mul[group.mul[h][image]][h_inv] for image in embedding.group_map),
        name=embedding.name,
    )


def orbit(embedding: ChartEmbedding) -> List[ChartEmbedding]:
    """Distinct translates of an embedding, identity translate first"""
    seen: List[ChartEmbedding] = []
    for h in range(embedding.target.group.order):
        candidate = translate(h, embedding)
        if candidate not in seen:
            seen.append(candidate)
    return seen


def identity_embedding(chart: CombinatorialChart) -> ChartEmbedding:
    return ChartEmbedding(chart, chart, {v: v for v in chart.vertices}, tuple(range(chart.group.order)),
                          name=f'{chart.name}->{chart.name}')


def match_embeddings(lam: ChartEmbedding, mu_emb: ChartEmbedding) -> int:
    """The unique h in the target group with mu_emb = h . lam on every vertex"""
    if lam.source.name != mu_emb.source.name or lam.target.name != mu_emb.target.name:
        raise ChartInconsistencyError(f'{lam.describe()} and {mu_emb.describe()} do not share source and target')
    target = lam.target
    hits = [h for h in range(target.group.order)
            if all(target.act(h, lam(v)) == mu_emb(v) for v in lam.source.vertices)]
    if not hits:
        raise ChartInconsistencyError(f'no element of {target.name} carries {lam.describe()} to {mu_emb.describe()}')
    if len(hits) > 1:
        raise ChartInconsistencyError(f'{len(hits)} elements of {target.name} carry {lam.describe()} to '
                                      f'{mu_emb.describe()}; the action is not effective')
    return hits[0]


def chart_from_spec(name: str, group: FiniteGroup, vertices: Sequence[str], labels: Sequence[str],
                    maximal_simplices: Iterable[Iterable[str]], action: Sequence[Sequence[str]]) -> CombinatorialChart:
    """Build and validate a chart from its maximal simplices"""
    chart = CombinatorialChart(name, tuple(vertices), closure(maximal_simplices), group,
                               tuple(tuple(row) for row in action), tuple(labels))
    chart.validate()
    return chart
