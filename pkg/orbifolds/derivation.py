"""
Deriving mu tables from chart data.

For an arrow sigma_0 <- sigma_1 and nested intersections T' of T, mu maps
G_v -> G_w where v = v(T) and w = v(T'). One derivation step takes a chart
W containing a lift of the base simplex theta spanned by v and w, embeddings
gamma_i of W into the charts of sigma_i, and embeddings alpha, beta of the
vertex charts of v and w into W. A subdivision of theta gives a chain of
steps whose tables compose.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence

from tqdm import tqdm

from algebra.groups import FiniteGroup

from .atlas import Atlas
from .charts import ChartEmbedding, CombinatorialChart, Simplex, base_name, compose, match_embeddings
from .complex import IntersectionRecord, MuFunction, MuKey, OrbifoldComplex, build_complex
from .exceptions import ChainMismatchError, DerivationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MuDerivationConfig:
    """The charts and embeddings of one derivation step"""
    chart: CombinatorialChart
    theta: Simplex
    gamma0: ChartEmbedding
    gamma1: ChartEmbedding
    alpha: ChartEmbedding
    beta: ChartEmbedding
    lambda0: ChartEmbedding
    lambda1: ChartEmbedding
    chi0: ChartEmbedding
    chi1: ChartEmbedding
    start_point: str
    end_point: str
    lift0: Simplex
    lift1: Simplex

    @property
    def domain(self) -> FiniteGroup:
        return self.alpha.source.group

    @property
    def codomain(self) -> FiniteGroup:
        return self.beta.source.group

    def validate(self):
        if self.alpha(self.start_point) not in self.theta or self.beta(self.end_point) not in self.theta:
            raise DerivationError(f'alpha or beta misses the lifted edge {sorted(self.theta)} in {self.chart.name}')
        if not self.gamma0.image(self.theta) <= self.lift0:
            raise DerivationError(f'gamma0 does not carry {sorted(self.theta)} into the first lift')
        if not self.gamma1.image(self.theta) <= self.lift1:
            raise DerivationError(f'gamma1 does not carry {sorted(self.theta)} into the second lift')


def _element_through(lam: ChartEmbedding, other: ChartEmbedding) -> int:
    """g in the source group with other = lam . g"""
    h = match_embeddings(lam, other)
    g = lam.preimage(h)
    if g is None:
        raise DerivationError(f'{other.describe()} differs from {lam.describe()} by {h}, '
                              f'which is not in the image of the source group')
    return g


def derive_mu_single(cfg: MuDerivationConfig) -> MuFunction:
    """mu(k) = h0 . beta^-1(alpha(g0^-1 k g1)) . h1^-1"""
    cfg.validate()
    domain, codomain = cfg.domain, cfg.codomain
    g0 = _element_through(cfg.lambda0, compose(cfg.gamma0, cfg.alpha))
    g1 = _element_through(cfg.lambda1, compose(cfg.gamma1, cfg.alpha))
    h0 = _element_through(cfg.chi0, compose(cfg.gamma0, cfg.beta))
    h1 = _element_through(cfg.chi1, compose(cfg.gamma1, cfg.beta))

    table = []
    h1_inv = codomain.inverse(h1)
    for k in range(domain.order):
        ell = cfg.alpha.map_group(domain.product(domain.inverse(g0), k, g1))
        hits = [m for m in range(codomain.order) if cfg.beta.map_group(m) == ell]
        if not hits:
            raise DerivationError(f'element {ell} of {cfg.chart.name} fixes alpha of the start point but is '
                                  f'not in the image of beta; isotropy is not monotone along the lifted edge')
        if len(hits) > 1:
            raise DerivationError(f'element {ell} of {cfg.chart.name} has {len(hits)} preimages under beta')
        table.append(codomain.product(h0, hits[0], h1_inv))
    return MuFunction(tuple(table))


def derive_mu_chain(cfgs: Sequence[MuDerivationConfig]) -> MuFunction:
    """Compose the steps of a subdivided edge, first step first"""
    if not cfgs:
        raise ChainMismatchError('empty derivation chain')
    for index, (before, after) in enumerate(zip(cfgs, cfgs[1:])):
        if before.codomain != after.domain:
            raise ChainMismatchError(f'step {index} ends in {before.codomain} but step {index + 1} '
                                     f'starts from {after.domain}')
    result = derive_mu_single(cfgs[0])
    for cfg in cfgs[1:]:
        result = derive_mu_single(cfg).compose(result)
    return result


# -- choosing configurations ---------------------------------------------

def _first_landing(embeddings: Iterable[ChartEmbedding], point: str, theta: Simplex) -> Optional[ChartEmbedding]:
    return next((e for e in embeddings if e(point) in theta), None)


def step_config(atlas: Atlas, x: str, y: str, start: str, end: str,
                charts: Optional[Sequence[str]] = None) -> MuDerivationConfig:
    """
    The first configuration, in chart order, for the arrow x <- y along the
    base simplex from start to end.
    """
    label = base_name({start, end})
    source_x, source_y = atlas.simplex_charts[x], atlas.simplex_charts[y]
    start_chart, end_chart = atlas.vertex_charts[start].chart, atlas.vertex_charts[end].chart
    lift0, lift1 = atlas.lifts[x], atlas.lifts[y]

    for name in charts or atlas.chart_order:
        chart = atlas.charts[name]
        into0, into1 = atlas.between(name, source_x), atlas.between(name, source_y)
        alphas, betas = atlas.between(start_chart, name), atlas.between(end_chart, name)
        if not (into0 and into1 and alphas and betas):
            continue
        for theta in chart.simplices_labelled(label):
            gamma0 = next((g for g in into0 if g.image(theta) <= lift0), None)
            gamma1 = next((g for g in into1 if g.image(theta) <= lift1), None)
            alpha = _first_landing(alphas, atlas.point(start), theta)
            beta = _first_landing(betas, atlas.point(end), theta)
            if None in (gamma0, gamma1, alpha, beta):
                continue
            return MuDerivationConfig(
                chart=chart, theta=theta, gamma0=gamma0, gamma1=gamma1, alpha=alpha, beta=beta,
                lambda0=atlas.lam(x, start), lambda1=atlas.lam(y, start),
                chi0=atlas.lam(x, end), chi1=atlas.lam(y, end),
                start_point=atlas.point(start), end_point=atlas.point(end),
                lift0=lift0, lift1=lift1,
            )
    raise DerivationError(f'no chart carries the arrow {x} <- {y} along {label}')


def config_for(atlas: Atlas, key: MuKey) -> MuDerivationConfig:
    start = atlas.max_vertex(key.tau)
    end = atlas.max_vertex(key.rho)
    return step_config(atlas, key.sigma_from, key.sigma_to, start, end)


def subdivided_configs(atlas: Atlas, key: MuKey) -> List[MuDerivationConfig]:
    """Two steps: stay at v inside its own chart, then travel from v to w"""
    start = atlas.max_vertex(key.tau)
    end = atlas.max_vertex(key.rho)
    own = [atlas.vertex_charts[start].chart]
    return [
        step_config(atlas, key.sigma_from, key.sigma_to, start, start, charts=own),
        step_config(atlas, key.sigma_from, key.sigma_to, start, end),
    ]


# -- whole complexes -----------------------------------------------------

def all_keys(atlas: Atlas, subsets: Iterable[frozenset]) -> List[MuKey]:
    order = {s: i for i, s in enumerate(atlas.top_simplices)}

    def ordered(subset):
        return sorted(subset, key=order.__getitem__)

    keys = []
    for tau in subsets:
        members = ordered(tau)
        for size in range(1, len(members) + 1):
            for rho in combinations(members, size):
                for x in rho:
                    for y in rho:
                        keys.append(MuKey(tau, frozenset(rho), x, y))
    return keys


def meeting_subsets(atlas: Atlas) -> List[frozenset]:
    """Every nonempty subset of top simplices with a common base vertex"""
    tops = list(atlas.top_simplices)
    found = []
    for size in range(1, len(tops) + 1):
        for subset in combinations(tops, size):
            if atlas.intersection(subset):
                found.append(frozenset(subset))
    return found


def derive_complex(atlas: Atlas, progress: bool = False) -> OrbifoldComplex:
    """
    The orbifold complex of an atlas: one record per meeting subset, with
    isotropy G_v(T), and a derived table for every key T' of T, x, y in T'.
    """
    subsets = meeting_subsets(atlas)
    records = []
    for subset in subsets:
        vertex = atlas.max_vertex(subset)
        group = atlas.vertex_chart(vertex).group
        common = atlas.intersection(subset)
        records.append(IntersectionRecord(subset, group, len(common) - 1, f'cyclic:{group.order}'
                                          if group.name == f'C{group.order}' else group.name))

    tables: Dict[MuKey, MuFunction] = {}
    keys = all_keys(atlas, subsets)
    for key in tqdm(keys, desc='deriving mu tables', unit='table', disable=not progress):
        tables[key] = derive_mu_single(config_for(atlas, key))
    logger.info(f'Derived {len(tables)} mu tables from {len(atlas.charts)} charts')

    groups = {r.isotropy_name: r.isotropy for r in records}
    return build_complex(atlas.dim, atlas.top_simplices, records, tables, groups)
