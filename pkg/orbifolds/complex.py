"""
The combinatorial orbifold complex.

A complex is a list of top simplices, the lattice of their nonempty
intersections (keyed by subsets of top-simplex identifiers), the isotropy
group attached to each intersection, and the mu transition tables between
those groups. No geometry is kept.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from algebra.groups import FiniteGroup, group_from_spec, group_from_table
from algebra.exceptions import AlgebraError

from .exceptions import ComplexValidationError, MissingMuError, NoSimplexError, UnknownSimplexError

logger = logging.getLogger(__name__)

Subset = FrozenSet[str]


def _names(subset: Iterable[str]) -> str:
    return ','.join(sorted(subset))


@dataclass(frozen=True)
class IntersectionRecord:
    """One nonempty intersection of top simplices and its isotropy group"""
    subset: Subset
    isotropy: FiniteGroup
    dimension: int = -1
    isotropy_name: str = ''

    def __post_init__(self):
        object.__setattr__(self, 'subset', frozenset(self.subset))

    def __str__(self):
        return f'{{{_names(self.subset)}}} with {self.isotropy_name or self.isotropy}'


@dataclass(frozen=True)
class MuKey:
    """Subscripts of mu: the map G_v(tau) -> G_v(rho) for the arrow sigma_from <- sigma_to"""
    tau: Subset
    rho: Subset
    sigma_from: str
    sigma_to: str

    def __post_init__(self):
        object.__setattr__(self, 'tau', frozenset(self.tau))
        object.__setattr__(self, 'rho', frozenset(self.rho))
        if not self.rho:
            raise ComplexValidationError('mu key has an empty rho', key=self)
        if not self.rho <= self.tau:
            raise ComplexValidationError(f'rho {{{_names(self.rho)}}} is not contained in tau {{{_names(self.tau)}}}', key=self)
        if self.sigma_from not in self.rho or self.sigma_to not in self.rho:
            raise ComplexValidationError(f'{self.sigma_from} and {self.sigma_to} must both lie in rho', key=self)

    @property
    def lookup(self) -> Tuple[Subset, Subset, str, str]:
        return self.tau, self.rho, self.sigma_from, self.sigma_to

    def __str__(self):
        return f'mu[{{{_names(self.tau)}}} -> {{{_names(self.rho)}}}, {self.sigma_from} <- {self.sigma_to}]'


@dataclass(frozen=True)
class MuFunction:
    """table[i] is the image of element i"""
    table: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'table', tuple(self.table))

    def __call__(self, g: int) -> int:
        return self.table[g]

    @property
    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    @property
    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.table))

    def compose(self, first: 'MuFunction') -> 'MuFunction':
        """self after first"""
        return MuFunction(tuple(self.table[v] for v in first.table))


class OrbifoldComplex:
    """Top simplices, their intersection lattice, isotropy groups and mu tables"""

    def __init__(self, dim: int, top_simplices: Sequence[str],
                 intersections: Dict[Subset, IntersectionRecord],
                 mu_tables: Dict[MuKey, MuFunction],
                 groups: Optional[Dict[str, FiniteGroup]] = None):
        self.dim = dim
        self.top_simplices = tuple(top_simplices)
        self.intersections = dict(intersections)
        self.mu_tables = dict(mu_tables)
        self.groups = dict(groups or {})
        self.position = {name: i for i, name in enumerate(self.top_simplices)}
        self._lookup = {key.lookup: table for key, table in self.mu_tables.items()}
        self._implied: Dict[Tuple, MuFunction] = {}

    # -- lattice ---------------------------------------------------------

    def subset(self, names: Iterable[str]) -> Subset:
        subset = frozenset(names)
        unknown = sorted(s for s in subset if s not in self.position)
        if unknown:
            raise UnknownSimplexError(f'unknown top simplices: {", ".join(unknown)}')
        return subset

    def sort_key(self, subset: Iterable[str]) -> Tuple[int, ...]:
        return tuple(sorted(self.position[s] for s in subset))

    def ordered(self, subset: Iterable[str]) -> List[str]:
        return sorted(subset, key=self.position.__getitem__)

    def group_of(self, subset: Subset) -> FiniteGroup:
        record = self.intersections.get(subset)
        if record is None:
            raise NoSimplexError(f'{{{_names(subset)}}} has empty intersection')
        return record.isotropy

    def records(self) -> List[IntersectionRecord]:
        """Records in canonical order: by size, then by top-simplex positions"""
        return sorted(self.intersections.values(), key=lambda r: (len(r.subset), self.sort_key(r.subset)))

    # -- mu tables -------------------------------------------------------

    def implied_table(self, tau: Subset, rho: Subset, x: str, y: str) -> Optional[MuFunction]:
        domain, codomain = self.intersections.get(tau), self.intersections.get(rho)
        if domain is None or codomain is None:
            return None
        if domain.isotropy.is_trivial and codomain.isotropy.is_trivial:
            return MuFunction((0,))
        if tau == rho and x == y:
            return MuFunction(tuple(range(domain.isotropy.order)))
        return None

    def table_for(self, tau: Subset, rho: Subset, x: str, y: str) -> MuFunction:
        lookup = (tau, rho, x, y)
        table = self._lookup.get(lookup) or self._implied.get(lookup)
        if table is not None:
            return table
        table = self.implied_table(tau, rho, x, y)
        if table is None:
            raise MissingMuError(f'no mu table for {MuKey(tau, rho, x, y)}', key=lookup)
        self._implied[lookup] = table
        return table

    def has_table(self, tau: Subset, rho: Subset, x: str, y: str) -> bool:
        return (tau, rho, x, y) in self._lookup or self.implied_table(tau, rho, x, y) is not None

    def mu(self, tau: Subset, rho: Subset, x: str, y: str, g: int) -> int:
        return self.table_for(tau, rho, x, y).table[g]

    def required_keys(self, max_degree: int) -> Iterator[Tuple[Subset, Subset, str, str]]:
        """Every key a face map of a simplex of degree <= max_degree + 1 can ask for"""
        for record in self.records():
            tau = record.subset
            if len(tau) > max_degree + 2:
                continue
            candidates = [tau] + [tau - {s} for s in self.ordered(tau)] if len(tau) > 1 else [tau]
            for rho in candidates:
                for x, y in product(self.ordered(rho), repeat=2):
                    yield tau, rho, x, y

    def check_complete(self, max_degree: int):
        for tau, rho, x, y in self.required_keys(max_degree):
            if not self.has_table(tau, rho, x, y):
                raise MissingMuError(f'no mu table for {MuKey(tau, rho, x, y)} '
                                     f'(needed up to degree {max_degree})', key=(tau, rho, x, y))

    def __repr__(self):
        return (f'OrbifoldComplex(dim={self.dim}, top={len(self.top_simplices)}, '
                f'intersections={len(self.intersections)}, mu={len(self.mu_tables)})')


# -- loading -------------------------------------------------------------

def _resolve_group(name: str, groups: Dict[str, FiniteGroup]) -> FiniteGroup:
    if name in groups:
        return groups[name]
    if name.startswith('cyclic:'):
        try:
            group = group_from_spec(name)
        except AlgebraError as e:
            raise ComplexValidationError(f'group {name}: {e}', key=name) from e
        groups[name] = group
        return group
    raise ComplexValidationError(f'unknown group {name!r}', key=name)


def _build_groups(spec: Dict[str, object]) -> Dict[str, FiniteGroup]:
    groups = {}
    for name, entry in spec.items():
        try:
            if isinstance(entry, str):
                groups[name] = group_from_spec(entry)
            else:
                group = group_from_table(entry['mul'], name=name)
                if 'order' in entry and entry['order'] != group.order:
                    raise ComplexValidationError(f'group {name} declares order {entry["order"]} '
                                                 f'but its table has {group.order} rows', key=name)
                groups[name] = group
        except AlgebraError as e:
            raise ComplexValidationError(f'group {name}: {e}', key=name) from e
    return groups


def build_complex(dim: int, top_simplices: Sequence[str], records: Iterable[IntersectionRecord],
                  mu_tables: Dict[MuKey, MuFunction], groups: Optional[Dict[str, FiniteGroup]] = None,
                  max_degree: Optional[int] = None) -> OrbifoldComplex:
    """Assemble a complex and verify every structural invariant"""
    if len(set(top_simplices)) != len(top_simplices):
        raise ComplexValidationError('duplicate top simplex identifiers')
    known = set(top_simplices)
    intersections: Dict[Subset, IntersectionRecord] = {}
    for record in records:
        if not record.subset:
            raise ComplexValidationError('intersection record with an empty subset')
        unknown = record.subset - known
        if unknown:
            raise UnknownSimplexError(f'intersection {{{_names(record.subset)}}} names unknown '
                                      f'top simplices: {_names(unknown)}')
        if record.subset in intersections:
            raise ComplexValidationError(f'duplicate intersection {{{_names(record.subset)}}}', key=record.subset)
        intersections[record.subset] = record

    for sigma in top_simplices:
        if frozenset([sigma]) not in intersections:
            raise ComplexValidationError(f'missing singleton record for {sigma}', key=frozenset([sigma]))
    for subset in intersections:
        for smaller in combinations(sorted(subset), len(subset) - 1):
            if smaller and frozenset(smaller) not in intersections:
                raise ComplexValidationError(f'{{{_names(subset)}}} has a record but {{{_names(smaller)}}} does not',
                                             key=frozenset(smaller))

    for key, table in mu_tables.items():
        for part in (key.tau, key.rho):
            if part not in intersections:
                raise ComplexValidationError(f'{key} references the absent intersection {{{_names(part)}}}', key=key)
        domain = intersections[key.tau].isotropy
        codomain = intersections[key.rho].isotropy
        if len(table.table) != domain.order:
            raise ComplexValidationError(f'{key} has {len(table.table)} entries for a group of order {domain.order}', key=key)
        if any(not 0 <= v < codomain.order for v in table.table):
            raise ComplexValidationError(f'{key} maps outside a group of order {codomain.order}', key=key)
        if not table.is_injective:
            raise ComplexValidationError(f'{key} is not injective: {list(table.table)}', key=key)

    complex_ = OrbifoldComplex(dim, top_simplices, intersections, mu_tables, groups)
    if max_degree is not None:
        complex_.check_complete(max_degree)
    logger.info(f'Built orbifold complex with {len(top_simplices)} top simplices, '
                f'{len(intersections)} intersections and {len(mu_tables)} mu tables')
    return complex_


def load_complex(document: dict, max_degree: Optional[int] = None) -> OrbifoldComplex:
    """
    Build an OrbifoldComplex from a parsed complex document.

    The document is assumed to have passed the JSON schema; everything the
    schema cannot express (group axioms, lattice closure, injectivity and,
    given max_degree, completeness of the mu tables) is checked here.
    """
    groups = _build_groups(document.get('groups', {}))
    top = list(document['topSimplices'])

    records = []
    for entry in document['intersections']:
        name = entry['isotropy']
        records.append(IntersectionRecord(frozenset(entry['subset']), _resolve_group(name, groups),
                                          entry.get('dimension', -1), name))

    mu_tables: Dict[MuKey, MuFunction] = {}
    for entry in document.get('mu', []):
        key = MuKey(frozenset(entry['tau']), frozenset(entry['rho']), entry['from'], entry['to'])
        if key in mu_tables:
            raise ComplexValidationError(f'duplicate table for {key}', key=key)
        mu_tables[key] = MuFunction(tuple(entry['table']))

    return build_complex(document.get('dim', 0), top, records, mu_tables, groups, max_degree)


def complex_to_document(complex_: OrbifoldComplex, include_implied: bool = False) -> dict:
    """Canonical document for a complex; implied tables are left out unless asked for"""
    groups: Dict[str, object] = {}

    def group_name(record: IntersectionRecord) -> str:
        group = record.isotropy
        if group.name.startswith('C') and group.name[1:].isdigit():
            return f'cyclic:{group.order}'
        name = record.isotropy_name or group.name or f'G{len(groups)}'
        if name not in groups:
            groups[name] = {'order': group.order, 'mul': [list(row) for row in group.mul]}
        return name

    intersections = []
    for record in complex_.records():
        entry = {'subset': complex_.ordered(record.subset), 'isotropy': group_name(record)}
        if record.dimension >= 0:
            entry['dimension'] = record.dimension
        intersections.append(entry)

    mu = []
    for key in sorted(complex_.mu_tables, key=lambda k: _key_order(complex_, k)):
        table = complex_.mu_tables[key]
        if not include_implied and complex_.implied_table(*key.lookup) == table:
            continue
        mu.append({
            'tau': complex_.ordered(key.tau),
            'rho': complex_.ordered(key.rho),
            'from': key.sigma_from,
            'to': key.sigma_to,
            'table': list(table.table),
        })

    return {
        'kind': 'orbifold-complex',
        'dim': complex_.dim,
        'topSimplices': list(complex_.top_simplices),
        'groups': groups,
        'intersections': intersections,
        'mu': mu,
    }


def _key_order(complex_: OrbifoldComplex, key: MuKey):
    return (len(key.tau), complex_.sort_key(key.tau), len(key.rho), complex_.sort_key(key.rho),
            complex_.position[key.sigma_from], complex_.position[key.sigma_to])


# -- operations ----------------------------------------------------------

def intersection_of(complex_: OrbifoldComplex, names: Iterable[str]) -> Optional[IntersectionRecord]:
    """The record for the subset, or None when the simplices do not meet"""
    subset = complex_.subset(names)
    if not subset:
        raise ComplexValidationError('intersection_of needs a nonempty subset')
    return complex_.intersections.get(subset)


def mu_apply(complex_: OrbifoldComplex, key: MuKey, g: int) -> int:
    """Image of g under the table for key (supplied or implied)"""
    for part in (key.tau, key.rho):
        complex_.subset(part)
    domain = complex_.group_of(key.tau)
    if not 0 <= g < domain.order:
        raise ValueError(f'element {g} is outside the domain group of {key}')
    return complex_.mu(*key.lookup, g)


@dataclass(frozen=True)
class MuViolation:
    kind: str
    detail: Tuple
    message: str

    def __str__(self):
        return f'{self.kind}: {self.message}'


@dataclass
class MuValidationReport:
    violations: List[MuViolation] = field(default_factory=list)
    checks: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def of_kind(self, kind: str) -> List[MuViolation]:
        return [v for v in self.violations if v.kind == kind]

    def lines(self) -> List[str]:
        return [str(v) for v in self.violations]


def _pairs(complex_: OrbifoldComplex) -> List[Tuple[Subset, Subset]]:
    pairs = {(key.tau, key.rho) for key in complex_.mu_tables}
    for record in complex_.intersections.values():
        tau = record.subset
        pairs.add((tau, tau))
        if len(tau) > 1:
            pairs.update((tau, tau - {s}) for s in tau)
    return sorted(pairs, key=lambda p: (len(p[0]), complex_.sort_key(p[0]), len(p[1]), complex_.sort_key(p[1])))


def validate_mu(complex_: OrbifoldComplex) -> MuValidationReport:
    """
    Check every available mu table against the identity, injectivity,
    multiplicativity and nested-path conditions. Violations are collected,
    never raised.
    """
    report = MuValidationReport()

    for key in sorted(complex_.mu_tables, key=lambda k: _key_order(complex_, k)):
        table = complex_.mu_tables[key]
        report.checks += 1
        if not table.is_injective:
            report.violations.append(MuViolation('injectivity', key.lookup, f'{key} is not injective'))
        if key.tau == key.rho and key.sigma_from == key.sigma_to and not table.is_identity:
            report.violations.append(MuViolation('identity', key.lookup, f'{key} is not the identity'))

    pairs = _pairs(complex_)
    available = set(pairs)

    for tau, rho in pairs:
        domain = complex_.group_of(tau)
        codomain = complex_.group_of(rho)
        members = complex_.ordered(rho)
        for s0, s1, s2 in product(members, repeat=3):
            if not (complex_.has_table(tau, rho, s0, s1) and complex_.has_table(tau, rho, s1, s2)
                    and complex_.has_table(tau, rho, s0, s2)):
                continue
            m01 = complex_.table_for(tau, rho, s0, s1).table
            m12 = complex_.table_for(tau, rho, s1, s2).table
            m02 = complex_.table_for(tau, rho, s0, s2).table
            for h1 in range(domain.order):
                for h2 in range(domain.order):
                    report.checks += 1
                    if codomain.mul[m01[h1]][m12[h2]] != m02[domain.mul[h1][h2]]:
                        detail = (tuple(complex_.ordered(tau)), tuple(members), s0, s1, s2, h1, h2)
                        report.violations.append(MuViolation(
                            'multiplicativity', detail,
                            f'tau={{{_names(tau)}}} rho={{{_names(rho)}}} ({s0},{s1},{s2}) h1={h1} h2={h2}: '
                            f'{m01[h1]}*{m12[h2]} != {m02[domain.mul[h1][h2]]}'))

    for tau, middle in pairs:
        for inner in (p[1] for p in pairs if p[0] == middle):
            if (tau, inner) not in available or (inner, inner) not in available:
                continue
            for x, y in product(complex_.ordered(inner), repeat=2):
                keys = [(tau, middle, x, y), (middle, inner, x, y), (tau, inner, x, y), (inner, inner, x, y)]
                if not all(complex_.has_table(*k) for k in keys):
                    continue
                first, second, direct, last = (complex_.table_for(*k) for k in keys)
                report.checks += 1
                if second.compose(first) != last.compose(direct):
                    detail = (tuple(complex_.ordered(tau)), tuple(complex_.ordered(middle)),
                              tuple(complex_.ordered(inner)), x, y)
                    report.violations.append(MuViolation(
                        'nested-path', detail,
                        f'{{{_names(tau)}}} -> {{{_names(middle)}}} -> {{{_names(inner)}}} ({x} <- {y}) '
                        f'disagrees with the direct route'))

    logger.info(f'Validated mu tables: {report.checks} checks, {len(report.violations)} violations')
    return report
