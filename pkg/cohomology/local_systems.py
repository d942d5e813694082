"""
Local systems on S: one free coefficient module and an invertible twist per
nondegenerate 1-simplex. The twist of sigma_0 <-g- sigma_1 carries
coefficients at sigma_1 to coefficients at sigma_0.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from algebra.exceptions import AlgebraError
from algebra.matrices import ExactMatrix
from algebra.rings import Ring, ZZ, parse_ring
from orbifolds.complex import OrbifoldComplex
from orbifolds.exceptions import OrbifoldError
from orbifolds.simplicial import OrbSimplex, is_degenerate, simplicial_set

from .exceptions import InvalidTwistError, UnknownEdgeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoefficientModule:
    ring: Ring = ZZ
    rank: int = 1

    def __post_init__(self):
        if isinstance(self.rank, bool) or not isinstance(self.rank, int) or self.rank < 0:
            raise InvalidTwistError(f'module rank must be a nonnegative integer, got {self.rank!r}')

    def identity(self) -> ExactMatrix:
        return ExactMatrix.identity(self.ring, self.rank)

    def __str__(self):
        if self.rank == 1:
            return self.ring.label
        return f'{self.ring.label}^{self.rank}'


@dataclass
class LocalSystem:
    module: CoefficientModule
    twists: Dict[OrbSimplex, ExactMatrix] = field(default_factory=dict)
    name: str = ''

    @property
    def is_trivial(self) -> bool:
        return all(m.is_identity() for m in self.twists.values())

    def non_identity(self) -> List[OrbSimplex]:
        return [edge for edge, m in self.twists.items() if not m.is_identity()]


def _edges(complex_: OrbifoldComplex) -> List[OrbSimplex]:
    return simplicial_set(complex_).simplices(1)


def trivial_system(complex_: OrbifoldComplex, module: CoefficientModule) -> LocalSystem:
    identity = module.identity()
    return LocalSystem(module, {edge: identity for edge in _edges(complex_)}, name='trivial')


def gauge_system(complex_: OrbifoldComplex, module: CoefficientModule,
                 frame: Dict[str, ExactMatrix]) -> LocalSystem:
    """twist(sigma_0 <- sigma_1) = P_sigma_0 P_sigma_1^-1 for one frame P per top simplex"""
    inverses = {}
    for sigma in complex_.top_simplices:
        matrix = frame.get(sigma, module.identity())
        _check_matrix(module, matrix, f'frame of {sigma}')
        inverses[sigma] = matrix.inverse()
    twists = {}
    for edge in _edges(complex_):
        x, y = edge.sigmas
        twists[edge] = frame.get(x, module.identity()) @ inverses[y]
    return LocalSystem(module, twists, name='gauge')


def _check_matrix(module: CoefficientModule, matrix: ExactMatrix, what: str):
    if matrix.ring != module.ring:
        raise InvalidTwistError(f'{what} is over {matrix.ring.label}, not {module.ring.label}')
    if matrix.shape != (module.rank, module.rank):
        raise InvalidTwistError(f'{what} is {matrix.rows}x{matrix.cols}, expected {module.rank}x{module.rank}')
    if not matrix.is_invertible():
        raise InvalidTwistError(f'{what} is not invertible over {module.ring.label} '
                                f'(determinant {matrix.determinant()})')


def twist_of(system: LocalSystem, edge: OrbSimplex) -> ExactMatrix:
    if edge.degree != 1:
        raise UnknownEdgeError(f'{edge} is not a 1-simplex')
    if is_degenerate(edge):
        return system.module.identity()
    try:
        return system.twists[edge]
    except KeyError:
        raise UnknownEdgeError(f'{edge} is not an edge of this local system')


def with_twists(complex_: OrbifoldComplex, module: CoefficientModule,
                twists: Dict[OrbSimplex, ExactMatrix], name: str = '') -> LocalSystem:
    """Identity everywhere except on the given edges"""
    system = trivial_system(complex_, module)
    for edge, matrix in twists.items():
        if edge not in system.twists:
            raise UnknownEdgeError(f'{edge} is not a nondegenerate 1-simplex of the complex')
        _check_matrix(module, matrix, f'twist of {edge}')
        system.twists[edge] = matrix
    system.name = name
    return system


def load_local_system(document: dict, complex_: OrbifoldComplex) -> LocalSystem:
    """Build a LocalSystem from a schema-checked local-system document"""
    try:
        ring = parse_ring(document['ring'])
    except AlgebraError as e:
        raise InvalidTwistError(str(e)) from e
    module = CoefficientModule(ring, document['rank'])
    twists = {}
    for entry in document.get('twists', []):
        edge = OrbSimplex(tuple(entry['edge']['sigmas']), (entry['edge']['g'],))
        try:
            simplicial_set(complex_).check(edge)
        except (OrbifoldError, ValueError) as e:
            raise UnknownEdgeError(f'{edge}: {e}') from e
        if edge in twists:
            raise InvalidTwistError(f'two twists given for {edge}')
        rows = entry['matrix']
        if len(rows) != module.rank or any(len(row) != module.rank for row in rows):
            raise InvalidTwistError(f'twist of {edge} is not {module.rank}x{module.rank}')
        try:
            matrix = ExactMatrix.from_rows(ring, [[ring.from_json(v) for v in row] for row in rows], module.rank)
        except (AlgebraError, ValueError, ZeroDivisionError) as e:
            raise InvalidTwistError(f'twist of {edge}: {e}') from e
        if is_degenerate(edge):
            if not matrix.is_identity():
                raise InvalidTwistError(f'{edge} is degenerate; its twist is the identity')
            continue
        twists[edge] = matrix
    system = with_twists(complex_, module, twists, name='document')
    logger.info(f'Loaded local system over {module} with {len(system.non_identity())} non-identity twists')
    return system


def local_system_to_document(system: LocalSystem) -> dict:
    ring = system.module.ring
    return {
        'kind': 'local-system',
        'ring': ring.spec,
        'rank': system.module.rank,
        'default': 'identity',
        'twists': [{
            'edge': {'sigmas': list(edge.sigmas), 'g': edge.arrows[0]},
            'matrix': [[ring.to_json(v) for v in row] for row in matrix.to_lists()],
        } for edge, matrix in system.twists.items() if not matrix.is_identity()],
    }


# -- coherence -----------------------------------------------------------

@dataclass(frozen=True)
class CoherenceFailure:
    simplex: OrbSimplex
    composite: ExactMatrix
    direct: ExactMatrix

    def __str__(self):
        return (f'{self.simplex}: twist of the long edge is {self.direct.to_lists()} '
                f'but the two short edges compose to {self.composite.to_lists()}')


@dataclass
class CoherenceReport:
    failures: List[CoherenceFailure] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> List[str]:
        return [str(f) for f in self.failures]


def validate_coherence(system: LocalSystem, complex_: OrbifoldComplex,
                       max_degree: Optional[int] = None) -> CoherenceReport:
    """
    twist(d1 x) = twist(d2 x) twist(d0 x) on every nondegenerate 2-simplex x.
    Nothing is checked when the cochain complex stops below degree 1.
    """
    report = CoherenceReport()
    if max_degree is not None and max_degree < 1:
        return report
    sset = simplicial_set(complex_)
    for x in sset.simplices(2):
        d0, d1, d2 = sset.faces(x)
        composite = twist_of(system, d2) @ twist_of(system, d0)
        direct = twist_of(system, d1)
        report.checked += 1
        if composite != direct:
            report.failures.append(CoherenceFailure(x, composite, direct))
    logger.info(f'Coherence: {report.checked} 2-simplices checked, {len(report.failures)} failures')
    return report
