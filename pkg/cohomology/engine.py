"""
The twisted cochain complex of S and its cohomology.

A k-cochain assigns to every k-simplex s a module element housed at
sigma_0(s). The differential is

    (dc)(s) = twist(leading edge of s) c(d_0 s) + sum_{i>=1} (-1)^i c(d_i s)

In the normalized complex only nondegenerate simplices carry basis vectors
and cochains vanish on degenerate faces.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterator, List, Optional, Tuple

from tqdm import tqdm

from algebra.exceptions import NotAComplexError
from algebra.homology import complex_cohomology
from algebra.invariants import ModuleInvariants
from algebra.matrices import ExactMatrix
from algebra.reduction import compress_rows
from orbifolds.complex import OrbifoldComplex
from orbifolds.simplicial import BasisIndex, OrbSimplex, apply_rules, simplicial_set

from .exceptions import IncoherentSystemError, ResourceCapError
from .local_systems import LocalSystem, twist_of, validate_coherence

logger = logging.getLogger(__name__)


@dataclass
class CochainComplexSlice:
    degree: int
    basis: List[OrbSimplex]
    delta: ExactMatrix
    targets: Optional[List[OrbSimplex]]
    rank: int = 1

    @property
    def compressed(self) -> bool:
        return self.targets is None

    @property
    def size(self) -> int:
        return len(self.basis)


def basis_sizes(complex_: OrbifoldComplex, max_degree: int, rank: int = 1,
                normalized: bool = True) -> List[int]:
    """Cochain ranks r |S_k| for k = 0 .. max_degree + 1, counted without enumerating"""
    sset = simplicial_set(complex_)
    return [rank * sset.count(k, normalized=normalized) for k in range(max_degree + 2)]


def check_basis_sizes(complex_: OrbifoldComplex, max_degree: int, rank: int, normalized: bool = True,
                      cap: Optional[int] = None, warn_columns: Optional[int] = None) -> Tuple[List[int], List[str]]:
    """Raise ResourceCapError past the cap; return the sizes and any warnings"""
    sizes = basis_sizes(complex_, max_degree, rank, normalized)
    warnings = []
    for k, size in enumerate(sizes):
        if cap is not None and size > cap:
            raise ResourceCapError(f'degree {k} cochains have {size} basis elements, over the cap of {cap}',
                                   degree=k, size=size)
        if warn_columns is not None and size > warn_columns:
            warnings.append(f'degree {k} cochains have {size} basis elements (warning threshold {warn_columns})')
    for line in warnings:
        logger.warning(line)
    return sizes, warnings


def coboundary_rows(complex_: OrbifoldComplex, system: LocalSystem, k: int, normalized: bool = True,
                    columns: Optional[BasisIndex] = None, progress: bool = False) -> Iterator[Dict[int, object]]:
    """Rows of delta^k, r for each (k+1)-simplex in the order simplices(k + 1) lists them"""
    sset = simplicial_set(complex_)
    if columns is None:
        columns = sset.basis_index(k, normalized)
    r = system.module.rank
    reduce = system.module.ring.reduce
    twisted = not system.is_trivial
    blocks: Dict[Tuple[Tuple[str, ...], Tuple[int, ...]], ExactMatrix] = {}
    strings = sset.sigma_strings(k + 1)
    for sigmas in tqdm(strings, desc=f'rows of delta^{k}', unit='string', disable=not progress):
        order = sset.group(sigmas).order
        ranges = [range(1, order) if normalized and a == b else range(order)
                  for a, b in zip(sigmas, sigmas[1:])]
        faces = []
        for j in range(k + 2):
            remaining, rules = sset.plan(sigmas, j)
            faces.append((j, rules, columns.block(remaining), -1 if j % 2 else 1))
        for arrows in product(*ranges):
            rows = [{} for _ in range(r)]
            for j, rules, layout, sign in faces:
                col = columns.locate(layout, apply_rules(rules, arrows))
                if col is None:
                    continue
                if j == 0 and twisted:
                    edge = sset.leading_arrow(sigmas, arrows)
                    block = blocks.get(edge)
                    if block is None:
                        block = blocks[edge] = twist_of(system, OrbSimplex(*edge))
                    for a, b, value in block.entries():
                        rows[a][r * col + b] = reduce(rows[a].get(r * col + b, 0) + value)
                else:
                    for a in range(r):
                        rows[a][r * col + a] = reduce(rows[a].get(r * col + a, 0) + sign)
            for row in rows:
                yield {c: v for c, v in row.items() if v != 0}


def assemble(complex_: OrbifoldComplex, system: LocalSystem, max_degree: int,
             normalized: bool = True, progress: bool = False,
             compress_top: bool = False) -> List[CochainComplexSlice]:
    """
    Slices for degrees 0 .. max_degree with no coherence check; callers run validate_coherence first.

    With compress_top the rows of delta^max_degree are streamed into a matrix
    with the same row span, so H^max_degree is unchanged but the top slice
    has no targets.
    """
    sset = simplicial_set(complex_)
    r = system.module.rank
    ring = system.module.ring
    top = max_degree + 1 if not compress_top else max_degree
    bases = [sset.simplices(k, normalized=normalized, progress=progress) for k in range(top + 1)]
    for k, basis in enumerate(bases):
        logger.info(f'Degree {k}: {len(basis)} {"nondegenerate " if normalized else ""}simplices')
    if compress_top:
        logger.info(f'Degree {max_degree + 1}: {sset.count(max_degree + 1, normalized)} '
                    f'{"nondegenerate " if normalized else ""}simplices, streamed')

    slices = []
    for k in range(max_degree + 1):
        columns = sset.basis_index(k, normalized)
        rows = coboundary_rows(complex_, system, k, normalized, columns, progress)
        if compress_top and k == max_degree:
            delta = compress_rows(ring, r * columns.size, rows, progress=progress)
            slices.append(CochainComplexSlice(k, bases[k], delta, None, r))
            continue
        data = list(rows)
        delta = ExactMatrix(ring, len(data), r * columns.size, data)
        slices.append(CochainComplexSlice(k, bases[k], delta, bases[k + 1], r))
    return slices


def require_coherent(complex_: OrbifoldComplex, system: LocalSystem, max_degree: int):
    report = validate_coherence(system, complex_, max_degree)
    if not report.ok:
        raise IncoherentSystemError(f'local system is not coherent on {len(report.failures)} 2-simplices; '
                                    f'run validate_coherence for the full list', report=report)


def build_cochain_matrices(complex_: OrbifoldComplex, system: LocalSystem, max_degree: int,
                           progress: bool = False, compress_top: bool = False) -> List[CochainComplexSlice]:
    """Normalized slices for degrees 0 .. max_degree (bases enumerated up to max_degree + 1)"""
    require_coherent(complex_, system, max_degree)
    return assemble(complex_, system, max_degree, normalized=True, progress=progress, compress_top=compress_top)


def build_unnormalized_matrices(complex_: OrbifoldComplex, system: LocalSystem, max_degree: int,
                                progress: bool = False, compress_top: bool = False) -> List[CochainComplexSlice]:
    require_coherent(complex_, system, max_degree)
    return assemble(complex_, system, max_degree, normalized=False, progress=progress, compress_top=compress_top)


def check_delta_squared(slices: List[CochainComplexSlice]):
    """Raise NotAComplexError at the first basis simplex where d d is nonzero"""
    for lower, upper in zip(slices, slices[1:]):
        entry = (upper.delta @ lower.delta).first_nonzero()
        if entry is None:
            continue
        i, j, value = entry
        r = lower.rank
        target = f'row {i} of the compressed d^{upper.degree}' if upper.compressed else upper.targets[i // r]
        raise NotAComplexError(f'd^{upper.degree} d^{lower.degree} is {value} from {lower.basis[j // r]} '
                               f'to {target}', location=(i, j), value=value)


def cohomology(complex_: OrbifoldComplex, system: LocalSystem, max_degree: int, normalized: bool = True,
               reduce: bool = True, progress: bool = False) -> List[ModuleInvariants]:
    """H^0 .. H^max_degree of S with coefficients in the local system"""
    build = build_cochain_matrices if normalized else build_unnormalized_matrices
    slices = build(complex_, system, max_degree, progress=progress, compress_top=True)
    check_delta_squared(slices)
    return complex_cohomology([s.delta for s in slices], reduce=reduce, progress=progress)
