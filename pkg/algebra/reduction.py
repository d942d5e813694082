"""
Gaussian elimination of cochain complexes.

An entry a of delta^k that is a unit pairs a basis element x of C^k with a
basis element y of C^{k+1}. Dropping both and replacing delta^k by
D - c a^-1 b leaves a chain homotopy equivalent complex, so every degree
keeps its cohomology. Repeating until no unit entries remain leaves a
residual complex small enough for the dense Smith form.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Set, Tuple

from tqdm import tqdm

from .exceptions import ShapeError
from .matrices import ExactMatrix
from .rings import Ring

logger = logging.getLogger(__name__)


class _SparseDifferential:
    """Mutable row/column indexed copy of one differential"""

    def __init__(self, matrix: ExactMatrix):
        self.rows: Dict[int, Dict[int, object]] = {}
        self.cols: Dict[int, Set[int]] = {}
        for i, j, value in matrix.entries():
            self.rows.setdefault(i, {})[j] = value
            self.cols.setdefault(j, set()).add(i)

    def drop_row(self, i):
        for j in self.rows.pop(i, {}):
            column = self.cols[j]
            column.discard(i)
            if not column:
                del self.cols[j]

    def drop_col(self, j):
        for i in self.cols.pop(j, ()):
            row = self.rows[i]
            del row[j]
            if not row:
                del self.rows[i]

    def set(self, i, j, value):
        if value == 0:
            row = self.rows.get(i)
            if row and j in row:
                del row[j]
                if not row:
                    del self.rows[i]
                column = self.cols[j]
                column.discard(i)
                if not column:
                    del self.cols[j]
            return
        self.rows.setdefault(i, {})[j] = value
        self.cols.setdefault(j, set()).add(i)


@dataclass
class ReducedComplex:
    """Residual differentials plus which basis elements survived"""
    ring: Ring
    differentials: List[ExactMatrix]
    survivors: List[List[int]]
    eliminated: List[int] = field(default_factory=list)

    @property
    def dimensions(self) -> List[int]:
        return [len(s) for s in self.survivors]


def reduce_complex(ring: Ring, differentials: Sequence[ExactMatrix],
                   progress: bool = False) -> ReducedComplex:
    """
    Eliminate unit pivots from delta^0, ..., delta^D.

    differentials[k] maps C^k to C^{k+1}. The last one only ever loses
    pairs, so H^D of the residual complex still equals H^D of the input.
    """
    for k, matrix in enumerate(differentials):
        if matrix.ring != ring:
            raise ShapeError(f'delta^{k} is over {matrix.ring}, expected {ring}')
        if k and differentials[k - 1].rows != matrix.cols:
            raise ShapeError(f'delta^{k - 1} lands in dimension {differentials[k - 1].rows} '
                             f'but delta^{k} starts from {matrix.cols}')

    sparse = [_SparseDifferential(m) for m in differentials]
    dims = [m.cols for m in differentials]
    if differentials:
        dims.append(differentials[-1].rows)
    alive = [set(range(n)) for n in dims]
    eliminated = [0] * len(differentials)
    reduce = ring.reduce

    def eliminate(k, y, x, a):
        delta = sparse[k]
        inverse = ring.unit_inverse(a)
        column = {i: delta.rows[i][x] for i in delta.cols[x] if i != y}
        row = {j: v for j, v in delta.rows[y].items() if j != x}
        for i, c in column.items():
            factor = reduce(c * inverse)
            current = delta.rows.get(i, {})
            for j, b in row.items():
                delta.set(i, j, reduce(current.get(j, 0) - factor * b))
                current = delta.rows.get(i, {})
        delta.drop_row(y)
        delta.drop_col(x)
        if k > 0:
            sparse[k - 1].drop_row(x)
        if k + 1 < len(sparse):
            sparse[k + 1].drop_col(y)
        alive[k].discard(x)
        alive[k + 1].discard(y)
        eliminated[k] += 1

    bar = tqdm(desc='reducing complex', unit='pair', disable=not progress)
    passes = 0
    while True:
        passes += 1
        found = 0
        for k, delta in enumerate(sparse):
            for x in sorted(delta.cols):
                if x not in delta.cols:
                    continue
                best = None
                for y in delta.cols[x]:
                    value = delta.rows[y][x]
                    if ring.is_unit(value):
                        length = len(delta.rows[y])
                        if best is None or length < best[0] or (length == best[0] and y < best[1]):
                            best = (length, y, value)
                if best is not None:
                    eliminate(k, best[1], x, best[2])
                    found += 1
                    bar.update(1)
        if not found:
            break
    bar.close()

    survivors = [sorted(s) for s in alive]
    residual = []
    for k, delta in enumerate(sparse):
        source = {old: new for new, old in enumerate(survivors[k])}
        target = {old: new for new, old in enumerate(survivors[k + 1])}
        data: List[Dict[int, object]] = [{} for _ in survivors[k + 1]]
        for i, row in delta.rows.items():
            data[target[i]] = {source[j]: v for j, v in row.items()}
        residual.append(ExactMatrix(ring, len(survivors[k + 1]), len(survivors[k]), data))

    logger.info(f'Reduced complex over {ring.label} in {passes} passes: '
                f'eliminated {eliminated}, residual dimensions {[len(s) for s in survivors]}')
    return ReducedComplex(ring, residual, survivors, eliminated)


def compress_rows(ring: Ring, cols: int, rows: Iterable[Dict[int, object]],
                  progress: bool = False) -> ExactMatrix:
    """
    A matrix with the same row span as ``rows``, hence the same kernel.

    Rows are consumed one at a time and reduced against the unit pivots kept
    so far, always through the oldest pivot they still touch. A row that
    reduces to zero is dropped, one with a unit entry becomes a new pivot
    (scaled so the pivot is 1) and the rest are kept once each.
    """
    pivots: Dict[int, Tuple[int, Dict[int, object]]] = {}
    residual: Dict[tuple, Dict[int, object]] = {}
    reduce = ring.reduce
    seen = 0
    for row in tqdm(rows, desc='compressing rows', unit='row', disable=not progress):
        seen += 1
        current = {j: v for j, v in ((j, ring.coerce(v)) for j, v in row.items()) if v != 0}
        while current:
            oldest = None
            for j in current:
                entry = pivots.get(j)
                if entry is not None and (oldest is None or entry[0] < oldest[0]):
                    oldest = (entry[0], j)
            if oldest is None:
                break
            j = oldest[1]
            factor = current[j]
            for c, v in pivots[j][1].items():
                value = reduce(current.get(c, 0) - factor * v)
                if value == 0:
                    current.pop(c, None)
                else:
                    current[c] = value
        if not current:
            continue
        unit = next((j for j in sorted(current) if ring.is_unit(current[j])), None)
        if unit is None:
            residual.setdefault(tuple(sorted(current.items())), current)
            continue
        inverse = ring.unit_inverse(current[unit])
        pivots[unit] = (len(pivots), {c: reduce(v * inverse) for c, v in current.items()})

    data = [row for _, row in sorted(pivots.values(), key=lambda entry: entry[0])]
    data.extend(residual[key] for key in sorted(residual))
    logger.info(f'Compressed {seen} rows over {ring.label} to {len(pivots)} pivots '
                f'and {len(residual)} other rows')
    return ExactMatrix(ring, len(data), cols, data)
