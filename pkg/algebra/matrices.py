"""
Exact matrices over a Ring.

Entries are stored as one dict per row (column -> nonzero value). Cochain
differentials are very sparse, and the same storage is fine for the small
dense matrices the Smith form works on.
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from .exceptions import AlgebraError, ShapeError
from .rings import Ring

logger = logging.getLogger(__name__)


class ExactMatrix:
    """rows x cols matrix with arbitrary precision entries in ``ring``"""

    __slots__ = ('ring', 'rows', 'cols', '_data')

    def __init__(self, ring: Ring, rows: int, cols: int, data: Sequence[Dict[int, object]] = None):
        if rows < 0 or cols < 0:
            raise ShapeError(f'negative dimensions {rows}x{cols}')
        self.ring = ring
        self.rows = rows
        self.cols = cols
        cleaned = []
        for i in range(rows):
            row = data[i] if data is not None and i < len(data) else {}
            entries = {}
            for j, value in row.items():
                if not 0 <= j < cols:
                    raise ShapeError(f'column {j} outside a {rows}x{cols} matrix')
                value = ring.coerce(value)
                if value != 0:
                    entries[j] = value
            cleaned.append(entries)
        if data is not None and len(data) > rows:
            raise ShapeError(f'{len(data)} rows given for a {rows}x{cols} matrix')
        self._data = tuple(cleaned)

    # -- construction ----------------------------------------------------

    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence], cols: int = None) -> 'ExactMatrix':
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ShapeError(f'row {i} has {len(row)} entries, expected {cols}')
        return cls(ring, len(rows), cols, [{j: v for j, v in enumerate(row) if v != 0} for row in rows])

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int) -> 'ExactMatrix':
        return cls(ring, rows, cols)

    @classmethod
    def identity(cls, ring: Ring, n: int) -> 'ExactMatrix':
        return cls(ring, n, n, [{i: 1} for i in range(n)])

    @classmethod
    def from_entries(cls, ring: Ring, rows: int, cols: int,
                     entries: Iterable[Tuple[int, int, object]]) -> 'ExactMatrix':
        """Sum repeated (row, col, value) triples into one matrix"""
        data: List[Dict[int, object]] = [{} for _ in range(rows)]
        for i, j, value in entries:
            if not 0 <= i < rows:
                raise ShapeError(f'row {i} outside a {rows}x{cols} matrix')
            row = data[i]
            total = ring.reduce(row.get(j, 0) + value)
            if total == 0:
                row.pop(j, None)
            else:
                row[j] = total
        return cls(ring, rows, cols, data)

    @classmethod
    def _trusted(cls, ring: Ring, rows: int, cols: int, data: List[Dict[int, object]]) -> 'ExactMatrix':
        # data already reduced and free of zeros
        matrix = cls.__new__(cls)
        matrix.ring = ring
        matrix.rows = rows
        matrix.cols = cols
        matrix._data = tuple(data)
        return matrix

    # -- access ----------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, position: Tuple[int, int]):
        i, j = position
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f'({i}, {j}) outside a {self.rows}x{self.cols} matrix')
        return self._data[i].get(j, self.ring.zero)

    def row(self, i: int) -> Dict[int, object]:
        return dict(self._data[i])

    def entries(self) -> Iterator[Tuple[int, int, object]]:
        """Nonzero entries in row-major order"""
        for i, row in enumerate(self._data):
            for j in sorted(row):
                yield i, j, row[j]

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._data)

    def to_lists(self) -> List[List]:
        zero = self.ring.zero
        return [[row.get(j, zero) for j in range(self.cols)] for row in self._data]

    def first_nonzero(self):
        for entry in self.entries():
            return entry
        return None

    # -- arithmetic ------------------------------------------------------

    def _check_same(self, other: 'ExactMatrix'):
        if not isinstance(other, ExactMatrix):
            raise TypeError(f'cannot combine ExactMatrix with {type(other).__name__}')
        if other.ring != self.ring:
            raise ShapeError(f'ring mismatch: {self.ring} and {other.ring}')

    def transpose(self) -> 'ExactMatrix':
        data: List[Dict[int, object]] = [{} for _ in range(self.cols)]
        for i, row in enumerate(self._data):
            for j, value in row.items():
                data[j][i] = value
        return ExactMatrix._trusted(self.ring, self.cols, self.rows, data)

    def __matmul__(self, other: 'ExactMatrix') -> 'ExactMatrix':
        self._check_same(other)
        if self.cols != other.rows:
            raise ShapeError(f'cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}')
        reduce = self.ring.reduce
        data = []
        for row in self._data:
            out: Dict[int, object] = {}
            for k, a in row.items():
                for j, b in other._data[k].items():
                    out[j] = out.get(j, 0) + a * b
            data.append({j: v for j, v in ((j, reduce(v)) for j, v in out.items()) if v != 0})
        return ExactMatrix._trusted(self.ring, self.rows, other.cols, data)

    def _combine(self, other: 'ExactMatrix', sign: int) -> 'ExactMatrix':
        self._check_same(other)
        if self.shape != other.shape:
            raise ShapeError(f'shape mismatch: {self.shape} and {other.shape}')
        reduce = self.ring.reduce
        data = []
        for left, right in zip(self._data, other._data):
            out = dict(left)
            for j, value in right.items():
                total = reduce(out.get(j, 0) + sign * value)
                if total == 0:
                    out.pop(j, None)
                else:
                    out[j] = total
            data.append(out)
        return ExactMatrix._trusted(self.ring, self.rows, self.cols, data)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        reduce = self.ring.reduce
        data = [{j: reduce(-v) for j, v in row.items()} for row in self._data]
        return ExactMatrix._trusted(self.ring, self.rows, self.cols, data)

    def scale(self, factor) -> 'ExactMatrix':
        factor = self.ring.coerce(factor)
        return ExactMatrix(self.ring, self.rows, self.cols,
                           [{j: self.ring.reduce(v * factor) for j, v in row.items()} for row in self._data])

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.ring == other.ring and self.shape == other.shape
                and self._data == other._data)

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols,
                     tuple(tuple(sorted(row.items())) for row in self._data)))

    def is_zero(self) -> bool:
        return all(not row for row in self._data)

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(row == {i: 1} for i, row in enumerate(self._data))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> 'ExactMatrix':
        position = {c: k for k, c in enumerate(cols)}
        data = []
        for i in rows:
            data.append({position[j]: v for j, v in self._data[i].items() if j in position})
        return ExactMatrix._trusted(self.ring, len(rows), len(cols), data)

    def determinant(self):
        """Exact determinant; Bareiss over Z and Z/m, fraction elimination over Q"""
        if self.rows != self.cols:
            raise ShapeError(f'determinant of a non-square {self.rows}x{self.cols} matrix')
        n = self.rows
        if n == 0:
            return self.ring.one
        if self.ring.kind == 'Q':
            return _fraction_determinant(self.to_lists())
        # Z/m: the integer determinant of the representatives reduces correctly
        return self.ring.reduce(_bareiss([[int(v) for v in row] for row in self.to_lists()]))

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.ring.is_unit(self.determinant())

    def inverse(self) -> 'ExactMatrix':
        """Adjugate over the determinant; meant for the small twist matrices"""
        det = self.determinant()
        if not self.ring.is_unit(det):
            raise AlgebraError(f'matrix with determinant {det} is not invertible over {self.ring.label}')
        n = self.rows
        scale = self.ring.unit_inverse(det)
        others = [[k for k in range(n) if k != i] for i in range(n)]
        entries = []
        for i in range(n):
            for j in range(n):
                # entry (i, j) of the adjugate is the (j, i) cofactor
                minor = self.submatrix(others[j], others[i]).determinant()
                sign = 1 if (i + j) % 2 == 0 else -1
                entries.append((i, j, self.ring.reduce(sign * minor * scale)))
        return ExactMatrix.from_entries(self.ring, n, n, entries)

    # -- display ---------------------------------------------------------

    def to_json(self) -> dict:
        return {
            'ring': self.ring.spec,
            'rows': self.rows,
            'cols': self.cols,
            'entries': [[i, j, self.ring.to_json(v)] for i, j, v in self.entries()],
        }

    def __repr__(self):
        return f'ExactMatrix({self.ring.label}, {self.rows}x{self.cols}, nnz={self.nnz})'


def _bareiss(a: List[List[int]]) -> int:
    n = len(a)
    sign = 1
    previous = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // previous
        previous = a[k][k]
    return sign * a[n - 1][n - 1]


def _fraction_determinant(a: List[List[Fraction]]) -> Fraction:
    n = len(a)
    a = [list(row) for row in a]
    det = Fraction(1)
    for k in range(n):
        pivot = next((r for r in range(k, n) if a[r][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            factor = a[i][k] / a[k][k]
            if factor:
                for j in range(k, n):
                    a[i][j] -= factor * a[k][j]
    return det
