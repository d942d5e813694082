"""
Smith normal form over Z, Q and Z/m.

The elimination always pivots on the entry of smallest size (absolute value
over Z, gcd with m over Z/m) so that intermediate entries stay small, and
uses gcd-with-m operations over Z/m instead of lifting to the integers.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .matrices import ExactMatrix
from .rings import Ring

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SmithDecomposition:
    """U*A*V = S, with V_inverse kept for coordinate changes"""
    U: Optional[ExactMatrix]
    S: ExactMatrix
    V: ExactMatrix
    V_inverse: ExactMatrix

    @property
    def diagonal(self) -> List:
        n = min(self.S.rows, self.S.cols)
        return [self.S[i, i] for i in range(n)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


class _Elimination:
    """Dense working state for one decomposition"""

    def __init__(self, ring: Ring, a: List[List], ncols: int, track_left: bool):
        self.ring = ring
        self.a = a
        self.nrows = len(a)
        self.ncols = ncols
        one, zero = ring.one, ring.zero
        self.u = [[one if i == j else zero for j in range(self.nrows)]
                  for i in range(self.nrows)] if track_left else None
        self.v = [[one if i == j else zero for j in range(self.ncols)] for i in range(self.ncols)]
        self.v_inv = [[one if i == j else zero for j in range(self.ncols)] for i in range(self.ncols)]

    # row operations act on A and U, column operations on A, V and V^-1

    def swap_rows(self, i, j):
        if i == j:
            return
        a = self.a
        a[i], a[j] = a[j], a[i]
        if self.u is not None:
            self.u[i], self.u[j] = self.u[j], self.u[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for row in self.a:
            row[i], row[j] = row[j], row[i]
        for row in self.v:
            row[i], row[j] = row[j], row[i]
        self.v_inv[i], self.v_inv[j] = self.v_inv[j], self.v_inv[i]

    def _mix_rows(self, matrix, i, j, x, y, s, t):
        reduce = self.ring.reduce
        first, second = matrix[i], matrix[j]
        matrix[i] = [reduce(x * p + y * q) for p, q in zip(first, second)]
        matrix[j] = [reduce(s * p + t * q) for p, q in zip(first, second)]

    def row_op(self, i, j, x, y, s, t):
        """row_i <- x*row_i + y*row_j, row_j <- s*row_i + t*row_j"""
        self._mix_rows(self.a, i, j, x, y, s, t)
        if self.u is not None:
            self._mix_rows(self.u, i, j, x, y, s, t)

    def col_op(self, i, j, x, y, s, t):
        """col_i <- x*col_i + y*col_j, col_j <- s*col_i + t*col_j"""
        reduce = self.ring.reduce
        for matrix in (self.a, self.v):
            for row in matrix:
                p, q = row[i], row[j]
                row[i] = reduce(x * p + y * q)
                row[j] = reduce(s * p + t * q)
        # V^-1 picks up the inverse operation on rows
        self._mix_rows(self.v_inv, i, j, t, -s, -y, x)

    def add_row(self, target, source, factor):
        reduce = self.ring.reduce
        for matrix in (self.a, self.u):
            if matrix is None:
                continue
            matrix[target] = [reduce(p + factor * q) for p, q in zip(matrix[target], matrix[source])]

    def add_col(self, target, source, factor):
        """col_target += factor * col_source"""
        reduce = self.ring.reduce
        for matrix in (self.a, self.v):
            for row in matrix:
                if row[source]:
                    row[target] = reduce(row[target] + factor * row[source])
        self.v_inv[source] = [reduce(p - factor * q) for p, q in zip(self.v_inv[source], self.v_inv[target])]

    def scale_row(self, i, unit):
        reduce = self.ring.reduce
        for matrix in (self.a, self.u):
            if matrix is not None:
                matrix[i] = [reduce(unit * p) for p in matrix[i]]

    # -- the algorithm ---------------------------------------------------

    def choose_pivot(self, t) -> Optional[Tuple[int, int]]:
        size = self.ring.size
        best, best_size = None, None
        for i in range(t, self.nrows):
            row = self.a[i]
            for j in range(t, self.ncols):
                if row[j] == 0:
                    continue
                s = size(row[j])
                if best is None or s < best_size:
                    best, best_size = (i, j), s
                    if s == 1:
                        return best
        return best

    def clear_column(self, t) -> bool:
        ring = self.ring
        changed = False
        for r in range(t + 1, self.nrows):
            b = self.a[r][t]
            if b == 0:
                continue
            a = self.a[t][t]
            if ring.divides(a, b):
                self.add_row(r, t, ring.reduce(-ring.quotient(b, a)))
            else:
                _, (x, y, s, u) = ring.bezout(a, b)
                self.row_op(t, r, x, y, s, u)
                changed = True
        return changed

    def clear_row(self, t) -> bool:
        ring = self.ring
        changed = False
        for c in range(t + 1, self.ncols):
            b = self.a[t][c]
            if b == 0:
                continue
            a = self.a[t][t]
            if ring.divides(a, b):
                self.add_col(c, t, ring.reduce(-ring.quotient(b, a)))
            else:
                _, (x, y, s, u) = ring.bezout(a, b)
                self.col_op(t, c, x, y, s, u)
                changed = True
        return changed

    def offending_entry(self, t) -> Optional[int]:
        """A row below t holding an entry the pivot does not divide"""
        pivot = self.a[t][t]
        for r in range(t + 1, self.nrows):
            row = self.a[r]
            for c in range(t + 1, self.ncols):
                if row[c] != 0 and not self.ring.divides(pivot, row[c]):
                    return r
        return None

    def run(self):
        t = 0
        limit = min(self.nrows, self.ncols)
        while t < limit:
            pivot = self.choose_pivot(t)
            if pivot is None:
                break
            self.swap_rows(t, pivot[0])
            self.swap_cols(t, pivot[1])
            while True:
                changed = self.clear_column(t)
                changed = self.clear_row(t) or changed
                if changed:
                    continue
                if any(self.a[r][t] != 0 for r in range(t + 1, self.nrows)):
                    continue
                offending = self.offending_entry(t)
                if offending is None:
                    break
                self.add_row(t, offending, self.ring.one)
            _, unit = self.ring.normal_form(self.a[t][t])
            if unit != 1:
                self.scale_row(t, unit)
            t += 1


def _to_dicts(rows: List[List]) -> List[dict]:
    return [{j: v for j, v in enumerate(row) if v != 0} for row in rows]


def smith_decomposition(matrix: ExactMatrix, track_left: bool = True) -> SmithDecomposition:
    """Full decomposition; pass track_left=False when U is not needed"""
    ring = matrix.ring
    work = _Elimination(ring, matrix.to_lists(), matrix.cols, track_left)
    work.run()
    n, m = matrix.rows, matrix.cols
    U = ExactMatrix(ring, n, n, _to_dicts(work.u)) if track_left else None
    return SmithDecomposition(
        U=U,
        S=ExactMatrix(ring, n, m, _to_dicts(work.a)),
        V=ExactMatrix(ring, m, m, _to_dicts(work.v)),
        V_inverse=ExactMatrix(ring, m, m, _to_dicts(work.v_inv)),
    )


def smith_normal_form(matrix: ExactMatrix) -> Tuple[ExactMatrix, ExactMatrix, ExactMatrix]:
    """(U, S, V) with U*A*V = S diagonal and each diagonal entry dividing the next"""
    decomposition = smith_decomposition(matrix)
    return decomposition.U, decomposition.S, decomposition.V


def invariant_factors(matrix: ExactMatrix) -> List:
    """Nonzero diagonal of the Smith form"""
    decomposition = smith_decomposition(matrix, track_left=False)
    return [d for d in decomposition.diagonal if d != 0]
