"""
ker(d_out) / im(d_in) for cochain complexes over Z, Q and Z/m.

The kernel of d_out is read off its Smith form: columns of V with a zero
diagonal entry are free generators, and over Z/m a nonzero diagonal entry
d contributes a generator of order d (the solutions of d*y = 0). The image
of d_in, written in those generators, gives a presentation whose integer
Smith form is the answer.
"""

import logging
from typing import List, Sequence

from .exceptions import NotAComplexError, ShapeError
from .invariants import ModuleInvariants
from .matrices import ExactMatrix
from .reduction import reduce_complex
from .rings import INTEGERS, INTEGERS_MOD, RATIONALS, ZZ, Ring
from .smith import smith_decomposition

logger = logging.getLogger(__name__)


def check_composable(d_out: ExactMatrix, d_in: ExactMatrix):
    if d_out.ring != d_in.ring:
        raise ShapeError(f'ring mismatch: {d_out.ring} and {d_in.ring}')
    if d_out.cols != d_in.rows:
        raise ShapeError(f'd_out has {d_out.cols} columns but d_in has {d_in.rows} rows')
    composite = d_out @ d_in
    entry = composite.first_nonzero()
    if entry is not None:
        i, j, value = entry
        raise NotAComplexError(f'd_out*d_in is nonzero at ({i}, {j}): {value}',
                               location=(i, j), value=value)


def cohomology_at(d_out: ExactMatrix, d_in: ExactMatrix) -> ModuleInvariants:
    """Invariant factors of ker(d_out)/im(d_in)"""
    check_composable(d_out, d_in)
    ring = d_out.ring
    n = d_out.cols
    if n == 0:
        return ModuleInvariants()

    decomposition = smith_decomposition(d_out, track_left=False)
    diagonal = decomposition.diagonal

    # (coordinate, order, scale) for every kernel generator; order 0 means free
    generators = []
    for i in range(n):
        d = diagonal[i] if i < len(diagonal) else 0
        if d == 0:
            generators.append((i, 0 if ring.kind != INTEGERS_MOD else ring.modulus, 1))
        elif ring.kind == INTEGERS_MOD and d > 1:
            # d*y = 0 has the d solutions generated by m/d
            generators.append((i, d, ring.modulus // d))
    if not generators:
        return ModuleInvariants()

    image = decomposition.V_inverse.submatrix([g[0] for g in generators], range(n)) @ d_in

    if ring.kind == RATIONALS:
        rank = sum(1 for d in smith_decomposition(image, track_left=False).diagonal if d != 0)
        return ModuleInvariants(len(generators) - rank)

    if ring.kind == INTEGERS:
        factors = smith_decomposition(image, track_left=False).diagonal
        nonzero = [d for d in factors if d != 0]
        return ModuleInvariants.from_factors(len(generators) - len(nonzero), nonzero)

    return _quotient_mod(ring, generators, image)


def _quotient_mod(ring: Ring, generators, image: ExactMatrix) -> ModuleInvariants:
    # present (+) Z/order_i modulo the image as an abelian group
    m = ring.modulus
    relations = []
    for row, (_, order, scale) in enumerate(generators):
        coordinates = [int(v) // scale for v in (image[row, j] for j in range(image.cols))]
        relations.append([order if c == row else 0 for c in range(len(generators))] + coordinates)
    presentation = ExactMatrix.from_rows(ZZ, relations, cols=len(generators) + image.cols)
    factors = smith_decomposition(presentation, track_left=False).diagonal
    free = sum(1 for e in factors if e == m)
    torsion = [e for e in factors if 1 < e < m]
    return ModuleInvariants.from_factors(free, torsion)


def complex_cohomology(differentials: Sequence[ExactMatrix], reduce: bool = True,
                       progress: bool = False) -> List[ModuleInvariants]:
    """
    H^0 .. H^D from delta^0 .. delta^D (delta^k : C^k -> C^{k+1}).

    With reduce=True the complex is first shrunk by unit-pivot elimination.
    """
    if not differentials:
        return []
    ring = differentials[0].ring
    if reduce:
        differentials = reduce_complex(ring, differentials, progress=progress).differentials
    results = []
    for k, d_out in enumerate(differentials):
        d_in = differentials[k - 1] if k else ExactMatrix.zeros(ring, d_out.cols, 0)
        results.append(cohomology_at(d_out, d_in))
        logger.debug(f'H^{k} over {ring.label} from a {d_out.rows}x{d_out.cols} residual')
    return results
