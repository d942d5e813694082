"""
Cohomology of a finite group with coefficients in a free module, from the
bar resolution, plus the periodic resolution of a cyclic group as a second
opinion.

Bar k-cochains are functions G^k -> A, stored as r entries per k-tuple with
tuples in lexicographic order. The differential is

    (df)(g1, .., g_k+1) = g1 . f(g2, .., g_k+1)
                          + sum_{i=1..k} (-1)^i f(.., g_i g_i+1, ..)
                          + (-1)^(k+1) f(g1, .., g_k)
"""

import logging
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from algebra.groups import FiniteGroup
from algebra.homology import complex_cohomology
from algebra.invariants import ModuleInvariants
from algebra.matrices import ExactMatrix

from .exceptions import GroupActionError
from .local_systems import CoefficientModule

logger = logging.getLogger(__name__)


def trivial_action(group: FiniteGroup, module: CoefficientModule) -> List[ExactMatrix]:
    return [module.identity()] * group.order


def cyclic_action(group: FiniteGroup, module: CoefficientModule, generator: int,
                  matrix: ExactMatrix) -> List[ExactMatrix]:
    """The action of a cyclic group sending generator^i to matrix^i"""
    action: List[Optional[ExactMatrix]] = [None] * group.order
    element, power = 0, module.identity()
    for _ in range(group.order):
        if action[element] is not None:
            break
        action[element] = power
        element = group.multiply(element, generator)
        power = power @ matrix
    if any(m is None for m in action):
        raise GroupActionError(f'element {generator} does not generate {group}')
    return action


def check_action(group: FiniteGroup, module: CoefficientModule, action: Sequence[ExactMatrix]):
    """Raise GroupActionError unless action is a homomorphism G -> GL_r(ring)"""
    if len(action) != group.order:
        raise GroupActionError(f'{len(action)} matrices given for a group of order {group.order}')
    for g, matrix in enumerate(action):
        if matrix.ring != module.ring or matrix.shape != (module.rank, module.rank):
            raise GroupActionError(f'matrix of element {g} is not a {module.rank}x{module.rank} '
                                   f'matrix over {module.ring.label}')
    if not action[0].is_identity():
        raise GroupActionError('the identity element must act as the identity matrix', pair=(0, 0))
    for g in range(group.order):
        for h in range(group.order):
            if action[g] @ action[h] != action[group.multiply(g, h)]:
                raise GroupActionError(f'action is not multiplicative on the pair ({g}, {h})', pair=(g, h))


def _tuples(group: FiniteGroup, k: int, normalized: bool) -> List[Tuple[int, ...]]:
    elements = range(1, group.order) if normalized else range(group.order)
    return list(product(elements, repeat=k))


def bar_differentials(group: FiniteGroup, module: CoefficientModule, action: Sequence[ExactMatrix],
                      max_degree: int, normalized: bool = False) -> List[ExactMatrix]:
    """delta^0 .. delta^max_degree of the bar complex; normalized drops tuples containing the identity"""
    r = module.rank
    mul = group.mul
    blocks = [list(m.entries()) for m in action]
    differentials = []
    columns = {t: i for i, t in enumerate(_tuples(group, 0, normalized))}
    for k in range(max_degree + 1):
        rows = _tuples(group, k + 1, normalized)
        entries = []
        for row, t in enumerate(rows):
            col = columns.get(t[1:])
            if col is not None:
                for a, b, value in blocks[t[0]]:
                    entries.append((r * row + a, r * col + b, value))
            for i in range(1, k + 1):
                merged = t[:i - 1] + (mul[t[i - 1]][t[i]],) + t[i + 1:]
                col = columns.get(merged)
                if col is not None:
                    sign = -1 if i % 2 else 1
                    entries.extend((r * row + a, r * col + a, sign) for a in range(r))
            col = columns.get(t[:-1])
            if col is not None:
                sign = -1 if (k + 1) % 2 else 1
                entries.extend((r * row + a, r * col + a, sign) for a in range(r))
        differentials.append(ExactMatrix.from_entries(module.ring, r * len(rows), r * len(columns), entries))
        columns = {t: i for i, t in enumerate(rows)}
    return differentials


def group_cohomology(group: FiniteGroup, module: CoefficientModule, max_degree: int,
                     action: Optional[Sequence[ExactMatrix]] = None, normalized: bool = False,
                     reduce: bool = True) -> List[ModuleInvariants]:
    """H^0 .. H^max_degree of G with coefficients in the module, trivial action unless given"""
    if max_degree < 0:
        return []
    if action is None:
        action = trivial_action(group, module)
    check_action(group, module, action)
    differentials = bar_differentials(group, module, action, max_degree, normalized)
    logger.info(f'Bar complex of {group} over {module}: '
                f'{", ".join(str(d.cols) for d in differentials)} columns in degrees 0..{max_degree}')
    return complex_cohomology(differentials, reduce=reduce)


def periodic_differentials(n: int, generator_matrix: ExactMatrix, max_degree: int) -> List[ExactMatrix]:
    """A -(T-1)-> A -N-> A -(T-1)-> ... with N = 1 + T + .. + T^(n-1)"""
    ring = generator_matrix.ring
    r = generator_matrix.rows
    identity = ExactMatrix.identity(ring, r)
    power = identity
    for _ in range(n):
        power = power @ generator_matrix
    if power != identity:
        raise GroupActionError(f'generator matrix does not have order dividing {n}')
    norm = ExactMatrix.zeros(ring, r, r)
    power = identity
    for _ in range(n):
        norm = norm + power
        power = power @ generator_matrix
    difference = generator_matrix - identity
    return [difference if k % 2 == 0 else norm for k in range(max_degree + 1)]


def periodic_cyclic_cohomology(n: int, generator_matrix: ExactMatrix, max_degree: int) -> List[ModuleInvariants]:
    """H^k(C_n; A) from the 2-periodic resolution of Z over Z[C_n]"""
    if max_degree < 0:
        return []
    return complex_cohomology(periodic_differentials(n, generator_matrix, max_degree), reduce=False)


def generator_of(group: FiniteGroup) -> Optional[int]:
    """The first element of full order, or None when the group is not cyclic"""
    for g in range(group.order):
        element, steps = g, 1
        while element != 0:
            element = group.multiply(element, g)
            steps += 1
        if steps == group.order:
            return g
    return None


def compare_with_periodic(group: FiniteGroup, module: CoefficientModule, max_degree: int,
                          bar: List[ModuleInvariants]) -> Dict[int, Tuple[ModuleInvariants, ModuleInvariants]]:
    """Degrees where the bar answer for a trivially acting cyclic group disagrees with the periodic one"""
    if generator_of(group) is None:
        raise GroupActionError(f'{group} is not cyclic; the periodic resolution does not apply')
    periodic = periodic_cyclic_cohomology(group.order, module.identity(), max_degree)
    return {k: (b, p) for k, (b, p) in enumerate(zip(bar, periodic)) if b != p}
