"""
Finite groups given by multiplication tables.

The identity always sits at index 0, so a table reads the same way in
every input file. Tables are checked in full when a group is built.
"""

import logging
import re
from dataclasses import dataclass, field
from functools import reduce
from typing import List, Sequence, Tuple

from .exceptions import GroupAxiomError, InvalidOrderError

logger = logging.getLogger(__name__)

CYCLIC_SPEC = re.compile(r'^cyclic:(\d+)$')


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group stored as its Cayley table"""
    mul: Tuple[Tuple[int, ...], ...]
    inv: Tuple[int, ...]
    name: str = field(default='', compare=False)

    identity = 0

    @property
    def order(self) -> int:
        return len(self.mul)

    @property
    def is_trivial(self) -> bool:
        return len(self.mul) == 1

    def multiply(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def product(self, *elements: int) -> int:
        return reduce(self.multiply, elements, 0)

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv[a], -k
        result = 0
        for _ in range(k):
            result = self.mul[result][a]
        return result

    def is_abelian(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a]
                   for a in range(self.order) for b in range(a))

    def element(self, index: int) -> 'GroupElement':
        return GroupElement(self, index)

    def elements(self) -> List['GroupElement']:
        return [GroupElement(self, i) for i in range(self.order)]

    def __str__(self):
        return self.name or f'group of order {self.order}'


@dataclass(frozen=True)
class GroupElement:
    """One element of a FiniteGroup, addressed by its table index"""
    group: FiniteGroup
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.group.order:
            raise ValueError(f'element {self.index} is outside {self.group}')

    def __mul__(self, other: 'GroupElement') -> 'GroupElement':
        if other.group != self.group:
            raise ValueError('cannot multiply elements of different groups')
        return GroupElement(self.group, self.group.multiply(self.index, other.index))

    def inverse(self) -> 'GroupElement':
        return GroupElement(self.group, self.group.inverse(self.index))

    @property
    def is_identity(self) -> bool:
        return self.index == 0

    def __str__(self):
        return str(self.index)


def cyclic_group(n: int) -> FiniteGroup:
    """C_n with mul(i, j) = (i + j) mod n"""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidOrderError(f'cyclic group order must be a positive integer, got {n!r}')
    mul = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    inv = tuple((-i) % n for i in range(n))
    return FiniteGroup(mul, inv, name=f'C{n}')


def group_from_table(mul: Sequence[Sequence[int]], name: str = '') -> FiniteGroup:
    """Build a group from a multiplication table, verifying every axiom"""
    order = len(mul)
    if order == 0:
        raise GroupAxiomError('multiplication table is empty')
    for x, row in enumerate(mul):
        if len(row) != order:
            raise GroupAxiomError(f'row {x} has {len(row)} entries, expected {order}')
        for y, value in enumerate(row):
            if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value < order:
                raise GroupAxiomError(f'mul({x},{y})={value!r} is not an element index')

    table = tuple(tuple(row) for row in mul)

    for x in range(order):
        if table[0][x] != x or table[x][0] != x:
            raise GroupAxiomError(f'index 0 is not an identity: mul(0,{x})={table[0][x]}, mul({x},0)={table[x][0]}')

    inv = []
    for x in range(order):
        candidates = [y for y in range(order) if table[x][y] == 0 and table[y][x] == 0]
        if not candidates:
            raise GroupAxiomError(f'element {x} has no inverse')
        inv.append(candidates[0])

    everything = set(range(order))
    for x in range(order):
        if set(table[x]) != everything:
            raise GroupAxiomError(f'row {x} is not a permutation')
        if {table[y][x] for y in range(order)} != everything:
            raise GroupAxiomError(f'column {x} is not a permutation')

    for a in range(order):
        for b in range(order):
            ab = table[a][b]
            for c in range(order):
                if table[ab][c] != table[a][table[b][c]]:
                    raise GroupAxiomError(f'associativity fails on the triple ({a},{b},{c})')

    return FiniteGroup(table, tuple(inv), name=name)


def group_from_spec(spec: str) -> FiniteGroup:
    """Parse the 'cyclic:n' shorthand"""
    match = CYCLIC_SPEC.match(spec.strip())
    if not match:
        raise InvalidOrderError(f'unrecognised group shorthand {spec!r}')
    return cyclic_group(int(match.group(1)))


def trivial_group() -> FiniteGroup:
    return cyclic_group(1)


def is_homomorphism(source: FiniteGroup, target: FiniteGroup, images: Sequence[int]) -> bool:
    if len(images) != source.order:
        return False
    return all(images[source.mul[a][b]] == target.mul[images[a]][images[b]]
               for a in range(source.order) for b in range(source.order))
