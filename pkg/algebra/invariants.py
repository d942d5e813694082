"""Finitely generated modules recorded as free rank plus invariant factors."""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from sympy import factorint

from .exceptions import AlgebraError
from .rings import INTEGERS_MOD, Ring


def invariant_factors_of(factors: Iterable[int]) -> Tuple[int, ...]:
    """
    Invariant factors d1 | d2 | ... of a sum of cyclic groups Z/a.

    Each a splits into prime powers; the largest power of every prime goes
    to the last factor, the next largest to the one before, and so on.
    """
    powers: Dict[int, List[int]] = {}
    for a in factors:
        a = abs(a)
        if a == 0:
            raise AlgebraError('a zero factor is a free summand, not torsion')
        for p, e in factorint(a).items():
            powers.setdefault(p, []).append(p ** e)
    length = max((len(v) for v in powers.values()), default=0)
    result = [1] * length
    for values in powers.values():
        for slot, q in enumerate(sorted(values, reverse=True)):
            result[length - 1 - slot] *= q
    return tuple(result)


@dataclass(frozen=True)
class ModuleInvariants:
    """
    free_rank copies of the ring plus cyclic torsion summands.

    torsion is a divisibility chain d1 | d2 | ... with every d >= 2, so two
    isomorphic modules always give equal records. Over Z/m the free part
    counts Z/m summands and torsion holds proper divisors of m.
    """
    free_rank: int = 0
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'torsion', tuple(self.torsion))
        if self.free_rank < 0:
            raise AlgebraError(f'negative free rank {self.free_rank}')
        for d in self.torsion:
            if d < 2:
                raise AlgebraError(f'torsion factor {d} must be at least 2')
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d:
                raise AlgebraError(f'torsion {self.torsion} is not a divisibility chain')

    @classmethod
    def from_factors(cls, free_rank: int, factors: Iterable[int]) -> 'ModuleInvariants':
        """Z/a + Z/b + ... in any order, rewritten as invariant factors"""
        return cls(free_rank, invariant_factors_of(factors))

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def render(self, ring: Ring) -> str:
        """'Z^2 + Z/3', 'Q', 'Z/4', or '0'"""
        parts = []
        if self.free_rank:
            base = ring.label
            if self.free_rank == 1:
                parts.append(base)
            elif ring.kind == INTEGERS_MOD:
                parts.append(f'({base})^{self.free_rank}')
            else:
                parts.append(f'{base}^{self.free_rank}')
        parts.extend(f'Z/{d}' for d in self.torsion)
        return ' + '.join(parts) if parts else '0'

    def to_json(self) -> dict:
        return {'free_rank': self.free_rank, 'torsion': list(self.torsion)}

    @classmethod
    def from_json(cls, data: dict) -> 'ModuleInvariants':
        return cls(data['free_rank'], tuple(data['torsion']))


ZERO_MODULE = ModuleInvariants()
