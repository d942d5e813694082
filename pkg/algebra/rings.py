"""
Coefficient rings: the integers, the rationals and the integers mod m.

Elements are plain Python values (int or Fraction) so matrices can hold
arbitrary precision entries. A Ring knows how to reduce, invert and
eliminate with them; nothing else in the engine branches on the kind.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Tuple

from sympy import isprime
from sympy.core.intfunc import igcdex

from .exceptions import AlgebraError

logger = logging.getLogger(__name__)

INTEGERS = 'Z'
RATIONALS = 'Q'
INTEGERS_MOD = 'Zmod'

RING_SPEC = re.compile(r'^(Z|Q|Zmod:(\d+))$')


@dataclass(frozen=True)
class Ring:
    """Z, Q or Z/m"""
    kind: str
    modulus: int = 0

    def __post_init__(self):
        if self.kind not in (INTEGERS, RATIONALS, INTEGERS_MOD):
            raise AlgebraError(f'unknown ring kind {self.kind!r}')
        if self.kind == INTEGERS_MOD and self.modulus < 2:
            raise AlgebraError(f'Z/m needs m >= 2, got {self.modulus}')

    # -- naming ----------------------------------------------------------

    @property
    def label(self) -> str:
        if self.kind == INTEGERS_MOD:
            return f'Z/{self.modulus}'
        return self.kind

    @property
    def spec(self) -> str:
        """The string accepted by parse_ring"""
        if self.kind == INTEGERS_MOD:
            return f'Zmod:{self.modulus}'
        return self.kind

    @property
    def is_field(self) -> bool:
        if self.kind == RATIONALS:
            return True
        return self.kind == INTEGERS_MOD and bool(isprime(self.modulus))

    def __str__(self):
        return self.label

    # -- elements --------------------------------------------------------

    def coerce(self, value):
        if isinstance(value, bool):
            raise AlgebraError(f'{value!r} is not a ring element')
        if self.kind == RATIONALS:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise AlgebraError(f'{value} is not an element of {self.label}')
            value = value.numerator
        if not isinstance(value, int):
            raise AlgebraError(f'{value!r} is not an element of {self.label}')
        if self.kind == INTEGERS_MOD:
            return value % self.modulus
        return value

    def reduce(self, value):
        """Canonical representative of a value produced by +, -, *"""
        if self.kind == INTEGERS_MOD:
            return value % self.modulus
        return value

    @property
    def zero(self):
        return Fraction(0) if self.kind == RATIONALS else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == RATIONALS else 1

    def is_unit(self, a) -> bool:
        if self.kind == INTEGERS:
            return a in (1, -1)
        if self.kind == RATIONALS:
            return a != 0
        return gcd(a, self.modulus) == 1

    def unit_inverse(self, a):
        if not self.is_unit(a):
            raise AlgebraError(f'{a} is not a unit of {self.label}')
        if self.kind == INTEGERS:
            return a
        if self.kind == RATIONALS:
            return 1 / a
        return pow(a, -1, self.modulus)

    def size(self, a) -> int:
        """Pivot ranking: 0 for zero, otherwise smaller means closer to a unit"""
        if a == 0:
            return 0
        if self.kind == INTEGERS:
            return abs(a)
        if self.kind == RATIONALS:
            return 1
        return gcd(a, self.modulus)

    # -- division --------------------------------------------------------

    def divides(self, a, b) -> bool:
        if self.kind == INTEGERS:
            return b == 0 if a == 0 else b % a == 0
        if self.kind == RATIONALS:
            return a != 0 or b == 0
        return b % gcd(a, self.modulus) == 0

    def quotient(self, b, a):
        """Some q with a*q = b; the caller has checked divides(a, b)"""
        if self.kind == INTEGERS:
            return 0 if b == 0 else b // a
        if self.kind == RATIONALS:
            return self.zero if b == 0 else b / a
        g = gcd(a, self.modulus)
        m = self.modulus // g
        if m == 1:
            return 0
        return ((b // g) * pow(a // g, -1, m)) % m

    def bezout(self, a, b) -> Tuple[object, Tuple[object, object, object, object]]:
        """
        Elementary 2x2 operation clearing b against a.

        Returns (g, (x, y, s, t)) where x*a + y*b = g generates the ideal
        (a, b), s*a + t*b = 0, and x*t - y*s = 1, so the operation is
        invertible over the ring.
        """
        if self.kind == RATIONALS:
            if a != 0:
                return self.one, (1 / a, self.zero, -b, a)
            return self.one, (self.zero, 1 / b, -b, a)
        x, y, g = (int(v) for v in igcdex(a, b))
        if g == 0:
            return 0, (1, 0, 0, 1)
        s, t = -(b // g), a // g
        if self.kind == INTEGERS_MOD:
            m = self.modulus
            return g % m, (x % m, y % m, s % m, t % m)
        return g, (x, y, s, t)

    def normal_form(self, a) -> Tuple[object, object]:
        """(canonical associate of a, unit u) with u*a equal to the associate"""
        if a == 0:
            return self.zero, self.one
        if self.kind == INTEGERS:
            return (a, 1) if a > 0 else (-a, -1)
        if self.kind == RATIONALS:
            return self.one, 1 / a
        m = self.modulus
        g = gcd(a, m)
        reduced = m // g
        base = pow(a // g, -1, reduced) if reduced > 1 else 0
        # lift the inverse mod m/g to a unit mod m
        for step in range(g):
            u = base + step * reduced
            if gcd(u, m) == 1:
                return g % m, u % m
        raise AlgebraError(f'no unit normalizes {a} in {self.label}')

    # -- serialization ---------------------------------------------------

    def to_json(self, a):
        if self.kind == RATIONALS:
            return str(a) if a.denominator != 1 else a.numerator
        return a

    def from_json(self, value):
        if self.kind == RATIONALS and isinstance(value, str):
            return Fraction(value)
        return self.coerce(value)


def parse_ring(spec: str) -> Ring:
    """Parse 'Z', 'Q' or 'Zmod:m'"""
    match = RING_SPEC.match(spec.strip()) if isinstance(spec, str) else None
    if not match:
        raise AlgebraError(f'unrecognised ring {spec!r}; expected Z, Q or Zmod:m')
    if match.group(2):
        return Ring(INTEGERS_MOD, int(match.group(2)))
    return Ring(match.group(1))


ZZ = Ring(INTEGERS)
QQ = Ring(RATIONALS)


def integers_mod(m: int) -> Ring:
    return Ring(INTEGERS_MOD, m)
