"""
The simplicial set S of an orbifold complex.

A k-simplex is a string sigma_0 <-g_1- sigma_1 ... <-g_k- sigma_k of top
simplices with a common point and elements g_i of the isotropy group of
their full intersection. Faces drop one sigma and push the arrows into the
smaller intersection's group through the mu tables.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx
from tqdm import tqdm

from algebra.groups import FiniteGroup

from .complex import OrbifoldComplex
from .exceptions import UnknownSimplexError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrbSimplex:
    sigmas: Tuple[str, ...]
    arrows: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'sigmas', tuple(self.sigmas))
        object.__setattr__(self, 'arrows', tuple(self.arrows))
        if not self.sigmas:
            raise ValueError('a simplex needs at least one top simplex')
        if len(self.arrows) != len(self.sigmas) - 1:
            raise ValueError(f'{len(self.sigmas)} top simplices need {len(self.sigmas) - 1} arrows, '
                             f'got {len(self.arrows)}')

    @property
    def degree(self) -> int:
        return len(self.arrows)

    @property
    def vertices(self) -> frozenset:
        return frozenset(self.sigmas)

    def __str__(self):
        parts = [self.sigmas[0]]
        for sigma, g in zip(self.sigmas[1:], self.arrows):
            parts.append(f'<-{g}- {sigma}')
        return ' '.join(parts)


class _Arrow(NamedTuple):
    """How one output arrow of a face is computed from the input arrows"""
    position: int
    table: Tuple[int, ...]
    second: Optional[Tuple[int, ...]] = None
    mul: Optional[Tuple[Tuple[int, ...], ...]] = None
    merge_first: bool = False


def is_degenerate(s: OrbSimplex) -> bool:
    return any(a == b and g == 0 for a, b, g in zip(s.sigmas, s.sigmas[1:], s.arrows))


def apply_rules(rules: Sequence[_Arrow], g: Sequence[int]) -> Tuple[int, ...]:
    arrows = []
    for rule in rules:
        if rule.merge_first:
            arrows.append(rule.table[rule.mul[g[rule.position]][g[rule.position + 1]]])
        elif rule.second is not None:
            arrows.append(rule.mul[rule.table[g[rule.position]]][rule.second[g[rule.position + 1]]])
        else:
            arrows.append(rule.table[g[rule.position]])
    return tuple(arrows)


class SimplicialSet:
    """Face maps, degeneracies and enumeration for one complex"""

    def __init__(self, complex_: OrbifoldComplex):
        self.complex = complex_
        self._plans: Dict[Tuple[Tuple[str, ...], int], Tuple[Tuple[str, ...], Tuple[_Arrow, ...]]] = {}

    # -- groups ----------------------------------------------------------

    def group(self, sigmas: Sequence[str]) -> FiniteGroup:
        return self.complex.group_of(self.complex.subset(sigmas))

    def check(self, s: OrbSimplex):
        """Raise unless s is a simplex of S"""
        group = self.group(s.sigmas)
        for g in s.arrows:
            if not 0 <= g < group.order:
                raise ValueError(f'arrow {g} of {s} is outside a group of order {group.order}')

    # -- faces -----------------------------------------------------------

    def _plan(self, sigmas: Tuple[str, ...], j: int):
        cached = self._plans.get((sigmas, j))
        if cached is not None:
            return cached
        c = self.complex
        k = len(sigmas) - 1
        tau = frozenset(sigmas)
        remaining = sigmas[:j] + sigmas[j + 1:]
        rho = frozenset(remaining)

        def table(x, y):
            return c.table_for(tau, rho, x, y).table

        rules: List[_Arrow] = []
        for i in range(1, k + 1):
            if i == j or (i == 1 and j == 0):
                continue
            if i == j + 1 and 0 < j:
                x, y = sigmas[j - 1], sigmas[j + 1]
                if sigmas[j] in rho:
                    codomain = c.group_of(rho)
                    rules.append(_Arrow(j - 1, table(x, sigmas[j]), table(sigmas[j], y), codomain.mul))
                else:
                    domain = c.group_of(tau)
                    rules.append(_Arrow(j - 1, table(x, y), mul=domain.mul, merge_first=True))
                continue
            rules.append(_Arrow(i - 1, table(sigmas[i - 1], sigmas[i])))
        plan = (remaining, tuple(rules))
        self._plans[(sigmas, j)] = plan
        return plan

    def plan(self, sigmas: Tuple[str, ...], j: int) -> Tuple[Tuple[str, ...], Tuple[_Arrow, ...]]:
        """The sigmas of the j-th face and how to compute its arrows, shared by every arrow choice"""
        return self._plan(tuple(sigmas), j)

    def face(self, s: OrbSimplex, j: int) -> OrbSimplex:
        k = s.degree
        if k == 0 or not 0 <= j <= k:
            raise IndexError(f'face index {j} out of range for a simplex of degree {k}')
        remaining, rules = self._plan(s.sigmas, j)
        return OrbSimplex(remaining, apply_rules(rules, s.arrows))

    def faces(self, s: OrbSimplex) -> List[OrbSimplex]:
        return [self.face(s, j) for j in range(s.degree + 1)]

    def leading_edge(self, s: OrbSimplex) -> OrbSimplex:
        """d_2 d_3 ... d_k s: the edge sigma_0 <- sigma_1, its arrow pushed down to their own group"""
        if s.degree < 1:
            raise IndexError(f'{s} has no edges')
        sigmas, arrows = self.leading_arrow(s.sigmas, s.arrows)
        return OrbSimplex(sigmas, arrows)

    def leading_arrow(self, sigmas: Tuple[str, ...], arrows: Tuple[int, ...]) -> Tuple[Tuple[str, ...], Tuple[int, ...]]:
        for j in range(len(arrows), 1, -1):
            sigmas, rules = self._plan(sigmas, j)
            arrows = apply_rules(rules, arrows)
        return sigmas, arrows

    def degeneracy(self, s: OrbSimplex, i: int) -> OrbSimplex:
        if not 0 <= i <= s.degree:
            raise IndexError(f'degeneracy index {i} out of range for a simplex of degree {s.degree}')
        sigmas = s.sigmas[:i + 1] + s.sigmas[i:]
        arrows = s.arrows[:i] + (0,) + s.arrows[i:]
        return OrbSimplex(sigmas, arrows)

    # -- enumeration -----------------------------------------------------

    def sigma_strings(self, k: int) -> Iterator[Tuple[str, ...]]:
        """Strings of k+1 top simplices with a common point, in canonical order"""
        c = self.complex
        tops = c.top_simplices

        def extend(prefix, subset):
            if len(prefix) == k + 1:
                yield prefix
                return
            for sigma in tops:
                grown = subset | {sigma}
                if grown in c.intersections:
                    yield from extend(prefix + (sigma,), grown)

        for sigma in tops:
            yield from extend((sigma,), frozenset([sigma]))

    def simplices(self, k: int, normalized: bool = True, progress: bool = False) -> List[OrbSimplex]:
        """Degree-k simplices, lexicographic on sigmas then arrows"""
        if k < 0:
            raise ValueError(f'degree must be nonnegative, got {k}')
        result = []
        strings = self.sigma_strings(k)
        for sigmas in tqdm(strings, desc=f'enumerating S_{k}', unit='string', disable=not progress):
            order = self.complex.group_of(frozenset(sigmas)).order
            ranges = [range(1, order) if normalized and a == b else range(order)
                      for a, b in zip(sigmas, sigmas[1:])]
            result.extend(OrbSimplex(sigmas, arrows) for arrows in product(*ranges))
        logger.debug(f'S_{k}: {len(result)} {"nondegenerate " if normalized else ""}simplices')
        return result

    def count(self, k: int, normalized: bool = True) -> int:
        """Size of S_k without materializing it"""
        total = 0
        for sigmas in self.sigma_strings(k):
            order = self.complex.group_of(frozenset(sigmas)).order
            size = 1
            for a, b in zip(sigmas, sigmas[1:]):
                size *= order - 1 if normalized and a == b else order
            total += size
        return total

    def connected_components(self) -> List[List[str]]:
        """Components of S, joined along nondegenerate 1-simplices, each in top-simplex order"""
        position = self.complex.position
        graph = nx.Graph()
        graph.add_nodes_from(self.complex.top_simplices)
        graph.add_edges_from((a, b) for a, b in self.sigma_strings(1) if a != b)
        components = [sorted(part, key=position.__getitem__) for part in nx.connected_components(graph)]
        return sorted(components, key=lambda part: position[part[0]])

    def basis_index(self, k: int, normalized: bool = True) -> 'BasisIndex':
        return BasisIndex(self, k, normalized)


class BasisIndex:
    """
    Position of every degree-k simplex in the order simplices(k) lists them.

    Each sigma string owns a block of consecutive positions; inside it the
    arrows are mixed-radix digits with the last arrow varying fastest. In a
    normalized basis the arrows between equal sigmas start at 1.
    """

    def __init__(self, sset: SimplicialSet, k: int, normalized: bool = True):
        self.degree = k
        self.normalized = normalized
        self._blocks: Dict[Tuple[str, ...], Tuple[int, Tuple[int, ...], Tuple[int, ...]]] = {}
        offset = 0
        for sigmas in sset.sigma_strings(k):
            order = sset.group(sigmas).order
            shifts = tuple(1 if normalized and a == b else 0 for a, b in zip(sigmas, sigmas[1:]))
            strides = [1] * k
            for i in range(k - 2, -1, -1):
                strides[i] = strides[i + 1] * (order - shifts[i + 1])
            self._blocks[sigmas] = (offset, tuple(strides), shifts)
            offset += strides[0] * (order - shifts[0]) if k else 1
        self.size = offset

    def __len__(self):
        return self.size

    def block(self, sigmas: Tuple[str, ...]):
        try:
            return self._blocks[sigmas]
        except KeyError:
            raise UnknownSimplexError(f'{" ".join(sigmas)} is not a string of S_{self.degree}')

    @staticmethod
    def locate(block, arrows: Sequence[int]) -> Optional[int]:
        """Position of the arrows inside a block, None for a degenerate simplex of a normalized basis"""
        position, strides, shifts = block
        for g, stride, shift in zip(arrows, strides, shifts):
            if g < shift:
                return None
            position += (g - shift) * stride
        return position

    def index(self, s: OrbSimplex) -> Optional[int]:
        return self.locate(self.block(s.sigmas), s.arrows)


@lru_cache(maxsize=16)
def simplicial_set(complex_: OrbifoldComplex) -> SimplicialSet:
    return SimplicialSet(complex_)


# -- the operations on a complex -----------------------------------------

def simplex_group(complex_: OrbifoldComplex, sigmas: Sequence[str]) -> FiniteGroup:
    """Isotropy group of the common intersection of the sigmas"""
    subset = complex_.subset(sigmas)
    if not subset:
        raise UnknownSimplexError('a simplex needs at least one top simplex')
    return complex_.group_of(subset)


def face(complex_: OrbifoldComplex, s: OrbSimplex, j: int) -> OrbSimplex:
    return simplicial_set(complex_).face(s, j)


def degeneracy(complex_: OrbifoldComplex, s: OrbSimplex, i: int) -> OrbSimplex:
    return simplicial_set(complex_).degeneracy(s, i)


def enumerate_nondegenerate(complex_: OrbifoldComplex, k: int, progress: bool = False) -> List[OrbSimplex]:
    return simplicial_set(complex_).simplices(k, normalized=True, progress=progress)


def enumerate_all(complex_: OrbifoldComplex, k: int, progress: bool = False) -> List[OrbSimplex]:
    return simplicial_set(complex_).simplices(k, normalized=False, progress=progress)


def parse_simplex(text: str) -> OrbSimplex:
    """Inverse of str(OrbSimplex): 'f <-0- c <-1- a'"""
    tokens = text.split()
    if not tokens or len(tokens) % 2 == 0:
        raise ValueError(f'cannot read a simplex from {text!r}')
    sigmas, arrows = [tokens[0]], []
    for arrow, sigma in zip(tokens[1::2], tokens[2::2]):
        if not (arrow.startswith('<-') and arrow.endswith('-') and arrow[2:-1].isdigit()):
            raise ValueError(f'cannot read the arrow {arrow!r} in {text!r}')
        arrows.append(int(arrow[2:-1]))
        sigmas.append(sigma)
    return OrbSimplex(tuple(sigmas), tuple(arrows))
