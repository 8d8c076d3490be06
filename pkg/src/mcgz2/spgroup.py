# -*- coding: utf-8 -*-

"""Subgroups of the symplectic group over GF(2) generated by twist matrices.

Each matrix is turned into a permutation of the ``2^(2g)`` classes and the generated group is described by a
stabilizer chain built with a deterministic Schreier-Sims algorithm. Orders are exact Python integers.
"""

import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

import numpy as np

from mcgz2.constants import DEFAULT_GENUS, MCGZ2_KRANGE
from mcgz2.exceptions import DimensionError, NotSymplecticError, UnknownNameError, ZeroClassError
from mcgz2.factorization import Factorization
from mcgz2.gf2core import BitMatrix, BitVec, is_symplectic, transvection_matrix
from mcgz2.surface import (
    CurveRegistry, HomologyClass, MappingClassWord, apply_word, get_registry, kanenobu_word, lift_matrix, twist_power,
)

__all__ = [
    'SpElement',
    'SpSubgroup',
    'TwistIdentity',
    'TWIST_IDENTITIES',
    'twist_matrix',
    'group_from',
    'group_of',
    'same_subgroup',
    'verify_twist_identity',
    'sweep_twist_identity',
    'symplectic_group_order',
    'orthogonal_group_order',
    'lift_twist_matrix',
    'lift_word_matrix',
]

logger = logging.getLogger(__name__)

Permutation = np.ndarray


class SpElement:
    """A matrix preserving the mod-2 intersection form."""

    __slots__ = ('matrix', '_permutation')

    def __init__(self, matrix: BitMatrix, check: bool = True) -> None:
        """Wrap a matrix.

        :raises NotSymplecticError: if ``check`` is set and the matrix does not preserve the form
        """
        if check and not is_symplectic(matrix):
            raise NotSymplecticError(f'matrix does not preserve the intersection form: {matrix.to_json()}')
        self.matrix = matrix
        self._permutation: Optional[Permutation] = None

    @classmethod
    def identity(cls, genus: int = DEFAULT_GENUS) -> 'SpElement':
        """Return the identity element."""
        return cls(BitMatrix.identity(2 * genus), check=False)

    @classmethod
    def from_permutation(cls, permutation: Permutation, genus: int) -> 'SpElement':
        """Read the matrix off a linear permutation of the classes; column ``j`` is the image of unit ``j``."""
        columns = [BitVec(int(permutation[1 << j]), genus) for j in range(2 * genus)]
        return cls(BitMatrix.from_columns(columns), check=False)

    @property
    def genus(self) -> int:
        """The genus of the surface."""
        return self.matrix.shape[0] // 2

    def permutation(self) -> Permutation:
        """Return the action on all classes: entry ``x`` is the image of the class with bits ``x``."""
        if self._permutation is None:
            n = self.matrix.shape[0]
            classes = np.arange(1 << n, dtype=np.int64)
            bits = (classes[:, None] >> np.arange(n)) & 1
            images = (bits @ self.matrix.array.T.astype(np.int64)) % 2
            self._permutation = (images << np.arange(n)).sum(axis=1).astype(np.int32)
        return self._permutation

    def __matmul__(self, other: 'SpElement') -> 'SpElement':
        return SpElement(self.matrix @ other.matrix, check=False)

    def inverse(self) -> 'SpElement':
        """Return the inverse element."""
        return SpElement(self.matrix.inverse(), check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpElement):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f'SpElement({self.matrix.to_json()!r})'

    def to_json(self):
        """Return a representation of the instance suitable for passing in to JSON conversion."""
        return self.matrix.to_json()


def twist_matrix(c: Union[HomologyClass, BitVec]) -> SpElement:
    """Return the transvection ``x -> x + <x, c> c``.

    :raises ZeroClassError: for the zero class
    """
    vec = c.vec if isinstance(c, HomologyClass) else c
    if not vec:
        raise ZeroClassError('the twist about the zero class is not defined')
    return SpElement(transvection_matrix(vec), check=False)


def _compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` then ``q``."""
    return q[p]


def _invert(p: Permutation) -> Permutation:
    inverse = np.empty_like(p)
    inverse[p] = np.arange(len(p), dtype=p.dtype)
    return inverse


def _is_identity(p: Permutation) -> bool:
    return bool(np.array_equal(p, np.arange(len(p))))


def _choose_base_point(generators: Sequence[Permutation]) -> int:
    """Return the smallest point of the largest nontrivial orbit."""
    degree = len(generators[0])
    seen = np.zeros(degree, dtype=bool)
    best_size, best_point = 0, -1
    for start in range(1, degree):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        for x in orbit:
            for g in generators:
                y = int(g[x])
                if not seen[y]:
                    seen[y] = True
                    orbit.append(y)
        if len(orbit) > 1 and len(orbit) > best_size:
            best_size, best_point = len(orbit), min(orbit)
    return best_point


class _Level:
    """One level of a stabilizer chain: a base point, its generators, and a transversal of its orbit."""

    def __init__(self, base: int, identity: Permutation) -> None:
        self.base = base
        self.generators: List[Permutation] = []
        self.orbit = [base]
        self.transversal: Dict[int, Permutation] = {base: identity}
        self.inverse_transversal: Dict[int, Permutation] = {base: identity}
        self.checked: Set[Tuple[int, int]] = set()

    def extend(self) -> None:
        """Close the orbit under the current generators."""
        position = 0
        while position < len(self.orbit):
            x = self.orbit[position]
            for g in self.generators:
                y = int(g[x])
                if y not in self.transversal:
                    representative = _compose(self.transversal[x], g)
                    self.transversal[y] = representative
                    self.inverse_transversal[y] = _invert(representative)
                    self.orbit.append(y)
            position += 1


@dataclass
class SpSubgroup:
    """A subgroup of ``Sp(2g, 2)`` with its stabilizer chain."""

    generators: Tuple[SpElement, ...]
    genus: int
    levels: List[_Level] = field(repr=False)
    schreier_generators: int = 0

    @property
    def degree(self) -> int:
        """The number of classes acted on, including zero."""
        return 1 << (2 * self.genus)

    @property
    def order(self) -> int:
        """The exact order, the product of the basic orbit sizes."""
        return reduce(lambda a, b: a * b, (len(level.orbit) for level in self.levels), 1)

    @property
    def base(self) -> List[int]:
        """The base points, as class bits."""
        return [level.base for level in self.levels]

    @property
    def orbit_sizes(self) -> List[int]:
        """The basic orbit sizes."""
        return [len(level.orbit) for level in self.levels]

    def strong_generators(self) -> List[SpElement]:
        """Return the strong generating set as matrices."""
        found, seen = [], set()
        for level in self.levels:
            for g in level.generators:
                key = g.tobytes()
                if key not in seen:
                    seen.add(key)
                    found.append(SpElement.from_permutation(g, self.genus))
        return found

    def sift(self, permutation: Permutation, start: int = 0) -> Tuple[Permutation, int]:
        """Strip ``permutation`` through the levels from ``start``; return the residue and where it stopped."""
        for depth in range(start, len(self.levels)):
            level = self.levels[depth]
            image = int(permutation[level.base])
            if image not in level.inverse_transversal:
                return permutation, depth
            permutation = _compose(permutation, level.inverse_transversal[image])
        return permutation, len(self.levels)

    def contains(self, element: SpElement) -> bool:
        """Decide membership exactly by sifting."""
        if element.genus != self.genus:
            raise DimensionError(f'element of genus {element.genus} against a group of genus {self.genus}')
        residue, _ = self.sift(element.permutation())
        return _is_identity(residue)

    def __contains__(self, element: SpElement) -> bool:
        return self.contains(element)

    def is_subgroup_of(self, other: 'SpSubgroup') -> bool:
        """Return True if every generator of this group lies in ``other``."""
        return all(other.contains(g) for g in self.generators)

    def to_json(self):
        """Return a representation of the instance suitable for passing in to JSON conversion."""
        return {
            'order': str(self.order),
            'genus': self.genus,
            'base': [str(BitVec(point, self.genus)) for point in self.base],
            'orbit_sizes': self.orbit_sizes,
            'generators': len(self.generators),
        }

    @classmethod
    def from_strong_generators(
        cls,
        generators: Sequence[SpElement],
        base: Sequence[int],
        strong_generators: Sequence[SpElement],
        genus: int,
    ) -> 'SpSubgroup':
        """Rebuild a chain from a known base and strong generating set without running Schreier-Sims."""
        identity = np.arange(1 << (2 * genus), dtype=np.int32)
        levels = [_Level(point, identity) for point in base]
        permutations = [g.permutation() for g in strong_generators]
        for g in permutations:
            for level in levels:
                level.generators.append(g)
                if g[level.base] != level.base:
                    break
        for level in levels:
            level.extend()
        return cls(tuple(generators), genus, levels)

    @classmethod
    def build(cls, generators: Sequence[SpElement], genus: int) -> 'SpSubgroup':
        """Run Schreier-Sims on ``generators``."""
        degree = 1 << (2 * genus)
        identity = np.arange(degree, dtype=np.int32)

        unique: List[Permutation] = []
        seen = set()
        for element in generators:
            permutation = element.permutation()
            key = permutation.tobytes()
            if _is_identity(permutation) or key in seen:
                continue
            seen.add(key)
            unique.append(permutation)

        group = cls(tuple(generators), genus, [])
        if not unique:
            return group

        levels = group.levels
        levels.append(_Level(_choose_base_point(unique), identity))
        for g in unique:
            if all(g[level.base] == level.base for level in levels):
                levels.append(_Level(_choose_base_point([g]), identity))
        for g in unique:
            for level in levels:
                level.generators.append(g)
                if g[level.base] != level.base:
                    break
        for level in levels:
            level.extend()

        depth = len(levels) - 1
        while depth >= 0:
            level = levels[depth]
            enlarged = False
            for x in level.orbit:
                for index, g in enumerate(level.generators):
                    if (x, index) in level.checked:
                        continue
                    level.checked.add((x, index))
                    image = int(g[x])
                    schreier = _compose(_compose(level.transversal[x], g), level.inverse_transversal[image])
                    group.schreier_generators += 1
                    residue, stopped = group.sift(schreier, depth + 1)
                    if _is_identity(residue):
                        continue
                    if stopped == len(levels):
                        levels.append(_Level(_choose_base_point([residue]), identity))
                    for lower in range(depth + 1, stopped + 1):
                        levels[lower].generators.append(residue)
                        levels[lower].extend()
                    logger.debug('new strong generator at level %d, orbit sizes %s', stopped, group.orbit_sizes)
                    depth = stopped
                    enlarged = True
                    break
                if enlarged:
                    break
            if not enlarged:
                depth -= 1

        logger.debug(
            'built chain of order %d from %d Schreier generators', group.order, group.schreier_generators,
        )
        return group


def group_from(generators: Iterable[Union[SpElement, BitMatrix]], genus: Optional[int] = None) -> SpSubgroup:
    """Build the subgroup generated by symplectic matrices.

    :param genus: required only when ``generators`` is empty
    :raises NotSymplecticError: if a generator does not preserve the form
    """
    elements = [g if isinstance(g, SpElement) else SpElement(g) for g in generators]
    for element in elements:
        if not is_symplectic(element.matrix):
            raise NotSymplecticError(f'generator does not preserve the intersection form: {element.to_json()}')
    if genus is None:
        genus = elements[0].genus if elements else DEFAULT_GENUS
    group = SpSubgroup.build(elements, genus)
    logger.info('group of order %d on %d generators', group.order, len(elements))
    return group


def group_of(w: Factorization, extra: Sequence[HomologyClass] = ()) -> SpSubgroup:
    """Build the mod-2 shadow of the monodromy group of ``w``, optionally with more twists adjoined."""
    generators = [twist_matrix(letter.homology) for letter in w] + [twist_matrix(c) for c in extra]
    return group_from(generators, genus=w.genus)


def same_subgroup(first: SpSubgroup, second: SpSubgroup) -> bool:
    """Return True if the two groups are equal, by mutual generator membership."""
    return first.order == second.order and first.is_subgroup_of(second) and second.is_subgroup_of(first)


def symplectic_group_order(g: int) -> int:
    """Return ``|Sp(2g, 2)| = 2^(g^2) prod_{i=1..g} (4^i - 1)``."""
    return 2 ** (g * g) * reduce(lambda a, i: a * (4 ** i - 1), range(1, g + 1), 1)


def orthogonal_group_order(g: int, sign: int = -1) -> int:
    """Return ``|O^sign(2g, 2)| = 2 * 2^(g(g-1)) (2^g - sign) prod_{i=1..g-1} (4^i - 1)``."""
    if sign not in (1, -1):
        raise ValueError(f'sign must be +1 or -1, got {sign}')
    return 2 * 2 ** (g * (g - 1)) * (2 ** g - sign) * reduce(lambda a, i: a * (4 ** i - 1), range(1, g), 1)


def lift_twist_matrix(c: HomologyClass, n: int = 0) -> np.ndarray:
    """Return the integer transvection ``x -> x + <x, c> c`` on lifts, reduced mod ``n`` unless ``n`` is 0."""
    registry = CurveRegistry({'c': c}, genus=c.genus)
    return lift_matrix(MappingClassWord((('c', 1),)), n, registry)


def lift_word_matrix(word: MappingClassWord, n: int = 0, registry: Optional[CurveRegistry] = None) -> np.ndarray:
    """Return the integer action of ``word`` on lifts, reduced mod ``n`` unless ``n`` is 0."""
    return lift_matrix(word, n, registry)


# named twist identities

Side = Union[BitMatrix, HomologyClass]


def _twist(c: HomologyClass) -> BitMatrix:
    return transvection_matrix(c.vec)


def _conjugate(a: HomologyClass, b: HomologyClass, inverse: bool = False) -> BitMatrix:
    """Return the shadow of conjugating ``t_b`` by ``t_a`` (by ``t_a^-1`` if ``inverse``)."""
    m = _twist(a)
    if inverse:
        m = m.inverse()
    return m @ _twist(b) @ m.inverse()


def _power_chain(registry: CurveRegistry, axis: str, first: str, second: str, k: int, inverse: bool) -> List[Side]:
    c = registry[axis]
    x, y = registry[first], registry[second]
    return [
        _twist(c),
        _conjugate(twist_power(c, x, k), twist_power(c, x, k + 1)),
        _conjugate(twist_power(c, y, k + 1), twist_power(c, y, k), inverse=inverse),
    ]


def _key1(registry: CurveRegistry, k: int, p: int, q: int) -> List[Side]:
    return _power_chain(registry, 'c_2', 'B_2', 'B_3', k, inverse=True)


def _key2(registry: CurveRegistry, k: int, p: int, q: int) -> List[Side]:
    return _power_chain(registry, 'd', 'B_4', 'B_3', k, inverse=False)


def _key3(registry: CurveRegistry, k: int, p: int, q: int) -> List[Side]:
    first = apply_word(kanenobu_word(k, q), registry['B_3'], registry)
    second = apply_word(kanenobu_word(k + 1, q), registry['B_3'], registry)
    return [_twist(registry['c_2']), _conjugate(first, second)]


def _key4(registry: CurveRegistry, k: int, p: int, q: int) -> List[Side]:
    first = apply_word(kanenobu_word(p, k + 1), registry['B_4'], registry)
    second = apply_word(kanenobu_word(p, k), registry['B_4'], registry)
    return [_twist(registry['d']), _conjugate(first, second, inverse=True)]


def _letter_chain(registry: CurveRegistry, axis: str, pairs: Sequence[Tuple[str, int]]) -> List[Side]:
    sides: List[Side] = [registry[axis]]
    for curve, sign in pairs:
        word = MappingClassWord(((curve, sign), (axis, sign)))
        sides.append(apply_word(word, registry[curve], registry))
    return sides


def _letter1(registry: CurveRegistry, k: int, p: int, q: int) -> List[Side]:
    return _letter_chain(registry, 'c_2', [('B_2', 1), ('B_3', -1)])


def _letter2(registry: CurveRegistry, k: int, p: int, q: int) -> List[Side]:
    return _letter_chain(registry, 'd', [('B_4', 1), ('B_3', 1)])


@dataclass(frozen=True)
class TwistIdentity:
    """A named identity between twists or curves, checked through its mod-2 shadow."""

    name: str
    statement: str
    parameters: Tuple[str, ...]
    sides: Callable[[CurveRegistry, int, int, int], List[Side]] = field(repr=False, compare=False)


TWIST_IDENTITIES: Mapping[str, TwistIdentity] = {
    identity.name: identity
    for identity in (
        TwistIdentity('key1', 't(c_2) = t(c_2)^k(t(B_2)) conjugating t(c_2)^(k+1)(t(B_2)) '
                              '= t(c_2)^(k+1)(t(B_3)^-1) conjugating t(c_2)^k(t(B_3))', ('k',), _key1),
        TwistIdentity('key2', 't(d) = t(d)^k(t(B_4)) conjugating t(d)^(k+1)(t(B_4)) '
                              '= t(d)^(k+1)(t(B_3)) conjugating t(d)^k(t(B_3))', ('k',), _key2),
        TwistIdentity('key3', 't(c_2) = Phi(k,q)(t(B_3)) conjugating Phi(k+1,q)(t(B_3))', ('k', 'q'), _key3),
        TwistIdentity('key4', 't(d) = Phi(p,k+1)(t(B_4))^-1 conjugating Phi(p,k)(t(B_4))', ('k', 'p'), _key4),
        TwistIdentity('letter1', 'c_2 = (t(B_2) o t(c_2))(B_2) = (t(B_3)^-1 o t(c_2)^-1)(B_3)', (), _letter1),
        TwistIdentity('letter2', 'd = (t(B_4) o t(d))(B_4) = (t(B_3) o t(d))(B_3)', (), _letter2),
    )
}


def verify_twist_identity(
    name: str,
    k: int = 0,
    p: int = 0,
    q: int = 0,
    registry: Optional[CurveRegistry] = None,
    renames: Optional[Mapping[str, str]] = None,
) -> bool:
    """Evaluate every side of a named identity as a matrix and compare.

    :param renames: substitutions applied to the registry first, e.g. ``{'B_4': 'B_5'}`` to perturb an identity
    :raises UnknownNameError: if no identity has that name
    """
    try:
        identity = TWIST_IDENTITIES[name]
    except KeyError:
        raise UnknownNameError('identity', name) from None
    registry = registry if registry is not None else get_registry()
    if renames:
        registry = registry.renamed(renames)
    sides = identity.sides(registry, k, p, q)
    holds = all(side == sides[0] for side in sides[1:])
    logger.debug('%s with k=%d, p=%d, q=%d: %s', name, k, p, q, 'holds' if holds else 'fails')
    return holds


def sweep_twist_identity(
    name: str,
    k_range: Optional[Iterable[int]] = None,
    other_range: Iterable[int] = range(-2, 3),
    registry: Optional[CurveRegistry] = None,
) -> Dict[Tuple[int, int], bool]:
    """Check a named identity for every ``k`` in ``k_range`` and every value of its other parameter.

    :returns: results keyed by ``(k, other)``; ``other`` is 0 for identities without a second parameter
    """
    if name not in TWIST_IDENTITIES:
        raise UnknownNameError('identity', name)
    identity = TWIST_IDENTITIES[name]
    k_values = list(k_range) if k_range is not None else list(range(MCGZ2_KRANGE + 1))
    others = list(other_range) if len(identity.parameters) > 1 else [0]
    results = {}
    for k in k_values if identity.parameters else [0]:
        for other in others:
            p = other if 'p' in identity.parameters else 0
            q = other if 'q' in identity.parameters else 0
            results[k, other] = verify_twist_identity(name, k=k, p=p, q=q, registry=registry)
    return results
