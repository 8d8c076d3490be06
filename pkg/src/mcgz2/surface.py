# -*- coding: utf-8 -*-

"""The homology model of the genus-5 surface.

Curves are known through their classes in the mod-2 first homology, optionally carrying an integer lift.
Dehn twists act as transvections ``x -> x + <x, c> c``, and a :class:`MappingClassWord` applies its letters from
right to left.
"""

import json
import logging
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import (
    Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple, Union,
)

import numpy as np

from mcgz2.constants import DEFAULT_GENUS, DEFAULT_REGISTRY_PATH, DEFAULT_RELATIONS_PATH
from mcgz2.exceptions import ConfigurationError, DimensionError, UnknownNameError
from mcgz2.gf2core import BitMatrix, BitVec, pairing, rank, solve_affine, symplectic_form
from mcgz2.grammar import ClassSum, CurveRef, PhiImage, ZeroClass, parse_class

__all__ = [
    'HomologyClass',
    'CurveRegistry',
    'MappingClassWord',
    'Relation',
    'RelationCheck',
    'KANENOBU_CURVES',
    'intersection',
    'integer_pairing',
    'transvect',
    'twist_power',
    'lift_matrix',
    'apply_word',
    'kanenobu_word',
    'load_relations',
    'validate_registry',
    'resolve_registry_path',
    'get_registry',
    'solve_pairing_constraints',
    'stallings_constraints',
    'solve_stallings_class',
]

logger = logging.getLogger(__name__)

#: Curves appearing in the fibred monodromy of the Kanenobu knots
KANENOBU_CURVES = ('d', 'c_2', 'a_2', 'b_2', 'a_1', 'b_1')


@dataclass(frozen=True)
class HomologyClass:
    """A class in the mod-2 homology of the surface, with an optional integer lift."""

    vec: BitVec
    int_lift: Optional[Tuple[int, ...]] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.int_lift is None:
            return
        if len(self.int_lift) != self.vec.dimension:
            raise DimensionError(f'lift has {len(self.int_lift)} entries, expected {self.vec.dimension}')
        if tuple(v % 2 for v in self.int_lift) != tuple(self.vec):
            raise ValueError(f'lift {self.int_lift} does not reduce to {self.vec}')

    @classmethod
    def from_string(cls, text: str) -> 'HomologyClass':
        """Parse a ``0``/``1`` coordinate string; the lift is the 0/1 lift."""
        vec = BitVec.from_string(text)
        return cls(vec, tuple(vec))

    @classmethod
    def zero(cls, genus: int = DEFAULT_GENUS) -> 'HomologyClass':
        """Return the zero class."""
        return cls(BitVec.zero(genus), (0,) * (2 * genus))

    @property
    def genus(self) -> int:
        """The genus of the surface."""
        return self.vec.genus

    def lift(self) -> Tuple[int, ...]:
        """Return the integer lift, defaulting to the 0/1 lift of the bits."""
        return self.int_lift if self.int_lift is not None else tuple(self.vec)

    def __add__(self, other: 'HomologyClass') -> 'HomologyClass':
        vec = self.vec + other.vec
        if self.int_lift is None or other.int_lift is None:
            return HomologyClass(vec)
        return HomologyClass(vec, tuple(x + y for x, y in zip(self.int_lift, other.int_lift)))

    def __bool__(self) -> bool:
        return bool(self.vec)

    def __str__(self) -> str:
        return str(self.vec)

    def to_json(self) -> str:
        """Return a representation of the instance suitable for passing in to JSON conversion."""
        return str(self.vec)


def intersection(u: HomologyClass, v: HomologyClass) -> int:
    """Return the mod-2 intersection number ``u^T J v``.

    :raises DimensionError: if the classes live on surfaces of different genus
    """
    return pairing(u.vec, v.vec)


def integer_pairing(x: Sequence[int], y: Sequence[int]) -> int:
    """Evaluate the integer symplectic form ``sum x_ai y_bi - x_bi y_ai`` on two lifts."""
    if len(x) != len(y) or len(x) % 2:
        raise DimensionError(f'cannot pair lifts of lengths {len(x)} and {len(y)}')
    g = len(x) // 2
    return sum(x[i] * y[g + i] - x[g + i] * y[i] for i in range(g))


def twist_power(c: HomologyClass, x: HomologyClass, exponent: int = 1) -> HomologyClass:
    """Apply the ``exponent``-th power of the twist about ``c`` to ``x``.

    On the lift this is ``x + exponent <x, c> c``; mod 2 only the parity of ``exponent`` matters.
    """
    if exponent % 2 and intersection(x, c):
        vec = x.vec + c.vec
    else:
        vec = x.vec
    if x.int_lift is None or c.int_lift is None:
        return HomologyClass(vec)
    k = exponent * integer_pairing(x.int_lift, c.int_lift)
    return HomologyClass(vec, tuple(a + k * b for a, b in zip(x.int_lift, c.int_lift)))


def transvect(c: HomologyClass, x: HomologyClass) -> HomologyClass:
    """Return ``x + <x, c> c``, the image of ``x`` under the twist about ``c``."""
    return twist_power(c, x, 1)


@dataclass(frozen=True)
class MappingClassWord:
    """A word in Dehn twists, written left to right and applied right to left.

    ``letters`` holds ``(curve name, exponent)`` pairs. Exponents are kept as given so that reports can display
    them literally.
    """

    letters: Tuple[Tuple[str, int], ...] = ()
    name: Optional[str] = field(default=None, compare=False)

    def __mul__(self, other: 'MappingClassWord') -> 'MappingClassWord':
        """Compose so that ``other`` is applied first."""
        return MappingClassWord(self.letters + other.letters)

    def inverse(self) -> 'MappingClassWord':
        """Return the inverse word."""
        return MappingClassWord(tuple((curve, -exponent) for curve, exponent in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Tuple[str, int]]:
        return iter(self.letters)

    def curves(self) -> Set[str]:
        """Return the names of the curves used by the word."""
        return {curve for curve, _ in self.letters}

    def __str__(self) -> str:
        if self.name is not None:
            return self.name
        if not self.letters:
            return 'id'
        return ' o '.join(
            f't({curve})' if exponent == 1 else f't({curve})^{exponent}' for curve, exponent in self.letters
        )


def kanenobu_word(p: int, q: int) -> MappingClassWord:
    """Return the monodromy ``t_d^q o t_c2^p o t_a2 o t_b2^-1 o t_a1^-1 o t_b1`` of the fibred knot ``K_{p,q}``.

    Letters with exponent zero are dropped.
    """
    letters = (('d', q), ('c_2', p), ('a_2', 1), ('b_2', -1), ('a_1', -1), ('b_1', 1))
    return MappingClassWord(tuple(letter for letter in letters if letter[1]), name=f'Phi({p},{q})')


class CurveRegistry:
    """Named curves of the surface with their homology classes."""

    def __init__(
        self,
        curves: Mapping[str, HomologyClass],
        genus: int = DEFAULT_GENUS,
        basis: Optional[Sequence[str]] = None,
        version: str = 'unversioned',
        source: Optional[str] = None,
    ) -> None:
        """Build a registry.

        :param curves: classes by name, in display order
        :param genus: the genus of the surface
        :param basis: names of the basis ``a_1..a_g, b_1..b_g``, defining the coordinate order
        :param version: a version stamp carried into reports
        :param source: where the registry was loaded from
        """
        self.genus = genus
        self.basis = tuple(basis) if basis is not None else tuple(
            [f'a_{i}' for i in range(1, genus + 1)] + [f'b_{i}' for i in range(1, genus + 1)]
        )
        self.version = version
        self.source = source
        self._curves: Dict[str, HomologyClass] = dict(curves)
        for name, homology in self._curves.items():
            if homology.genus != genus:
                raise DimensionError(f'curve {name} has genus {homology.genus}, registry has genus {genus}')

    @classmethod
    def from_json(cls, data: Mapping, source: Optional[str] = None) -> 'CurveRegistry':
        """Build a registry from its JSON document.

        :raises ConfigurationError: if a required field is missing or a coordinate string is malformed
        """
        try:
            genus = int(data['genus'])
            basis = list(data['basis'])
            raw_curves = data['curves']
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigurationError(f'malformed registry {source or ""}: {e}') from e
        if len(basis) != 2 * genus:
            raise ConfigurationError(f'registry basis has {len(basis)} names, expected {2 * genus}')

        curves = {}
        for name, coordinates in raw_curves.items():
            try:
                homology = HomologyClass.from_string(coordinates)
            except DimensionError as e:
                raise ConfigurationError(f'malformed coordinates for curve {name}: {coordinates!r}') from e
            if homology.genus != genus:
                raise ConfigurationError(f'curve {name} has {homology.vec.dimension} coordinates, expected {2 * genus}')
            curves[name] = homology

        return cls(curves, genus=genus, basis=basis, version=str(data.get('version', 'unversioned')), source=source)

    @classmethod
    def from_path(cls, path: str) -> 'CurveRegistry':
        """Load a registry from a JSON file."""
        try:
            with open(path) as file:
                data = json.load(file)
        except (OSError, ValueError) as e:
            raise ConfigurationError(f'could not read registry {path}: {e}') from e
        logger.debug('loaded registry from %s', path)
        return cls.from_json(data, source=path)

    @property
    def form(self) -> BitMatrix:
        """The mod-2 intersection form ``J``."""
        return symplectic_form(self.genus)

    @property
    def names(self) -> List[str]:
        """The curve names in registry order."""
        return list(self._curves)

    def __getitem__(self, name: str) -> HomologyClass:
        try:
            return self._curves[name]
        except KeyError:
            raise UnknownNameError('curve', name) from None

    def get(self, name: str) -> Optional[HomologyClass]:
        """Get a class by name if it exists."""
        return self._curves.get(name)

    def __contains__(self, name: object) -> bool:
        return name in self._curves

    def __iter__(self) -> Iterator[str]:
        return iter(self._curves)

    def __len__(self) -> int:
        return len(self._curves)

    def items(self) -> Iterable[Tuple[str, HomologyClass]]:
        """Iterate over ``(name, class)`` pairs."""
        return self._curves.items()

    def name_of(self, homology: HomologyClass) -> Optional[str]:
        """Return the first name carrying ``homology``, if any."""
        for name, candidate in self._curves.items():
            if candidate == homology:
                return name
        return None

    def with_curve(self, name: str, homology: HomologyClass) -> 'CurveRegistry':
        """Return a copy in which ``name`` is (re)defined as ``homology``."""
        curves = dict(self._curves)
        curves[name] = homology
        return CurveRegistry(curves, self.genus, self.basis, version=f'{self.version}+{name}', source=self.source)

    def without(self, name: str) -> 'CurveRegistry':
        """Return a copy without the curve ``name``."""
        curves = {key: value for key, value in self._curves.items() if key != name}
        return CurveRegistry(curves, self.genus, self.basis, version=f'{self.version}-{name}', source=self.source)

    def renamed(self, substitutions: Mapping[str, str]) -> 'CurveRegistry':
        """Return a copy where each name in ``substitutions`` resolves to the class of its target."""
        curves = dict(self._curves)
        for old, new in substitutions.items():
            curves[old] = self[new]
        label = ','.join(f'{old}->{new}' for old, new in substitutions.items())
        return CurveRegistry(curves, self.genus, self.basis, version=f'{self.version}[{label}]', source=self.source)

    def evaluate(self, expression: Union[str, ClassSum]) -> HomologyClass:
        """Evaluate a class expression such as ``"B_4 + a_2 + d"``.

        :raises ExpressionSyntaxError: if the text does not parse
        :raises UnknownNameError: if a name does not resolve
        """
        node = parse_class(expression) if isinstance(expression, str) else expression
        total = HomologyClass.zero(self.genus)
        for term in node.terms:
            if isinstance(term, ZeroClass):
                continue
            if isinstance(term, PhiImage):
                total = total + apply_word(kanenobu_word(term.p, term.q), self[term.target], self)
            else:
                total = total + self[term.name]
        return total

    def to_json(self):
        """Return a representation of the instance suitable for passing in to JSON conversion."""
        return {
            'version': self.version,
            'genus': self.genus,
            'basis': list(self.basis),
            'curves': {name: str(homology) for name, homology in self._curves.items()},
        }


def resolve_registry_path(path: Optional[str] = None) -> str:
    """Get a registry path from one of the various configuration locations.

    Prioritizing a passed-in value, followed by a value from an environment variable, and finally the default.
    """
    if path is not None:
        logger.info('using passed-in registry: %s', path)
        return path

    path = os.environ.get('MCGZ2_REGISTRY')

    if path is not None:
        logger.info('using registry from environment: %s', path)
        return path

    logger.debug('using default registry: %s', DEFAULT_REGISTRY_PATH)
    return DEFAULT_REGISTRY_PATH


@lru_cache(maxsize=None)
def _load_registry(path: str) -> CurveRegistry:
    return CurveRegistry.from_path(path)


def get_registry(path: Optional[str] = None) -> CurveRegistry:
    """Load (once) the registry chosen by :func:`resolve_registry_path`."""
    return _load_registry(resolve_registry_path(path))


def apply_word(
    word: MappingClassWord, x: HomologyClass, registry: Optional[CurveRegistry] = None,
) -> HomologyClass:
    """Apply the letters of ``word`` to ``x``, rightmost first.

    :raises UnknownNameError: if a letter does not resolve in the registry
    """
    registry = registry if registry is not None else get_registry()
    for curve, exponent in reversed(word.letters):
        x = twist_power(registry[curve], x, exponent)
    return x


def lift_matrix(word: MappingClassWord, n: int = 0, registry: Optional[CurveRegistry] = None) -> np.ndarray:
    """Return the integer matrix of ``word`` acting on lifts, reduced mod ``n`` unless ``n`` is 0.

    Each twist acts as ``x -> x + e <x, c> c`` on the integer lift of its curve, so the result depends on the
    lifts and the sign convention of the registry.
    """
    registry = registry if registry is not None else get_registry()
    dimension = 2 * registry.genus
    result = np.eye(dimension, dtype=object)
    for curve, exponent in reversed(word.letters):
        c = np.array(registry[curve].lift(), dtype=object)
        form_row = np.array(
            [c[registry.genus + i] for i in range(registry.genus)] + [-c[i] for i in range(registry.genus)],
            dtype=object,
        )
        twist = np.eye(dimension, dtype=object) + exponent * np.outer(c, form_row)
        result = twist.dot(result)
        if n:
            result = result % n
    return result


@dataclass(frozen=True)
class Relation:
    """A displayed homology relation ``lhs = rhs`` between class expressions."""

    name: str
    source: str
    lhs: str
    rhs: str
    printed_rhs: Optional[str] = None


@dataclass
class RelationCheck:
    """The outcome of checking one relation against a registry."""

    name: str
    source: str
    lhs: str
    rhs: str
    passed: bool
    note: Optional[str] = None

    def to_json(self):
        """Return a representation of the instance suitable for passing in to JSON conversion."""
        return {
            'name': self.name,
            'source': self.source,
            'lhs': self.lhs,
            'rhs': self.rhs,
            'passed': self.passed,
            'note': self.note,
        }


def load_relations(path: Optional[str] = None) -> List[Relation]:
    """Load the relations document."""
    path = path or DEFAULT_RELATIONS_PATH
    try:
        with open(path) as file:
            data = json.load(file)
        return [Relation(**entry) for entry in data['relations']]
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise ConfigurationError(f'could not read relations {path}: {e}') from e


def _referenced_curves(expression: str) -> Set[str]:
    names = set()
    for term in parse_class(expression).terms:
        if isinstance(term, CurveRef):
            names.add(term.name)
        elif isinstance(term, PhiImage):
            names.add(term.target)
            names.update(KANENOBU_CURVES)
    return names


def validate_registry(registry: CurveRegistry, relations: Optional[Sequence[Relation]] = None) -> List[RelationCheck]:
    """Check the intersection form and every listed relation against ``registry``.

    :raises ConfigurationError: naming the first curve a relation needs that the registry lacks
    """
    relations = load_relations() if relations is None else relations

    for relation in relations:
        for expression in (relation.lhs, relation.rhs):
            missing = sorted(_referenced_curves(expression) - set(registry))
            if missing:
                raise ConfigurationError(f'registry is missing curve {missing[0]} needed by relation {relation.name}')

    form = registry.form
    checks = [
        RelationCheck(
            name='form-alternating', source='form', lhs='J', rhs='J^T, zero diagonal',
            passed=form == form.transpose() and not form.array.diagonal().any(),
        ),
        RelationCheck(
            name='form-nondegenerate', source='form', lhs='rank J', rhs=str(2 * registry.genus),
            passed=rank(form) == 2 * registry.genus,
        ),
        RelationCheck(
            name='basis', source='form', lhs=' '.join(registry.basis), rhs='standard basis',
            passed=all(
                name in registry and registry[name].vec == BitVec.unit(i, registry.genus)
                for i, name in enumerate(registry.basis)
            ),
        ),
    ]

    for relation in relations:
        lhs = registry.evaluate(relation.lhs)
        passed = lhs == registry.evaluate(relation.rhs)
        note = None
        if relation.printed_rhs is not None:
            printed_holds = lhs == registry.evaluate(relation.printed_rhs)
            note = f'checked in corrected form; printed form "{relation.printed_rhs}" ' + (
                'also holds' if printed_holds else 'does not hold'
            )
            if not printed_holds:
                logger.warning(
                    'relation %s: printed form %s = %s fails', relation.name, relation.lhs, relation.printed_rhs,
                )
        if not passed:
            logger.warning('relation %s failed: %s != %s', relation.name, relation.lhs, relation.rhs)
        checks.append(RelationCheck(relation.name, relation.source, relation.lhs, relation.rhs, passed, note))

    return checks


def solve_pairing_constraints(
    constraints: Sequence[Tuple[HomologyClass, int]],
    genus: int = DEFAULT_GENUS,
    predicates: Sequence[Callable[[HomologyClass], bool]] = (),
) -> List[HomologyClass]:
    """Find every class ``x`` with ``<x, y> = bit`` for each ``(y, bit)`` and satisfying every predicate.

    :returns: the solutions, ordered by their coordinates
    """
    # <x, y> = (J y) . x
    form = symplectic_form(genus)
    rows = [form.apply(y.vec) for y, _ in constraints]
    if not rows:
        rows, rhs = [BitVec.zero(genus)], [0]
    else:
        rhs = [bit for _, bit in constraints]
    solution = solve_affine(rows, rhs)
    candidates = (HomologyClass(vec, tuple(vec)) for vec in solution)
    return sorted(
        (x for x in candidates if all(predicate(x) for predicate in predicates)),
        key=lambda x: str(x.vec),
        reverse=True,
    )


def stallings_constraints(registry: CurveRegistry) -> List[Tuple[str, HomologyClass, int]]:
    """Return the linear constraints on the class of the curve ``d`` as ``(label, class, pairing)`` triples."""
    word = kanenobu_word(0, 0)
    constraints = [
        ('B_3', registry['B_3'], 1),
        ('B_4', registry['B_4'], 1),
        ('B_5', registry['B_5'], 0),
        ('c_2', registry['c_2'], 0),
    ]
    # pairings with Phi(0,0)(B_i) read off the K01 table
    for i, bit in enumerate((0, 1, 0, 0, 1, 0)):
        constraints.append((f'Phi(0,0)(B_{i})', apply_word(word, registry[f'B_{i}'], registry), bit))
    return constraints


def solve_stallings_class(
    registry: Optional[CurveRegistry] = None,
    graphs: Optional[Sequence] = None,
    include_chi: bool = True,
) -> List[HomologyClass]:
    """Derive the candidate classes of the curve ``d``.

    :param registry: the registry providing all other curves
    :param graphs: graphs (anything with a ``chi`` method) on which the class must have ``chi = 0``. Defaults to the
        shipped ``gamma1`` and ``gamma2``.
    :param include_chi: if False, only the linear pairing constraints are used
    """
    registry = registry if registry is not None else get_registry()
    predicates: List[Callable[[HomologyClass], bool]] = []
    if include_chi:
        if graphs is None:
            from mcgz2.quadform import load_graphs

            shipped = load_graphs(registry)
            graphs = [shipped['gamma1'], shipped['gamma2']]
        for graph in graphs:
            predicates.append(lambda x, graph=graph: graph.chi(x) == 0)

    constraints = [(homology, bit) for _, homology, bit in stallings_constraints(registry)]
    solutions = solve_pairing_constraints(constraints, registry.genus, predicates)
    logger.info('found %d candidate classes for d', len(solutions))
    return solutions
