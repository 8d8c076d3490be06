# -*- coding: utf-8 -*-

"""Graph invariants of homology classes and the subgroup obstruction they give.

A basis of ten curve classes, drawn as a graph with an edge wherever two curves meet an odd number of times,
assigns to each class ``x`` the Euler number mod 2 of the union of closed stars of the basis curves in the
expansion of ``x``. That number is a quadratic refinement of the intersection form, so twists about classes with
value one preserve it, and a monodromy group made of such twists cannot contain a twist about a class with value
zero.
"""

import itertools as itt
import json
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from mcgz2.constants import DEFAULT_GRAPHS_PATH
from mcgz2.exceptions import ConfigurationError, DimensionError, NotABasisError, NotDominatedError, UnknownNameError
from mcgz2.factorization import Factorization, parity, xi
from mcgz2.gf2core import BitMatrix, BitVec, expand_in_basis, pairing, rank
from mcgz2.surface import CurveRegistry, HomologyClass, get_registry

__all__ = [
    'ChiGraph',
    'Certificate',
    'Verdict',
    'QuadraticSystem',
    'graph_from',
    'load_graphs',
    'load_graph_document',
    'chi',
    'dominates',
    'excludes',
    'arf',
    'arf_by_majority',
    'find_certificate',
    'verify_certificate',
    'distinguish',
    'exclusion_table',
    'quadratic_refinement_check',
    'transvection_invariance_check',
    'cell_complex_check',
]

logger = logging.getLogger(__name__)


def _int_pairing(u: int, v: int, genus: int) -> int:
    mask = (1 << genus) - 1
    return bin(((u & mask) & (v >> genus)) ^ ((u >> genus) & (v & mask))).count('1') & 1


@dataclass(frozen=True)
class ChiGraph:
    """A graph on a basis of curve classes with edges given by odd intersection."""

    names: Tuple[str, ...]
    vertices: Tuple[HomologyClass, ...]
    adjacency: BitMatrix
    name: Optional[str] = field(default=None, compare=False)
    host: Optional[Tuple[int, int]] = field(default=None, compare=False)

    @property
    def genus(self) -> int:
        """The genus of the surface."""
        return self.vertices[0].genus

    @property
    def edges(self) -> List[Tuple[str, str]]:
        """The edges as pairs of vertex names, in vertex order."""
        return [
            (self.names[i], self.names[j])
            for i, j in itt.combinations(range(len(self.names)), 2)
            if self.adjacency.array[i, j]
        ]

    def has_edge(self, u: str, v: str) -> bool:
        """Return True if the vertices named ``u`` and ``v`` are joined."""
        try:
            i, j = self.names.index(u), self.names.index(v)
        except ValueError:
            raise UnknownNameError('vertex', u if u not in self.names else v) from None
        return bool(self.adjacency.array[i, j])

    def support(self, x: HomologyClass) -> List[int]:
        """Return the indices of the vertices in the unique expansion of ``x``."""
        if x.genus != self.genus:
            raise DimensionError(f'class of genus {x.genus} on a graph of genus {self.genus}')
        return expand_in_basis([v.vec for v in self.vertices], x.vec).support()

    def chi(self, x: HomologyClass) -> int:
        """Return the Euler number mod 2 of the closed-star union over the support of ``x``.

        The complex has a 0-cell for each support vertex and for the midpoint of each edge touching the support,
        and a 1-cell for each closed half-edge from a support vertex to such a midpoint.
        """
        support = set(self.support(x))
        array = self.adjacency.array
        points = set(support)
        midpoints = set()
        half_edges = set()
        for i in support:
            for j in np.flatnonzero(array[i]):
                edge = frozenset((i, int(j)))
                midpoints.add(edge)
                half_edges.add((i, edge))
        return (len(points) + len(midpoints) - len(half_edges)) % 2

    def chi_closed_form(self, x: HomologyClass) -> int:
        """Return ``|S| + e(S)`` mod 2 where ``e(S)`` counts the edges inside the support ``S``."""
        support = self.support(x)
        inside = sum(int(self.adjacency.array[i, j]) for i, j in itt.combinations(support, 2))
        return (len(support) + inside) % 2

    def chi_table(self) -> np.ndarray:
        """Return the value on every class at once, indexed by the bits of the class."""
        n = 2 * self.genus
        classes = np.arange(1 << n, dtype=np.int64)
        bits = ((classes[:, None] >> np.arange(n)) & 1).astype(np.int64)
        change = BitMatrix.from_columns([v.vec for v in self.vertices]).inverse().array.astype(np.int64)
        coordinates = (bits @ change.T) % 2
        upper = np.triu(self.adjacency.array.astype(np.int64), k=1)
        inside = np.einsum('ki,ij,kj->k', coordinates, upper, coordinates)
        return ((coordinates.sum(axis=1) + inside) % 2).astype(np.uint8)

    def to_json(self):
        """Return a representation of the instance suitable for passing in to JSON conversion."""
        return {
            'name': self.name,
            'host': list(self.host) if self.host is not None else None,
            'vertices': {name: str(vertex) for name, vertex in zip(self.names, self.vertices)},
            'edges': [list(edge) for edge in self.edges],
            'adjacency': self.adjacency.to_json(),
        }


def graph_from(
    names: Sequence[str],
    registry: Optional[CurveRegistry] = None,
    name: Optional[str] = None,
    host: Optional[Tuple[int, int]] = None,
) -> ChiGraph:
    """Build the graph on the named curves.

    :raises DimensionError: if not exactly 2g names are given
    :raises NotABasisError: if the classes do not span, reporting the rank
    :raises UnknownNameError: if a name does not resolve
    """
    registry = registry if registry is not None else get_registry()
    if len(names) != 2 * registry.genus:
        raise DimensionError(f'a graph needs {2 * registry.genus} vertices, got {len(names)}')
    vertices = tuple(registry[n] for n in names)
    found = rank([v.vec for v in vertices])
    if found < 2 * registry.genus:
        raise NotABasisError(rank=found, dimension=2 * registry.genus, names=list(names))
    adjacency = BitMatrix.from_rows([[pairing(u.vec, v.vec) for v in vertices] for u in vertices])
    return ChiGraph(tuple(names), vertices, adjacency, name=name, host=host)


def load_graph_document(path: Optional[str] = None) -> Dict:
    """Read the pinned graphs document."""
    path = path or DEFAULT_GRAPHS_PATH
    try:
        with open(path) as file:
            return json.load(file)['graphs']
    except (OSError, ValueError, KeyError) as e:
        raise ConfigurationError(f'could not read graphs {path}: {e}') from e


def load_graphs(registry: Optional[CurveRegistry] = None, path: Optional[str] = None) -> Dict[str, ChiGraph]:
    """Build the pinned graphs, keyed by name."""
    registry = registry if registry is not None else get_registry()
    return {
        name: graph_from(entry['vertices'], registry, name=name, host=tuple(entry['host']))
        for name, entry in load_graph_document(path).items()
    }


def chi(graph: ChiGraph, x: HomologyClass) -> int:
    """Evaluate the graph invariant on ``x``."""
    return graph.chi(x)


def dominates(graph: ChiGraph, w: Factorization) -> bool:
    """Return True if every letter of ``w`` has value one, so the monodromy group preserves the invariant."""
    return all(graph.chi(letter.homology) == 1 for letter in w)


def excludes(graph: ChiGraph, w: Factorization, target: HomologyClass) -> bool:
    """Return True if the graph certifies that the twist about ``target`` is not in the monodromy group of ``w``.

    :raises NotDominatedError: if some letter of ``w`` has value zero, so the obstruction does not apply
    """
    for letter in w:
        if graph.chi(letter.homology) != 1:
            raise NotDominatedError(f'graph {graph.name or graph.names} does not bound letter {letter.label}')
    return graph.chi(target) == 0


def arf(graph: ChiGraph) -> int:
    """Return the Arf invariant of the invariant as a quadratic form, via a symplectic basis."""
    genus = graph.genus
    remaining = [1 << i for i in range(2 * genus)]
    total = 0
    while remaining:
        e = remaining.pop(0)
        partner = next((f for f in remaining if _int_pairing(e, f, genus)), None)
        if partner is None:
            continue
        remaining.remove(partner)
        total ^= graph.chi(HomologyClass(BitVec(e, genus))) & graph.chi(HomologyClass(BitVec(partner, genus)))
        remaining = [
            v ^ (e if _int_pairing(v, partner, genus) else 0) ^ (partner if _int_pairing(v, e, genus) else 0)
            for v in remaining
        ]
        remaining = [v for v in remaining if v]
    return total


def arf_by_majority(graph: ChiGraph) -> int:
    """Return the value the invariant takes on more than half of all classes, which is its Arf invariant."""
    table = graph.chi_table()
    return int(2 * int(table.sum()) > len(table))


class QuadraticSystem:
    """Prescribed values of a quadratic refinement, kept in echelon form to detect inconsistency."""

    def __init__(self, genus: int) -> None:
        self.genus = genus
        self._rows: Dict[int, Tuple[int, int]] = {}

    def copy(self) -> 'QuadraticSystem':
        """Return an independent copy."""
        other = QuadraticSystem(self.genus)
        other._rows = dict(self._rows)
        return other

    def reduce(self, x: int, value: int) -> Tuple[int, int]:
        """Reduce ``x`` against the known classes, carrying ``q(x) - value`` along."""
        while x:
            pivot = x.bit_length() - 1
            if pivot not in self._rows:
                break
            vector, known = self._rows[pivot]
            value ^= known ^ _int_pairing(x, vector, self.genus)
            x ^= vector
        return x, value

    def add(self, x: int, value: int) -> bool:
        """Prescribe ``q(x) = value``; return False if that contradicts what is already known."""
        residue, value = self.reduce(x, value)
        if not residue:
            return value == 0
        self._rows[residue.bit_length() - 1] = (residue, value)
        return True


def find_certificate(
    pool: Sequence[str],
    ones: Sequence[HomologyClass],
    zeros: Sequence[HomologyClass],
    registry: Optional[CurveRegistry] = None,
) -> Optional[ChiGraph]:
    """Search the 2g-subsets of ``pool``, in lexicographic order, for a graph with the prescribed values.

    :param pool: curve names to draw vertices from
    :param ones: classes that must have value one
    :param zeros: classes that must have value zero
    :returns: the first graph found, or None
    """
    registry = registry if registry is not None else get_registry()
    genus = registry.genus
    if set(ones) & set(zeros):
        logger.info('no certificate: a class is required to take both values')
        return None

    system = QuadraticSystem(genus)
    for homology, value in itt.chain(((x, 1) for x in ones), ((x, 0) for x in zeros)):
        if not system.add(homology.vec.bits, value):
            logger.info('no certificate: the prescribed values are not quadratic')
            return None

    candidates = [(name, registry[name].vec.bits) for name in pool]

    def search(start: int, chosen: List[str], span: Dict[int, int], known: QuadraticSystem) -> Optional[List[str]]:
        if len(chosen) == 2 * genus:
            return chosen
        for position in range(start, len(candidates) - (2 * genus - len(chosen)) + 1):
            name, bits = candidates[position]
            residue = bits
            while residue and (residue.bit_length() - 1) in span:
                residue ^= span[residue.bit_length() - 1]
            if not residue:
                continue
            extended = known.copy()
            if not extended.add(bits, 1):
                continue
            found = search(position + 1, chosen + [name], {**span, residue.bit_length() - 1: residue}, extended)
            if found is not None:
                return found
        return None

    names = search(0, [], {}, system)
    if names is None:
        return None
    logger.info('found certificate graph %s', names)
    return graph_from(names, registry)


def verify_certificate(
    graph: ChiGraph, ones: Iterable[HomologyClass], zeros: Iterable[HomologyClass],
) -> List[Tuple[HomologyClass, int, int]]:
    """Check prescribed values on a graph.

    :returns: the failures as ``(class, expected, actual)``; empty if the graph passes
    """
    failures = []
    for expected, classes in ((1, ones), (0, zeros)):
        for homology in classes:
            actual = graph.chi(homology)
            if actual != expected:
                failures.append((homology, expected, actual))
    return failures


@dataclass(frozen=True)
class Certificate:
    """A graph bounding the monodromy group of ``host`` together with a class whose twist it rules out."""

    graph: ChiGraph
    host: str
    excluded: HomologyClass
    excluded_name: str

    def to_json(self):
        """Return a representation of the instance suitable for passing in to JSON conversion."""
        return {
            'graph': self.graph.to_json(),
            'host': self.host,
            'excluded': {'name': self.excluded_name, 'class': str(self.excluded)},
        }


@dataclass
class Verdict:
    """The outcome of comparing two factorizations ``xi(p,q)`` and ``xi(r,s)``."""

    pq: Tuple[int, int]
    rs: Tuple[int, int]
    certificates: List[Certificate]
    message: str

    @property
    def distinguished(self) -> bool:
        """True if at least one certificate was found."""
        return bool(self.certificates)

    def to_json(self):
        """Return a representation of the instance suitable for passing in to JSON conversion."""
        return {
            'pq': list(self.pq),
            'rs': list(self.rs),
            'distinguished': self.distinguished,
            'message': self.message,
            'certificates': [certificate.to_json() for certificate in self.certificates],
        }


def _graph_for(graphs: Mapping[str, ChiGraph], host: Tuple[int, int]) -> Optional[ChiGraph]:
    return next((graph for graph in graphs.values() if graph.host == host), None)


def _one_way(
    graphs: Mapping[str, ChiGraph], bounded: Tuple[int, int], other: Tuple[int, int], registry: CurveRegistry,
) -> Optional[Certificate]:
    graph = _graph_for(graphs, parity(*bounded))
    if graph is None:
        return None
    host = xi(*bounded, registry)
    if not dominates(graph, host):
        logger.warning('graph %s does not bound xi%s', graph.name, bounded)
        return None
    for letter in xi(*other, registry):
        if graph.chi(letter.homology) == 0:
            return Certificate(graph, f'xi({bounded[0]},{bounded[1]})', letter.homology, letter.label)
    return None


def distinguish(
    pq: Tuple[int, int],
    rs: Tuple[int, int],
    graphs: Optional[Mapping[str, ChiGraph]] = None,
    registry: Optional[CurveRegistry] = None,
) -> Verdict:
    """Try to show that ``xi(p,q)`` and ``xi(r,s)`` are not Hurwitz equivalent.

    The first certificate bounds the group of ``xi(r,s)`` and excludes a letter of ``xi(p,q)``; the second, when
    it exists, has the roles swapped.
    """
    registry = registry if registry is not None else get_registry()
    graphs = graphs if graphs is not None else load_graphs(registry)
    if parity(*pq) == parity(*rs):
        return Verdict(tuple(pq), tuple(rs), [], 'no certificate at this invariant level')

    certificates = [
        certificate
        for certificate in (_one_way(graphs, rs, pq, registry), _one_way(graphs, pq, rs, registry))
        if certificate is not None
    ]
    message = 'not Hurwitz equivalent' if certificates else 'no pinned graph separates these parities'
    return Verdict(tuple(pq), tuple(rs), certificates, message)


def exclusion_table(
    graphs: Mapping[str, ChiGraph],
    parities: Sequence[Tuple[int, int]] = ((0, 0), (1, 0), (0, 1), (1, 1)),
    j_range: Iterable[int] = range(6),
    registry: Optional[CurveRegistry] = None,
) -> Dict[str, List[str]]:
    """List, for each graph, the twists ``Phi(eps)(B_j)`` from other parities that it rules out."""
    registry = registry if registry is not None else get_registry()
    j_range = list(j_range)
    table = {}
    for name, graph in graphs.items():
        table[name] = [
            f'Phi({p},{q})(B_{j})'
            for p, q in parities
            if (p, q) != graph.host
            for j in j_range
            if graph.chi(registry.evaluate(f'Phi({p},{q})(B_{j})')) == 0
        ]
    return table


def _pairing_table(genus: int) -> np.ndarray:
    n = 1 << (2 * genus)
    mask = (1 << genus) - 1
    classes = np.arange(n, dtype=np.int64)
    low, high = classes & mask, classes >> genus
    mixed = (low[:, None] & high[None, :]) ^ (high[:, None] & low[None, :])
    odd = np.array([bin(i).count('1') & 1 for i in range(1 << genus)], dtype=np.uint8)
    return odd[mixed]


def quadratic_refinement_check(graph: ChiGraph) -> bool:
    """Check ``chi(u + v) = chi(u) + chi(v) + <u, v>`` over every ordered pair of classes."""
    table = graph.chi_table()
    classes = np.arange(len(table), dtype=np.int64)
    sums = table[classes[:, None] ^ classes[None, :]]
    return bool(np.array_equal(sums, table[:, None] ^ table[None, :] ^ _pairing_table(graph.genus)))


def transvection_invariance_check(graph: ChiGraph, progress: bool = False) -> bool:
    """Check that exactly the twists about classes with value one preserve the invariant."""
    table = graph.chi_table()
    pairings = _pairing_table(graph.genus)
    classes = np.arange(len(table), dtype=np.int64)
    for c in tqdm(range(1, len(table)), desc='transvections', disable=not progress, leave=False):
        images = classes ^ (pairings[:, c].astype(np.int64) * c)
        preserved = bool(np.array_equal(table[images], table))
        if preserved != bool(table[c]):
            logger.warning('twist about %s breaks invariance', BitVec(c, graph.genus))
            return False
    return True


def cell_complex_check(graph: ChiGraph) -> bool:
    """Check that the cell-complex count agrees with the closed form on every class."""
    table = graph.chi_table()
    for bits in range(len(table)):
        x = HomologyClass(BitVec(bits, graph.genus))
        if not graph.chi(x) == graph.chi_closed_form(x) == table[bits]:
            logger.warning('cell complex and closed form disagree on %s', x)
            return False
    return True
