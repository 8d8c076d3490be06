# -*- coding: utf-8 -*-

"""Test the graph invariant, its obstruction and the certificate search."""

import pytest

from mcgz2.exceptions import DimensionError, NotABasisError, NotDominatedError
from mcgz2.factorization import xi
from mcgz2.quadform import (
    arf, arf_by_majority, cell_complex_check, distinguish, dominates, exclusion_table, excludes, find_certificate,
    graph_from, load_graph_document, quadratic_refinement_check, transvection_invariance_check, verify_certificate,
)
from .constants import EDGE_COUNTS, GAMMA1_ONES, GAMMA1_ZEROS


def test_edge_counts(graphs):
    """The pinned graphs have the expected number of edges."""
    assert {name: len(graph.edges) for name, graph in graphs.items()} == EDGE_COUNTS


def test_gamma1_values(registry, graphs):
    """Values of the first graph on named curves."""
    gamma1 = graphs['gamma1']
    for name in GAMMA1_ONES:
        assert gamma1.chi(registry[name]) == 1, name
    for name in GAMMA1_ZEROS:
        assert gamma1.chi(registry[name]) == 0, name


def test_pinned_expectations(registry, graphs):
    """Every pinned graph takes its recorded values."""
    document = load_graph_document()
    for name, graph in graphs.items():
        expected = document[name]['expected']
        ones = [registry.evaluate(e) for e in expected['ones']]
        zeros = [registry.evaluate(e) for e in expected['zeros']]
        assert not verify_certificate(graph, ones, zeros), name


def test_vertices_have_value_one(graphs):
    """Each vertex is a single support point with no inner edges."""
    for graph in graphs.values():
        for vertex in graph.vertices:
            assert graph.chi(vertex) == 1


@pytest.mark.parametrize('name', ['gamma1', 'gamma2', 'gamma3', 'gamma4'])
def test_cell_complex_agrees(graphs, name):
    """The cell count, the closed form and the table agree on every class."""
    assert cell_complex_check(graphs[name])


@pytest.mark.parametrize('name', ['gamma1', 'gamma2', 'gamma3', 'gamma4'])
def test_quadratic_refinement(graphs, name):
    """The invariant refines the intersection form."""
    assert quadratic_refinement_check(graphs[name])


@pytest.mark.parametrize('name', ['gamma1', 'gamma2', 'gamma3', 'gamma4'])
def test_transvection_invariance(graphs, name):
    """Exactly the twists with value one preserve the invariant."""
    assert transvection_invariance_check(graphs[name])


@pytest.mark.parametrize('name', ['gamma1', 'gamma2', 'gamma3', 'gamma4'])
def test_arf(graphs, name):
    """Every pinned graph has Arf invariant one, by both methods."""
    graph = graphs[name]
    assert arf(graph) == 1
    assert arf_by_majority(graph) == 1
    assert int(graph.chi_table().sum()) == 528


def test_graph_from_errors(registry):
    """Too few vertices or a dependent set are rejected."""
    with pytest.raises(DimensionError):
        graph_from(['a_1', 'b_1'], registry)
    with pytest.raises(NotABasisError) as excinfo:
        graph_from(['a_1', 'a_2', 'a_3', 'a_4', 'a_5', 'b_1', 'b_2', 'b_3', 'b_4', "b_3'"], registry)
    assert excinfo.value.rank == 9


def test_dominates_and_excludes(registry, graphs):
    """The first graph bounds xi(0,0) but not xi(1,0), and rules out c_2."""
    gamma1 = graphs['gamma1']
    assert dominates(gamma1, xi(0, 0, registry))
    assert not dominates(gamma1, xi(1, 0, registry))
    assert excludes(gamma1, xi(0, 0, registry), registry['c_2'])
    assert not excludes(gamma1, xi(0, 0, registry), registry['a_1'])
    with pytest.raises(NotDominatedError):
        excludes(gamma1, xi(1, 0, registry), registry['c_2'])


def test_exclusion_table(registry, graphs):
    """Recomputed exclusions match the recorded ones."""
    document = load_graph_document()
    table = exclusion_table(graphs, registry=registry)
    for name, excluded in table.items():
        assert excluded == document[name]['excludes'], name


def test_distinguish_00_10(registry, graphs):
    """xi(0,0) and xi(1,0) are told apart by the second graph."""
    verdict = distinguish((0, 0), (1, 0), graphs, registry)
    assert verdict.distinguished
    first = verdict.certificates[0]
    assert first.graph.name == 'gamma2'
    assert first.excluded_name == 'Phi(0,0)(B_1)'
    assert first.excluded == registry.evaluate('Phi(0,0)(B_1)')


def test_distinguish_10_01(registry, graphs):
    """xi(1,0) and xi(0,1) are told apart by the third graph."""
    verdict = distinguish((1, 0), (0, 1), graphs, registry)
    first = verdict.certificates[0]
    assert first.graph.name == 'gamma3'
    assert first.excluded_name == 'Phi(1,0)(B_2)'


def test_distinguish_equal_parity(registry, graphs):
    """Pairs of equal parity get no certificate."""
    verdict = distinguish((0, 0), (2, 2), graphs, registry)
    assert not verdict.distinguished
    assert verdict.message == 'no certificate at this invariant level'


@pytest.mark.parametrize('pq', [(0, 1), (1, 2), (3, 0)])
def test_distinguish_swapped(registry, graphs, pq):
    """Swapping the parameters of an odd-sum pair gives a different fibration."""
    p, q = pq
    assert distinguish((p, q), (q, p), graphs, registry).distinguished


@pytest.mark.parametrize('host', [(0, 1), (1, 1)])
def test_find_certificate(registry, graphs, host):
    """The search finds a graph bounding xi(host) and ruling out c_2 and d, and the pinned graph also qualifies."""
    p, q = host
    ones = [registry[f'B_{j}'] for j in range(6)]
    ones += [registry.evaluate(f'Phi({p},{q})(B_{j})') for j in range(6)]
    ones += [registry['b_3'], registry["b_3'"], registry['a_3']]
    zeros = [registry['c_2'], registry['d']]

    found = find_certificate(list(registry), ones, zeros, registry)
    assert found is not None
    assert not verify_certificate(found, ones, zeros)

    pinned = next(graph for graph in graphs.values() if graph.host == host)
    assert not verify_certificate(pinned, ones, zeros)


def test_find_certificate_contradiction(registry):
    """A class required to be both one and zero gives no certificate."""
    assert find_certificate(list(registry), [registry['a_1']], [registry['a_1']], registry) is None
