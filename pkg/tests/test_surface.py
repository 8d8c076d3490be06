# -*- coding: utf-8 -*-

"""Test the curve registry, twists and relation checks."""

import json

import numpy as np
import pytest

from mcgz2.exceptions import ConfigurationError, UnknownNameError
from mcgz2.gf2core import BitVec
from mcgz2.surface import (
    CurveRegistry, HomologyClass, MappingClassWord, apply_word, get_registry, integer_pairing, intersection,
    kanenobu_word, lift_matrix, load_relations, solve_stallings_class, transvect, twist_power, validate_registry,
)
from .constants import D_SOLUTIONS, D_SOLUTIONS_UNCONSTRAINED, FAILING_WITH_A1


def test_registry_basics(registry):
    """The shipped registry has genus 5 and the standard basis."""
    assert registry.genus == 5
    assert len(registry.basis) == 10
    assert 'd' in registry
    assert str(registry['d']) == '1100000000'
    assert registry.get('nonexistent') is None
    with pytest.raises(UnknownNameError):
        registry['nonexistent']


def test_twist_on_classes(registry):
    """A twist adds the curve exactly when the intersection is odd."""
    a1, b1, a2 = registry['a_1'], registry['b_1'], registry['a_2']
    assert intersection(a1, b1) == 1
    assert transvect(a1, b1) == a1 + b1
    assert transvect(a1, a2) == a2
    assert twist_power(a1, b1, 2) == b1
    assert twist_power(a1, b1, -1) == a1 + b1


def test_twist_on_lifts(registry):
    """Integer lifts follow x + e <x, c> c."""
    a1, b1 = registry['a_1'], registry['b_1']
    assert integer_pairing(b1.lift(), a1.lift()) == -1
    assert twist_power(a1, b1, 3).lift()[0] == -3


def test_word_order(registry):
    """The rightmost letter of a word acts first."""
    word = MappingClassWord((('a_1', 1), ('b_1', 1)))
    # t_a1 t_b1 (a_1) = t_a1 (a_1 + b_1) = b_1
    assert apply_word(word, registry['a_1'], registry) == registry['b_1']
    assert apply_word(word.inverse(), apply_word(word, registry['a_1'], registry), registry) == registry['a_1']


def test_kanenobu_word():
    """Zero exponents are dropped from the word."""
    assert kanenobu_word(0, 0).curves() == {'a_2', 'b_2', 'a_1', 'b_1'}
    assert kanenobu_word(2, 3).curves() == {'d', 'c_2', 'a_2', 'b_2', 'a_1', 'b_1'}
    assert str(kanenobu_word(1, 0).name) == 'Phi(1,0)'


def test_phi_depends_on_parity(registry):
    """Mod 2 a Phi image depends only on the parities of its parameters."""
    for target in ('B_1', 'B_4'):
        assert registry.evaluate(f'Phi(2,0)({target})') == registry.evaluate(f'Phi(0,0)({target})')
        assert registry.evaluate(f'Phi(-1,3)({target})') == registry.evaluate(f'Phi(1,1)({target})')


def test_validate_registry(registry):
    """Every relation holds for the shipped registry."""
    checks = validate_registry(registry)
    failed = [check.name for check in checks if not check.passed]
    assert not failed
    assert any(check.name == 'form-nondegenerate' for check in checks)


def test_printed_relation_is_noted(registry):
    """The relation recorded with a printed form reports that the printed form fails."""
    checks = {check.name: check for check in validate_registry(registry)}
    assert checks['ai2-c_5'].passed
    assert 'does not hold' in checks['ai2-c_5'].note


def test_validate_with_a1_for_d(registry):
    """Replacing d with a_1 breaks exactly the Phi(0,1) and Phi(1,1) relations that see it."""
    checks = validate_registry(registry.with_curve('d', registry['a_1']))
    failed = {check.name for check in checks if not check.passed}
    assert failed == FAILING_WITH_A1


def test_validate_missing_curve(registry):
    """A registry lacking a needed curve is a configuration error naming it."""
    with pytest.raises(ConfigurationError) as excinfo:
        validate_registry(registry.without('d_4'))
    assert 'd_4' in str(excinfo.value)


def test_relations_file():
    """The relations file loads."""
    relations = load_relations()
    assert len(relations) > 60
    assert sum(1 for relation in relations if relation.printed_rhs is not None) == 1


def test_solve_d(registry, graphs):
    """Pairing and graph constraints leave two candidates for d, among them the registry value."""
    solutions = {str(x) for x in solve_stallings_class(registry, graphs=[graphs['gamma1'], graphs['gamma2']])}
    assert solutions == D_SOLUTIONS
    assert str(registry['d']) in solutions


def test_solve_d_unconstrained(registry):
    """The pairing constraints alone leave four candidates."""
    solutions = {str(x) for x in solve_stallings_class(registry, include_chi=False)}
    assert solutions == D_SOLUTIONS_UNCONSTRAINED


def test_lift_matrix(registry):
    """The integer matrix of a word reduces mod 2 to its action on classes."""
    word = kanenobu_word(1, 1)
    matrix = lift_matrix(word, 2, registry)
    for name in ('B_0', 'B_3', 'c_5'):
        x = registry[name]
        image = matrix.dot(np.array(x.lift(), dtype=object)) % 2
        assert ''.join(str(int(v)) for v in image) == str(apply_word(word, x, registry))


def test_registry_from_path(tmpdir, registry):
    """Registries round-trip through their JSON file, and malformed files are configuration errors."""
    path = tmpdir.join('registry.json')
    path.write(json.dumps(registry.to_json()))
    loaded = get_registry(str(path))
    assert loaded.names == registry.names
    assert loaded['B_3'] == registry['B_3']

    bad = tmpdir.join('bad.json')
    bad.write(json.dumps({'genus': 5, 'basis': registry.basis, 'curves': {'a_1': '101'}}))
    with pytest.raises(ConfigurationError):
        CurveRegistry.from_path(str(bad))


def test_homology_class_zero():
    """The zero class is falsy."""
    assert not HomologyClass.zero()
    assert HomologyClass.from_string('1000000000')


def _all_classes(genus=5):
    return [HomologyClass(BitVec(bits, genus)) for bits in range(1 << (2 * genus))]


@pytest.mark.parametrize('p,q', [(0, 0), (1, 0), (0, 1), (1, 1), (-1, 2)])
def test_phi_period_two_on_all_classes(registry, p, q):
    """Shifting either parameter of Phi by two does not change its action on any class."""
    word = kanenobu_word(p, q)
    for shifted in (kanenobu_word(p + 2, q), kanenobu_word(p, q + 2), kanenobu_word(p - 2, q - 2)):
        for x in _all_classes():
            assert apply_word(word, x, registry) == apply_word(shifted, x, registry), (str(shifted), str(x))


def test_words_preserve_intersection(registry):
    """Words in twists preserve the intersection form."""
    rng = np.random.default_rng(5)
    names = registry.names
    words = [kanenobu_word(p, q) for p in range(-1, 3) for q in range(-1, 3)]
    for _ in range(5):
        picks = rng.choice(len(names), size=8)
        exponents = rng.choice([-2, -1, 1, 3], size=8)
        words.append(MappingClassWord(tuple((names[i], int(e)) for i, e in zip(picks, exponents))))

    classes = _all_classes()
    for word in words:
        for i, j in rng.integers(0, len(classes), size=(200, 2)):
            u, v = classes[i], classes[j]
            assert intersection(apply_word(word, u, registry), apply_word(word, v, registry)) == intersection(u, v)
