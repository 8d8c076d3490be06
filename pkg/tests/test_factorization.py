# -*- coding: utf-8 -*-

"""Test factorizations, Hurwitz moves and equivalence scripts."""

import copy

import numpy as np
import pytest

from mcgz2.exceptions import (
    CertificateError, ConfigurationError, DimensionError, MoveIndexError, ScriptError, UnknownNameError,
    ZeroClassError,
)
from mcgz2.factorization import (
    FORWARD, INVERSE, Factorization, Letter, block_monodromy, build_factorization, conjugate_by_twist, eta,
    eta_squared, euler_characteristic, hurwitz_move, list_scripts, load_script, random_moves,
    run_equivalence_script, swap_blocks, total_monodromy_sp2, xi, y_fact,
)
from mcgz2.surface import HomologyClass, intersection
from .constants import BAD_CERTIFICATE


def test_eta(registry):
    """eta has the B curves followed by two copies each of b_3 and b_3'; its monodromy is an involution."""
    w = eta(2, registry)
    assert len(w) == 10
    assert [letter.label for letter in w] == [
        'B_0', 'B_1', 'B_2', 'B_3', 'B_4', 'B_5', 'b_3', 'b_3', "b_3'", "b_3'",
    ]
    m = total_monodromy_sp2(w)
    assert not m.is_identity()
    assert (m @ m).is_identity()
    assert total_monodromy_sp2(eta_squared(2, registry)).is_identity()


def test_eta_genus_mismatch(registry):
    """Only eta_{1,2} fits the genus-5 registry."""
    with pytest.raises(ConfigurationError):
        eta(3, registry)


def test_letter_indexing(registry):
    """Letter 1 is the first applied; indexes are checked."""
    w = xi(0, 0, registry)
    assert len(w) == 40
    assert w.letter(1).label == 'B_0'
    assert w.letter(21).label.startswith('Phi(0,0)(')
    with pytest.raises(MoveIndexError):
        w.letter(0)
    with pytest.raises(MoveIndexError):
        w.letter(41)


def test_product_order(registry):
    """In A * B the letters of B come first."""
    once = eta(2, registry)
    w = build_factorization('T(c_2)(eta) * eta', registry)
    assert w.block(1, 10).same_classes(once)
    assert w.letter(11).label == 'T(c_2)(B_0)'


def test_zero_letters(registry):
    """Letters and conjugators must be nonzero."""
    with pytest.raises(ZeroClassError):
        Letter(HomologyClass.zero(), 'zero')
    with pytest.raises(ZeroClassError):
        conjugate_by_twist(eta(2, registry), HomologyClass.zero(), 'zero')


def test_genus_mismatch():
    """Letters must live on the factorization's surface."""
    with pytest.raises(DimensionError):
        Factorization((Letter(HomologyClass.from_string('1000'), 'x'),), 5)


def test_hurwitz_move(registry):
    """Forward then inverse is the identity and both preserve the monodromy."""
    w = xi(0, 0, registry)
    reference = total_monodromy_sp2(w)
    for i in (1, 7, 20, 39):
        moved = hurwitz_move(w, i, FORWARD)
        assert moved.letter(i).homology == w.letter(i + 1).homology
        assert total_monodromy_sp2(moved) == reference
        assert hurwitz_move(moved, i, INVERSE).same_classes(w)
    with pytest.raises(MoveIndexError):
        hurwitz_move(w, 40)
    with pytest.raises(MoveIndexError):
        hurwitz_move(w, 0)


def test_hurwitz_labels_record_direction(registry):
    """A conjugated letter names its conjugator with the sign of the move; a commuting pair just swaps."""
    w = xi(0, 0, registry)
    i = next(i for i in range(1, len(w)) if intersection(w.letter(i).homology, w.letter(i + 1).homology))
    lower, upper = w.letter(i).label, w.letter(i + 1).label

    forward = hurwitz_move(w, i, FORWARD)
    assert forward.letter(i).label == upper
    assert forward.letter(i + 1).label == f't({upper})({lower})'

    inverse = hurwitz_move(w, i, INVERSE)
    assert inverse.letter(i + 1).label == lower
    assert inverse.letter(i).label == f't({lower})^-1({upper})'

    j = next(j for j in range(1, len(w)) if not intersection(w.letter(j).homology, w.letter(j + 1).homology))
    swapped = hurwitz_move(w, j, INVERSE)
    assert [swapped.letter(j).label, swapped.letter(j + 1).label] == [w.letter(j + 1).label, w.letter(j).label]


def test_swap_blocks(registry):
    """Swapping identity blocks keeps the lower block and the monodromy."""
    w = y_fact(0, 0, 1, 0, registry)
    swapped = swap_blocks(w, (21, 40), (41, 60))
    assert len(swapped) == 80
    assert swapped.block(41, 60).same_classes(w.block(21, 40))
    assert total_monodromy_sp2(swapped) == total_monodromy_sp2(w)
    assert block_monodromy(swapped, 21, 40).is_identity()
    with pytest.raises(MoveIndexError):
        swap_blocks(w, (1, 20), (22, 40))


@pytest.mark.parametrize('build', [lambda r: xi(1, 0, r), lambda r: y_fact(0, 0, 1, 1, r)], ids=['xi', 'Y'])
def test_random_moves(registry, build):
    """Random Hurwitz moves preserve the letter count and the monodromy."""
    w = build(registry)
    rng = np.random.default_rng(7)
    reference = total_monodromy_sp2(w)
    for _ in range(25):
        moved = random_moves(w, int(rng.integers(1, 60)), rng)
        assert len(moved) == len(w)
        assert total_monodromy_sp2(moved) == reference


@pytest.mark.parametrize('p', [-1, 0, 1, 2])
@pytest.mark.parametrize('q', [-1, 0, 1, 2])
def test_xi_monodromy_is_trivial(registry, p, q):
    """The mod-2 monodromy of every xi and of the fiber sums with xi(0,0) is the identity."""
    assert total_monodromy_sp2(xi(p, q, registry)).is_identity()
    assert total_monodromy_sp2(y_fact(0, 0, p, q, registry)).is_identity()
    assert block_monodromy(xi(p, q, registry), 21, 40).is_identity()


def test_euler_characteristic(registry):
    """Euler characteristics of the empty, xi and Y factorizations."""
    assert euler_characteristic(Factorization.empty(5)) == -16
    assert euler_characteristic(xi(0, 0, registry)) == 24
    assert euler_characteristic(y_fact(0, 0, 1, 1, registry)) == 64
    assert euler_characteristic(eta_squared(2, registry)) == 4


def test_build_unknown_curve(registry):
    """Conjugating by an unknown curve names it."""
    with pytest.raises(UnknownNameError):
        build_factorization('T(zz)(eta)', registry)


def test_list_scripts():
    """Both shift scripts ship."""
    assert list_scripts() == ['shift-p', 'shift-q']


@pytest.mark.parametrize('name', ['shift-p', 'shift-q'])
@pytest.mark.parametrize('p,q', [(p, q) for p in (-1, 0, 1) for q in (-1, 0, 1)] + [(2, -1)])
def test_script_replay(registry, name, p, q):
    """The shipped scripts replay over the whole small parameter grid."""
    report = run_equivalence_script(name, p, q, registry)
    assert report.passed, [step.to_json() for step in report.steps]
    assert report.matched
    assert report.level == 'verified at psi_2 level'
    assert len(report.final) == 80


def test_bad_certificate(registry):
    """A certificate for the wrong twist is rejected at its step."""
    script = copy.deepcopy(load_script('shift-p'))
    script['moves'][1]['certificate'] = BAD_CERTIFICATE
    with pytest.raises(CertificateError) as excinfo:
        run_equivalence_script(script, 0, 0, registry)
    assert excinfo.value.step == 2


def test_conjugate_needs_identity_block(registry):
    """Conjugating a block whose product is not the identity is rejected."""
    script = copy.deepcopy(load_script('shift-p'))
    script['moves'][1]['block'] = [21, 39]
    with pytest.raises(CertificateError):
        run_equivalence_script(script, 0, 0, registry)


def test_bad_scripts(tmpdir, registry):
    """Unknown scripts, missing fields and unknown ops are reported."""
    with pytest.raises(UnknownNameError):
        load_script('no-such-script')

    path = tmpdir.join('broken.json')
    path.write('{"name": "broken"}')
    with pytest.raises(ScriptError):
        load_script(str(path))

    script = {'name': 'odd', 'start': 'xi(0,0)', 'moves': [{'op': 'twirl'}], 'expect': 'xi(0,0)'}
    with pytest.raises(ScriptError):
        run_equivalence_script(script, 0, 0, registry)


def test_script_of_plain_moves(registry):
    """A hand-written script of elementary moves is checked like the shipped ones."""
    script = {
        'name': 'there-and-back',
        'start': 'xi(${p},${q})',
        'moves': [
            {'op': 'hurwitz', 'index': 5, 'direction': FORWARD},
            {'op': 'hurwitz', 'index': 5, 'direction': INVERSE},
        ],
        'expect': 'xi(${p},${q})',
    }
    report = run_equivalence_script(script, 1, 1, registry)
    assert report.passed
    assert [step.op for step in report.steps] == ['hurwitz', 'hurwitz']
