# -*- coding: utf-8 -*-

"""Positive Dehn-twist factorizations and their Hurwitz equivalence.

A :class:`Factorization` stores its letters with index 1 first; index 1 is applied first, so the word is read
right to left as ``t_n ... t_2 t_1``. Everything here works on homology classes, so what is tracked is the
shadow of a factorization under the mod-2 symplectic representation.
"""

import json
import logging
import os
import string
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from tqdm import tqdm

from mcgz2.constants import SCRIPTS_DIRECTORY
from mcgz2.exceptions import (
    CertificateError, ConfigurationError, DimensionError, MoveIndexError, ScriptError, UnknownNameError,
    ZeroClassError,
)
from mcgz2.gf2core import BitMatrix, transvection_matrix
from mcgz2.grammar import (
    EtaPower, FactorizationNode, PhiConjugate, Product, TwistConjugate, XiCall, YCall, parse_factorization,
)
from mcgz2.surface import (
    CurveRegistry, HomologyClass, MappingClassWord, apply_word, get_registry, kanenobu_word, transvect, twist_power,
)

__all__ = [
    'Letter',
    'Factorization',
    'ScriptStep',
    'ScriptReport',
    'FORWARD',
    'INVERSE',
    'eta',
    'eta_squared',
    'conjugate_factorization',
    'conjugate_by_twist',
    'xi',
    'y_fact',
    'hurwitz_move',
    'swap_blocks',
    'block_monodromy',
    'total_monodromy_sp2',
    'euler_characteristic',
    'random_moves',
    'parity',
    'build_factorization',
    'list_scripts',
    'load_script',
    'run_equivalence_script',
]

logger = logging.getLogger(__name__)

FORWARD = 'forward'
INVERSE = 'inverse'


@dataclass(frozen=True)
class Letter:
    """A right-handed twist about a curve, known through its homology class."""

    homology: HomologyClass
    label: str = field(compare=False)

    def __post_init__(self) -> None:
        if not self.homology:
            raise ZeroClassError(f'letter {self.label} is a twist about the zero class')

    @property
    def matrix(self) -> BitMatrix:
        """The transvection matrix of the twist."""
        return transvection_matrix(self.homology.vec)

    def relabel(self, label: str) -> 'Letter':
        """Return the same letter with a new label."""
        return Letter(self.homology, label)

    def to_json(self):
        """Return a representation of the instance suitable for passing in to JSON conversion."""
        return {'class': str(self.homology), 'label': self.label}


@dataclass(frozen=True)
class Factorization:
    """An ordered sequence of twist letters; ``letters[0]`` is index 1 and is applied first."""

    letters: Tuple[Letter, ...]
    genus: int

    def __post_init__(self) -> None:
        for letter in self.letters:
            if letter.homology.genus != self.genus:
                raise DimensionError(f'letter {letter.label} has genus {letter.homology.genus}, expected {self.genus}')

    @classmethod
    def empty(cls, genus: int) -> 'Factorization':
        """Return the factorization with no letters."""
        return cls((), genus)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def letter(self, index: int) -> Letter:
        """Return the letter at the 1-based ``index``."""
        if not 1 <= index <= len(self.letters):
            raise MoveIndexError(f'letter index {index} out of range 1..{len(self.letters)}')
        return self.letters[index - 1]

    def block(self, lower: int, upper: int) -> 'Factorization':
        """Return the sub-factorization of letters ``lower..upper`` (1-based, inclusive)."""
        if not 1 <= lower <= upper <= len(self.letters):
            raise MoveIndexError(f'block {lower}..{upper} out of range 1..{len(self.letters)}')
        return Factorization(self.letters[lower - 1:upper], self.genus)

    def classes(self) -> List[HomologyClass]:
        """Return the letter classes in index order."""
        return [letter.homology for letter in self.letters]

    def __mul__(self, other: 'Factorization') -> 'Factorization':
        """Concatenate so that ``other`` is applied first."""
        if self.genus != other.genus:
            raise DimensionError(f'cannot multiply factorizations of genus {self.genus} and {other.genus}')
        return Factorization(other.letters + self.letters, self.genus)

    def same_classes(self, other: 'Factorization') -> bool:
        """Return True if both have the same sequence of letter classes."""
        return self.classes() == other.classes()

    def to_json(self):
        """Return a representation of the instance suitable for passing in to JSON conversion."""
        return {
            'genus': self.genus,
            'letters': [letter.to_json() for letter in self.letters],
        }


def _eta_curves(g: int) -> List[str]:
    return [f'B_{i}' for i in range(2 * g + 2)] + [f'b_{g + 1}'] * 2 + [f"b_{g + 1}'"] * 2


def eta(g: int = 2, registry: Optional[CurveRegistry] = None) -> Factorization:
    """Build the factorization ``eta_{1,g}`` of the hyperelliptic involution-type relation on the genus ``2g+1`` fiber.

    :param g: a positive integer
    :param registry: the curves of the genus ``2g+1`` surface
    :raises ConfigurationError: if the registry is for another genus or lacks a needed curve
    """
    if g < 1:
        raise ValueError(f'g must be positive, got {g}')
    registry = registry if registry is not None else get_registry()
    if registry.genus != 2 * g + 1:
        raise ConfigurationError(f'no registry for genus {2 * g + 1}; the loaded registry has genus {registry.genus}')
    letters = []
    for name in _eta_curves(g):
        try:
            letters.append(Letter(registry[name], name))
        except UnknownNameError as e:
            raise ConfigurationError(f'registry is missing curve {name} needed by eta') from e
    return Factorization(tuple(letters), registry.genus)


def eta_squared(g: int = 2, registry: Optional[CurveRegistry] = None) -> Factorization:
    """Return ``eta_{1,g}`` repeated twice."""
    once = eta(g, registry)
    return once * once


def conjugate_factorization(
    f: MappingClassWord, w: Factorization, registry: Optional[CurveRegistry] = None,
) -> Factorization:
    """Apply the mapping class ``f`` to every letter of ``w``.

    :raises UnknownNameError: if a letter of ``f`` does not resolve
    """
    registry = registry if registry is not None else get_registry()
    if not f.letters:
        return w
    prefix = str(f)
    return Factorization(
        tuple(Letter(apply_word(f, letter.homology, registry), f'{prefix}({letter.label})') for letter in w),
        w.genus,
    )


def conjugate_by_twist(w: Factorization, c: HomologyClass, label: str, power: int = 1) -> Factorization:
    """Return ``t_c^power(W)``, the conjugate of every letter by a power of one twist."""
    if not c:
        raise ZeroClassError(f'cannot conjugate by the twist about the zero class {label}')
    prefix = f'T({label})' if power == 1 else f'T({label})^{power}'
    return Factorization(
        tuple(Letter(twist_power(c, letter.homology, power), f'{prefix}({letter.label})') for letter in w),
        w.genus,
    )


def xi(p: int, q: int, registry: Optional[CurveRegistry] = None) -> Factorization:
    """Build ``xi(p,q) = Phi(p,q)(eta^2) * eta^2``.

    Letters 1 to 20 are the plain ``eta^2``, letters 21 to 40 its image under the monodromy of ``K_{p,q}``.
    """
    registry = registry if registry is not None else get_registry()
    plain = eta_squared(2, registry)
    return conjugate_factorization(kanenobu_word(p, q), plain, registry) * plain


def y_fact(p: int, q: int, r: int, s: int, registry: Optional[CurveRegistry] = None) -> Factorization:
    """Build ``Y(p,q;r,s) = xi(r,s) * xi(p,q)``, the fiber sum with 80 letters."""
    return xi(r, s, registry) * xi(p, q, registry)


def parity(p: int, q: int) -> Tuple[int, int]:
    """Return ``(p mod 2, q mod 2)``, which determines every ``Phi(p,q)`` image mod 2."""
    return p % 2, q % 2


def _moved_label(letter: Letter, conjugator: Letter, homology: HomologyClass, exponent: int) -> str:
    if homology == letter.homology:
        return letter.label
    if exponent == 1:
        return f't({conjugator.label})({letter.label})'
    return f't({conjugator.label})^{exponent}({letter.label})'


def hurwitz_move(w: Factorization, i: int, direction: str = FORWARD) -> Factorization:
    """Perform an elementary Hurwitz move on letters ``i`` and ``i+1``.

    Forward: ``(.., b, a, ..) -> (.., t_a(b), a, ..)`` read as ``t_{i+1} t_i``, so the new letter ``i`` is ``a`` and
    the new letter ``i+1`` is ``t_a(b)``. Inverse undoes it. Over GF(2) ``t`` and its inverse act alike on classes.

    :param i: 1-based index, ``1 <= i <= n-1``
    :raises MoveIndexError: if ``i`` is out of range
    """
    n = len(w.letters)
    if not 1 <= i <= n - 1:
        raise MoveIndexError(f'Hurwitz index {i} out of range 1..{n - 1}')
    if direction not in (FORWARD, INVERSE):
        raise ValueError(f'unknown direction: {direction}')

    letters = list(w.letters)
    lower, upper = letters[i - 1], letters[i]
    if direction == FORWARD:
        image = transvect(upper.homology, lower.homology)
        letters[i - 1] = upper
        letters[i] = Letter(image, _moved_label(lower, upper, image, 1))
    else:
        image = transvect(lower.homology, upper.homology)
        letters[i] = lower
        letters[i - 1] = Letter(image, _moved_label(upper, lower, image, -1))
    return Factorization(tuple(letters), w.genus)


def swap_blocks(w: Factorization, lower: Tuple[int, int], upper: Tuple[int, int]) -> Factorization:
    """Move the block ``upper`` below the adjacent block ``lower`` by inverse elementary moves.

    Every letter of ``upper`` is carried past ``lower`` and comes out conjugated by it; ``lower`` is untouched.

    :param lower: 1-based inclusive ``(lo, hi)``
    :param upper: 1-based inclusive ``(hi + 1, up)``
    """
    lo, hi = lower
    start, up = upper
    if start != hi + 1 or lo > hi or start > up:
        raise MoveIndexError(f'blocks {lower} and {upper} are not adjacent')
    for u in range(start, up + 1):
        for k in range(u - 1, lo + (u - start) - 1, -1):
            w = hurwitz_move(w, k, INVERSE)
    return w


def block_monodromy(w: Factorization, lower: int, upper: int) -> BitMatrix:
    """Return the product of the transvections of letters ``lower..upper``."""
    return total_monodromy_sp2(w.block(lower, upper))


def total_monodromy_sp2(w: Factorization) -> BitMatrix:
    """Return ``M_n ... M_2 M_1``, the mod-2 shadow of the total monodromy, letter 1 applied first."""
    result = BitMatrix.identity(2 * w.genus)
    for letter in w.letters:
        result = letter.matrix @ result
    return result


def euler_characteristic(w: Factorization) -> int:
    """Return ``2(2 - 2h) + n`` for a genus-``h`` fibration over the sphere with ``n`` singular fibers."""
    return 2 * (2 - 2 * w.genus) + len(w.letters)


def random_moves(
    w: Factorization,
    n: int,
    rng: Optional[np.random.Generator] = None,
    progress: bool = False,
) -> Factorization:
    """Apply ``n`` uniformly random elementary Hurwitz moves.

    :param rng: the random source; a fresh default generator if not given
    :param progress: show a progress bar
    """
    rng = rng if rng is not None else np.random.default_rng()
    if len(w.letters) < 2:
        return w
    for _ in tqdm(range(n), desc='Hurwitz moves', disable=not progress, leave=False):
        index = int(rng.integers(1, len(w.letters)))
        direction = FORWARD if rng.integers(0, 2) else INVERSE
        w = hurwitz_move(w, index, direction)
    return w


def build_factorization(
    node: Union[str, FactorizationNode], registry: Optional[CurveRegistry] = None,
) -> Factorization:
    """Evaluate a factorization expression or syntax tree against ``registry``."""
    registry = registry if registry is not None else get_registry()
    if isinstance(node, str):
        node = parse_factorization(node)

    if isinstance(node, EtaPower):
        once = eta(2, registry)
        result = once
        for _ in range(node.exponent - 1):
            result = result * once
        return result
    if isinstance(node, XiCall):
        return xi(node.p, node.q, registry)
    if isinstance(node, YCall):
        return y_fact(node.p, node.q, node.r, node.s, registry)
    if isinstance(node, PhiConjugate):
        body = build_factorization(node.body, registry)
        return conjugate_factorization(kanenobu_word(node.p, node.q), body, registry)
    if isinstance(node, TwistConjugate):
        return conjugate_by_twist(build_factorization(node.body, registry), registry[node.curve], node.curve)
    if isinstance(node, Product):
        factors = [build_factorization(factor, registry) for factor in node.factors]
        result = factors[0]
        for factor in factors[1:]:
            result = result * factor
        return result
    raise TypeError(f'not a factorization node: {node!r}')


# equivalence scripts

@dataclass
class ScriptStep:
    """The outcome of one step of an equivalence script."""

    step: int
    op: str
    detail: str
    letter_count: int
    monodromy_preserved: bool
    certificate: Optional[bool] = None

    @property
    def passed(self) -> bool:
        """True if every check of the step passed."""
        return self.monodromy_preserved and self.certificate is not False

    def to_json(self):
        """Return a representation of the instance suitable for passing in to JSON conversion."""
        return {
            'step': self.step,
            'op': self.op,
            'detail': self.detail,
            'letter_count': self.letter_count,
            'monodromy_preserved': self.monodromy_preserved,
            'certificate': self.certificate,
            'passed': self.passed,
        }


@dataclass
class ScriptReport:
    """The outcome of replaying an equivalence script."""

    name: str
    parameters: Dict[str, int]
    start: str
    expect: str
    steps: List[ScriptStep]
    matched: bool
    final: Factorization
    level: str = 'verified at psi_2 level'

    @property
    def passed(self) -> bool:
        """True if every step passed and the final letter classes match the expectation."""
        return self.matched and all(step.passed for step in self.steps)

    def to_json(self):
        """Return a representation of the instance suitable for passing in to JSON conversion."""
        return {
            'name': self.name,
            'parameters': self.parameters,
            'start': self.start,
            'expect': self.expect,
            'steps': [step.to_json() for step in self.steps],
            'matched': self.matched,
            'passed': self.passed,
            'level': self.level,
        }


def list_scripts(directory: Optional[str] = None) -> List[str]:
    """List the names of the shipped scripts."""
    directory = directory or SCRIPTS_DIRECTORY
    return sorted(name[:-len('.json')] for name in os.listdir(directory) if name.endswith('.json'))


def load_script(name_or_path: str) -> Dict[str, Any]:
    """Load a script by shipped name (e.g. ``shift-p``) or by path.

    :raises UnknownNameError: if no such shipped script exists
    :raises ScriptError: if the document is not valid JSON or lacks a required field
    """
    path = name_or_path
    if not os.path.exists(path):
        path = os.path.join(SCRIPTS_DIRECTORY, f'{name_or_path}.json')
        if not os.path.exists(path):
            raise UnknownNameError('script', name_or_path)
    try:
        with open(path) as file:
            script = json.load(file)
    except ValueError as e:
        raise ScriptError(f'script {path} is not valid JSON: {e}') from e
    for key in ('name', 'start', 'moves', 'expect'):
        if key not in script:
            raise ScriptError(f'script {path} has no {key!r} field')
    return script


def _template_values(p: int, q: int) -> Dict[str, int]:
    return {
        'p': p,
        'q': q,
        'p1': p + 1,
        'q1': q + 1,
        'neg_p': -p,
        'neg_p1': -(p + 1),
        'neg_q': -q,
        'neg_q1': -(q + 1),
    }


def _substitute(value: Any, values: Mapping[str, int]) -> Any:
    if isinstance(value, str):
        try:
            return string.Template(value).substitute(values)
        except (KeyError, ValueError) as e:
            raise ScriptError(f'bad template {value!r}: {e}') from e
    if isinstance(value, list):
        return [_substitute(item, values) for item in value]
    if isinstance(value, dict):
        return {key: _substitute(item, values) for key, item in value.items()}
    return value


def _as_int(value: Any, what: str) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ScriptError(f'{what} must be an integer, got {value!r}') from None


def _certificate_matrix(w: Factorization, certificate: Sequence[Sequence[int]], step: int) -> BitMatrix:
    """Evaluate a word in the current letters; the leftmost pair is applied last."""
    result = BitMatrix.identity(2 * w.genus)
    for entry in reversed(certificate):
        if len(entry) != 2:
            raise ScriptError(f'step {step}: certificate entries are [index, exponent] pairs, got {entry!r}')
        index, exponent = _as_int(entry[0], 'certificate index'), _as_int(entry[1], 'certificate exponent')
        try:
            matrix = w.letter(index).matrix
        except MoveIndexError as e:
            raise CertificateError(step, str(e)) from e
        result = (matrix ** (exponent % 2)) @ result
    return result


def _apply_move(
    w: Factorization, move: Mapping[str, Any], step: int, registry: CurveRegistry,
) -> Tuple[Factorization, str, Optional[bool]]:
    op = move.get('op')
    if op == 'hurwitz':
        index = _as_int(move.get('index'), 'index')
        direction = move.get('direction', FORWARD)
        try:
            return hurwitz_move(w, index, direction), f'{direction} move at {index}', None
        except ValueError as e:
            raise ScriptError(f'step {step}: {e}') from e

    if op == 'swap':
        try:
            lower = tuple(_as_int(v, 'block bound') for v in move['lower'])
            upper = tuple(_as_int(v, 'block bound') for v in move['upper'])
        except (KeyError, TypeError) as e:
            raise ScriptError(f'step {step}: swap needs "lower" and "upper" blocks') from e
        return swap_blocks(w, lower, upper), f'swap {list(lower)} with {list(upper)}', None

    if op == 'conjugate':
        try:
            lo, hi = (_as_int(v, 'block bound') for v in move['block'])
            name = move['by']
            certificate = move['certificate']
        except (KeyError, TypeError, ValueError) as e:
            raise ScriptError(f'step {step}: conjugate needs "block", "by" and "certificate"') from e
        power = _as_int(move.get('power', 1), 'power')

        if not block_monodromy(w, lo, hi).is_identity():
            raise CertificateError(step, f'block {lo}..{hi} does not multiply to the identity')

        claimed = registry[name]
        if _certificate_matrix(w, certificate, step) != transvection_matrix(claimed.vec):
            raise CertificateError(step, f'certificate {certificate} does not evaluate to the twist about {name}')

        letters = list(w.letters)
        conjugated = conjugate_by_twist(w.block(lo, hi), claimed, name, power)
        letters[lo - 1:hi] = conjugated.letters
        return Factorization(tuple(letters), w.genus), f'conjugate {lo}..{hi} by T({name})^{power}', True

    raise ScriptError(f'step {step}: unknown op {op!r}')


def run_equivalence_script(
    script: Union[str, Mapping[str, Any]],
    p: int = 0,
    q: int = 0,
    registry: Optional[CurveRegistry] = None,
) -> ScriptReport:
    """Replay a scripted Hurwitz equivalence and check it step by step.

    After every step the letter count and the mod-2 total monodromy must be unchanged; a ``conjugate`` step must
    act on a block whose mod-2 product is the identity, and its certificate (a word in the current letters) must
    evaluate to the mod-2 twist it claims.

    :param script: a shipped script name, a path, or a loaded script document
    :param p: the first template parameter
    :param q: the second template parameter
    :raises ScriptError: if the script is malformed
    :raises CertificateError: naming the step whose certificate fails
    """
    registry = registry if registry is not None else get_registry()
    if isinstance(script, str):
        script = load_script(script)
    values = _template_values(p, q)
    document = _substitute(dict(script), values)

    logger.info('replaying script %s with p=%d, q=%d', document['name'], p, q)
    w = build_factorization(document['start'], registry)
    reference = total_monodromy_sp2(w)
    count = len(w)

    steps = []
    for step, move in enumerate(document['moves'], start=1):
        if not isinstance(move, Mapping):
            raise ScriptError(f'step {step}: a move must be an object, got {move!r}')
        w, detail, certificate = _apply_move(w, move, step, registry)
        preserved = len(w) == count and total_monodromy_sp2(w) == reference
        logger.debug('step %d: %s (monodromy preserved: %s)', step, detail, preserved)
        steps.append(ScriptStep(step, move['op'], detail, len(w), preserved, certificate))

    expected = build_factorization(document['expect'], registry)
    matched = w.same_classes(expected)
    if not matched:
        logger.warning('script %s: final letters do not match %s', document['name'], document['expect'])

    return ScriptReport(
        name=document['name'],
        parameters={'p': p, 'q': q},
        start=document['start'],
        expect=document['expect'],
        steps=steps,
        matched=matched,
        final=w,
    )
