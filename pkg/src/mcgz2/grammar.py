# -*- coding: utf-8 -*-

"""Tokenizer and recursive-descent parser for class and factorization expressions.

Class expressions::

    expr := term ("+" term)*
    term := NAME | "0" | "Phi(" INT "," INT ")(" NAME ")"

Factorization expressions, where the left factor of a product is applied last::

    fexpr := fterm ("*" fterm)*
    fterm := "eta" ["^" INT] | "xi(" INT "," INT ")" | "Y(" INT "," INT ";" INT "," INT ")"
           | "Phi(" INT "," INT ")(" fexpr ")" | "T(" NAME ")(" fexpr ")" | "(" fexpr ")"

The parser only builds syntax trees; names are resolved elsewhere.
"""

import re
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Tuple, Union

from mcgz2.exceptions import ArityError, ExpressionSyntaxError, UnknownNameError

__all__ = [
    'CurveRef',
    'ZeroClass',
    'PhiImage',
    'ClassSum',
    'EtaPower',
    'XiCall',
    'YCall',
    'PhiConjugate',
    'TwistConjugate',
    'Product',
    'ClassNode',
    'FactorizationNode',
    'parse_class',
    'parse_factorization',
    'FACTORIZATION_CONSTRUCTORS',
]

TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
    |(?P<int>-?\d+)
    |(?P<name>[A-Za-z][A-Za-z0-9_]*'*)
    |(?P<punct>[()+*,;^])
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    """A lexical token and its offset in the source text."""

    kind: str
    value: str
    position: int


def tokenize(text: str) -> List[Token]:
    """Split ``text`` into tokens, dropping whitespace.

    :raises ExpressionSyntaxError: on a character that starts no token
    """
    tokens = []
    position = 0
    while position < len(text):
        match = TOKEN_RE.match(text, position)
        if match is None:
            raise ExpressionSyntaxError(f'unexpected character {text[position]!r}', text, position)
        if match.lastgroup != 'ws':
            tokens.append(Token(match.lastgroup, match.group(), position))
        position = match.end()
    tokens.append(Token('end', '', len(text)))
    return tokens


@dataclass(frozen=True)
class CurveRef:
    """A registry curve name."""

    name: str


@dataclass(frozen=True)
class ZeroClass:
    """The zero class, written ``0``."""


@dataclass(frozen=True)
class PhiImage:
    """The image of a curve under the monodromy ``Phi(p,q)``."""

    p: int
    q: int
    target: str


ClassTerm = Union[CurveRef, ZeroClass, PhiImage]


@dataclass(frozen=True)
class ClassSum:
    """A sum of class terms."""

    terms: Tuple[ClassTerm, ...]


ClassNode = ClassSum


@dataclass(frozen=True)
class EtaPower:
    """``eta`` repeated ``exponent`` times."""

    exponent: int = 1


@dataclass(frozen=True)
class XiCall:
    """``xi(p,q)``."""

    p: int
    q: int


@dataclass(frozen=True)
class YCall:
    """``Y(p,q;r,s)``."""

    p: int
    q: int
    r: int
    s: int


@dataclass(frozen=True)
class PhiConjugate:
    """``Phi(p,q)(body)``."""

    p: int
    q: int
    body: 'FactorizationNode'


@dataclass(frozen=True)
class TwistConjugate:
    """``T(curve)(body)``: conjugation by a single twist."""

    curve: str
    body: 'FactorizationNode'


@dataclass(frozen=True)
class Product:
    """A product of factorizations; the leftmost factor is applied last."""

    factors: Tuple['FactorizationNode', ...]


FactorizationNode = Union[EtaPower, XiCall, YCall, PhiConjugate, TwistConjugate, Product]

#: Constructors accepted in factorization expressions, with their argument separators
FACTORIZATION_CONSTRUCTORS = {
    'xi': (',',),
    'Y': (',', ';', ','),
    'Phi': (',',),
    'T': (),
}


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def error(self, message: str, token: Optional[Token] = None) -> ExpressionSyntaxError:
        token = token or self.current
        return ExpressionSyntaxError(message, self.text, token.position)

    def accept(self, value: str) -> bool:
        if self.current.kind != 'end' and self.current.value == value:
            self.index += 1
            return True
        return False

    def expect(self, value: str) -> Token:
        token = self.current
        if not self.accept(value):
            found = token.value or 'end of input'
            raise self.error(f'expected {value!r}, found {found!r}', token)
        return token

    def expect_kind(self, kind: str) -> Token:
        token = self.current
        if token.kind != kind:
            found = token.value or 'end of input'
            raise self.error(f'expected {kind}, found {found!r}', token)
        self.index += 1
        return token

    def finish(self) -> None:
        if self.current.kind != 'end':
            raise self.error(f'unexpected {self.current.value!r}')

    def int_arguments(self, name: str, separators: Tuple[str, ...]) -> List[int]:
        """Parse ``(INT sep INT ...)`` and check the arity against ``separators``."""
        opening = self.expect('(')
        values = [int(self.expect_kind('int').value)]
        found = []
        while self.current.value in (',', ';'):
            found.append(self.current.value)
            self.index += 1
            values.append(int(self.expect_kind('int').value))
        closing = self.current
        self.expect(')')
        if len(values) != len(separators) + 1:
            raise ArityError(
                f'{name} takes {len(separators) + 1} arguments, got {len(values)}', self.text, opening.position,
            )
        if tuple(found) != separators:
            raise self.error(f'{name} arguments must be separated by {" ".join(separators)!r}', closing)
        return values

    # class expressions

    def class_expr(self) -> ClassSum:
        terms = [self.class_term()]
        while self.accept('+'):
            terms.append(self.class_term())
        return ClassSum(tuple(terms))

    def class_term(self) -> ClassTerm:
        token = self.current
        if token.kind == 'int':
            if token.value != '0':
                raise self.error(f'only the zero class may be written as a number, found {token.value!r}')
            self.index += 1
            return ZeroClass()
        name = self.expect_kind('name')
        if self.current.value != '(':
            return CurveRef(name.value)
        if name.value != 'Phi':
            raise UnknownNameError('class constructor', name.value)
        p, q = self.int_arguments('Phi', (',',))
        self.expect('(')
        target = self.expect_kind('name')
        self.expect(')')
        return PhiImage(p, q, target.value)

    # factorization expressions

    def factorization_expr(self) -> FactorizationNode:
        factors = [self.factorization_term()]
        while self.accept('*'):
            factors.append(self.factorization_term())
        if len(factors) == 1:
            return factors[0]
        return Product(tuple(factors))

    def factorization_term(self) -> FactorizationNode:
        if self.accept('('):
            node = self.factorization_expr()
            self.expect(')')
            return node

        name = self.expect_kind('name')
        if name.value == 'eta':
            if self.accept('^'):
                exponent = self.expect_kind('int')
                if int(exponent.value) < 1:
                    raise self.error('eta exponent must be positive', exponent)
                return EtaPower(int(exponent.value))
            return EtaPower(1)

        if name.value not in FACTORIZATION_CONSTRUCTORS:
            raise UnknownNameError('constructor', name.value)

        if name.value == 'xi':
            return XiCall(*self.int_arguments('xi', FACTORIZATION_CONSTRUCTORS['xi']))
        if name.value == 'Y':
            return YCall(*self.int_arguments('Y', FACTORIZATION_CONSTRUCTORS['Y']))
        if name.value == 'Phi':
            p, q = self.int_arguments('Phi', FACTORIZATION_CONSTRUCTORS['Phi'])
            return PhiConjugate(p, q, self.parenthesized_body())

        self.expect('(')
        curve = self.expect_kind('name')
        self.expect(')')
        return TwistConjugate(curve.value, self.parenthesized_body())

    def parenthesized_body(self) -> FactorizationNode:
        self.expect('(')
        body = self.factorization_expr()
        self.expect(')')
        return body


def parse_class(text: str) -> ClassSum:
    """Parse a class expression such as ``"B_4 + a_2 + d"`` or ``"Phi(0,0)(B_4)"``.

    :raises ExpressionSyntaxError: with the offending position
    :raises UnknownNameError: if a constructor other than ``Phi`` is used
    """
    parser = _Parser(text)
    node = parser.class_expr()
    parser.finish()
    return node


def parse_factorization(text: str) -> FactorizationNode:
    """Parse a factorization expression such as ``"Phi(0,1)(eta^2) * eta^2"``.

    :raises ExpressionSyntaxError: with the offending position
    :raises ArityError: if a constructor has the wrong number of arguments
    :raises UnknownNameError: for an unknown constructor
    """
    parser = _Parser(text)
    node = parser.factorization_expr()
    parser.finish()
    return node
