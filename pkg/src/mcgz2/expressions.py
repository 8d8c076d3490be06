# -*- coding: utf-8 -*-

"""Parsing and rendering of class and factorization expressions against a registry."""

from typing import List, Optional, Union

from mcgz2.factorization import Factorization, build_factorization
from mcgz2.grammar import (
    ClassSum, CurveRef, EtaPower, FactorizationNode, PhiConjugate, PhiImage, Product, TwistConjugate, XiCall, YCall,
    ZeroClass, parse_class, parse_factorization,
)
from mcgz2.surface import CurveRegistry, HomologyClass, get_registry

__all__ = [
    'parse_class_expr',
    'parse_factorization_expr',
    'render_class',
    'render_factorization',
    'describe_letters',
]


def parse_class_expr(text: str, registry: Optional[CurveRegistry] = None) -> HomologyClass:
    """Evaluate a class expression such as ``"B_4 + a_2 + d"``.

    :raises ExpressionSyntaxError: with the offending position
    :raises UnknownNameError: if a name does not resolve
    """
    registry = registry if registry is not None else get_registry()
    return registry.evaluate(parse_class(text))


def parse_factorization_expr(text: str, registry: Optional[CurveRegistry] = None) -> Factorization:
    """Evaluate a factorization expression such as ``"Phi(0,1)(eta^2) * eta^2"``.

    :raises ExpressionSyntaxError: with the offending position
    :raises ArityError: if a constructor has the wrong number of arguments
    :raises UnknownNameError: for an unknown constructor or curve
    """
    return build_factorization(parse_factorization(text), registry)


def render_class(value: Union[HomologyClass, ClassSum], registry: Optional[CurveRegistry] = None) -> str:
    """Render a class as text that parses back to it.

    A syntax tree is printed as written. A class is printed as its registry name when it has one, otherwise as a
    sum of basis names; the zero class is ``0``.
    """
    if isinstance(value, ClassSum):
        return ' + '.join(_render_term(term) for term in value.terms)

    registry = registry if registry is not None else get_registry()
    if not value:
        return '0'
    name = registry.name_of(value)
    if name is not None:
        return name
    return ' + '.join(registry.basis[i] for i in value.vec.support())


def _render_term(term) -> str:
    if isinstance(term, ZeroClass):
        return '0'
    if isinstance(term, PhiImage):
        return f'Phi({term.p},{term.q})({term.target})'
    if isinstance(term, CurveRef):
        return term.name
    raise TypeError(f'not a class term: {term!r}')


def render_factorization(node: Union[str, FactorizationNode]) -> str:
    """Render a factorization syntax tree in canonical form."""
    if isinstance(node, str):
        node = parse_factorization(node)
    if isinstance(node, EtaPower):
        return 'eta' if node.exponent == 1 else f'eta^{node.exponent}'
    if isinstance(node, XiCall):
        return f'xi({node.p},{node.q})'
    if isinstance(node, YCall):
        return f'Y({node.p},{node.q};{node.r},{node.s})'
    if isinstance(node, PhiConjugate):
        return f'Phi({node.p},{node.q})({render_factorization(node.body)})'
    if isinstance(node, TwistConjugate):
        return f'T({node.curve})({render_factorization(node.body)})'
    if isinstance(node, Product):
        return ' * '.join(
            f'({render_factorization(f)})' if isinstance(f, Product) else render_factorization(f)
            for f in node.factors
        )
    raise TypeError(f'not a factorization node: {node!r}')


def describe_letters(w: Factorization, registry: Optional[CurveRegistry] = None) -> List[dict]:
    """List the letters of ``w`` with their index, label, coordinates and rendered class."""
    registry = registry if registry is not None else get_registry()
    return [
        {
            'index': index,
            'label': letter.label,
            'class': str(letter.homology),
            'expression': render_class(letter.homology, registry),
        }
        for index, letter in enumerate(w, start=1)
    ]
