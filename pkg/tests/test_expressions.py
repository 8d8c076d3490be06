# -*- coding: utf-8 -*-

"""Test parsing and rendering of class and factorization expressions."""

import pytest

from mcgz2.exceptions import ArityError, ExpressionSyntaxError, UnknownNameError
from mcgz2.expressions import (
    describe_letters, parse_class_expr, parse_factorization_expr, render_class, render_factorization,
)
from mcgz2.grammar import ClassSum, CurveRef, EtaPower, PhiConjugate, Product, XiCall, parse_class, parse_factorization


def test_parse_class_tree():
    """A sum parses into its terms."""
    tree = parse_class("B_4 + a_2 + b_3'")
    assert isinstance(tree, ClassSum)
    assert tree.terms == (CurveRef('B_4'), CurveRef('a_2'), CurveRef("b_3'"))


def test_parse_factorization_tree():
    """Products, conjugations and eta powers parse into nodes."""
    tree = parse_factorization('Phi(0,1)(eta^2) * eta^2')
    assert isinstance(tree, Product)
    assert isinstance(tree.factors[0], PhiConjugate)
    assert tree.factors[1] == EtaPower(2)
    assert parse_factorization('xi(-1,2)') == XiCall(-1, 2)


def test_syntax_error_position():
    """Syntax errors carry the offending position."""
    with pytest.raises(ExpressionSyntaxError) as excinfo:
        parse_class('a_1 + + a_2')
    assert excinfo.value.position == 6


def test_arity():
    """Constructors with the wrong number of arguments are rejected."""
    with pytest.raises(ArityError):
        parse_factorization('xi(1)')
    with pytest.raises(ArityError):
        parse_factorization('Y(0,0;1)')


def test_unknown_name(registry):
    """Unknown curves name the offender."""
    with pytest.raises(UnknownNameError) as excinfo:
        parse_class_expr('a_1 + z_9', registry)
    assert excinfo.value.name == 'z_9'


def test_evaluate(registry):
    """Sums and Phi images evaluate against the registry."""
    assert parse_class_expr('a_1 + a_1', registry) == parse_class_expr('0', registry)
    assert parse_class_expr('B_4 + a_2', registry) == parse_class_expr('Phi(0,0)(B_4)', registry)
    assert str(parse_class_expr('a_1 + a_2', registry)) == '1100000000'


def test_render_class(registry):
    """Classes render as their registry name, a basis sum, or 0."""
    assert render_class(registry['B_4'], registry) == 'B_4'
    assert render_class(parse_class_expr('a_1 + b_5', registry), registry) == 'a_1 + b_5'
    assert render_class(parse_class_expr('0', registry), registry) == '0'
    assert render_class(parse_class("Phi(1,0)(B_2) + c_2")) == 'Phi(1,0)(B_2) + c_2'


def test_render_factorization():
    """Rendering is canonical and parses back to the same tree."""
    text = 'Phi( 0 , 1 )( eta^2 )*eta^2'
    rendered = render_factorization(text)
    assert rendered == 'Phi(0,1)(eta^2) * eta^2'
    assert parse_factorization(rendered) == parse_factorization(text)


def test_describe_letters(registry):
    """Every letter is listed with a 1-based index."""
    rows = describe_letters(parse_factorization_expr('eta', registry), registry)
    assert [row['index'] for row in rows] == list(range(1, 11))
    assert rows[0]['expression'] == 'B_0'
