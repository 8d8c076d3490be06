# -*- coding: utf-8 -*-

"""Implements custom SQLAlchemy TypeDecorators."""

import json
import uuid

import sqlalchemy.dialects.postgresql
from sqlalchemy.types import BINARY, Text, TypeDecorator

from mcgz2.gf2core import BitMatrix

__all__ = [
    'UUID',
    'IntegerList',
    'BitMatrixList',
    'ExactInteger',
]


class UUID(TypeDecorator):
    """Platform-independent UUID type.

    Uses Postgresql's UUID type, otherwise uses BINARY(16).
    """

    impl = BINARY

    def load_dialect_impl(self, dialect):
        """Load the implementation for a given dialect.

        :param dialect: The SQLAlchemy dialect (e.g., postgresql)
        """
        if dialect.name == 'postgresql':
            return dialect.type_descriptor(sqlalchemy.dialects.postgresql.UUID())

        return dialect.type_descriptor(BINARY)

    def process_bind_param(self, value, dialect):
        """Process the parameter to bind to the column.

        :param value: The value to bind
        :param dialect: The name of the dialect (e.g., postgresql)
        """
        if value is None:
            return

        if dialect.name == 'postgresql':
            return str(value)

        if isinstance(value, uuid.UUID):
            return value.bytes

        return uuid.UUID(value).bytes

    def process_result_value(self, value, dialect):
        """Process the parameter to load from the column.

        :param value: The value from the column
        :param dialect: The SQLAlchemy dialect (e.g., postgresql)
        """
        if value is None:
            return

        if dialect.name == 'postgresql':
            return uuid.UUID(str(value))

        return uuid.UUID(bytes=value)


class IntegerList(TypeDecorator):
    """A list of integers stored as JSON text."""

    impl = Text

    def process_bind_param(self, value, dialect):
        """Encode the list as JSON."""
        if value is None:
            return
        return json.dumps([int(v) for v in value])

    def process_result_value(self, value, dialect):
        """Decode the JSON list."""
        if value is None:
            return
        return json.loads(value)


class BitMatrixList(TypeDecorator):
    """A list of :class:`mcgz2.gf2core.BitMatrix` stored as JSON lists of row strings."""

    impl = Text

    def process_bind_param(self, value, dialect):
        """Encode each matrix as its rows."""
        if value is None:
            return
        return json.dumps([matrix.to_json() for matrix in value])

    def process_result_value(self, value, dialect):
        """Rebuild the matrices."""
        if value is None:
            return
        return [BitMatrix.from_rows(rows) for rows in json.loads(value)]


class ExactInteger(TypeDecorator):
    """An arbitrary-precision integer stored as decimal text."""

    impl = Text

    def process_bind_param(self, value, dialect):
        """Write the decimal digits."""
        if value is None:
            return
        return str(int(value))

    def process_result_value(self, value, dialect):
        """Read the decimal digits."""
        if value is None:
            return
        return int(value)
