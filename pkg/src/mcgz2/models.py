# -*- coding: utf-8 -*-

"""SQLAlchemy models for MCGz2."""

from datetime import datetime

from sqlalchemy import Column, DateTime, Integer
from sqlalchemy.ext.declarative import DeclarativeMeta, declarative_base

from mcgz2.constants import CACHE_SCHEMA_VERSION
from mcgz2.custom_columns import BitMatrixList, ExactInteger, IntegerList, UUID

__all__ = [
    'Base',
    'StabilizerChain',
]

Base: DeclarativeMeta = declarative_base()


class StabilizerChain(Base):
    """A cached stabilizer chain of a subgroup of the symplectic group over GF(2)."""

    __tablename__ = 'chain'

    id = Column(Integer, primary_key=True)

    key = Column(
        UUID, nullable=False, unique=True, index=True,
        doc='UUID5 of the generator matrices, see :func:`mcgz2.util.chain_key`',
    )
    schema_version = Column(Integer, nullable=False, default=CACHE_SCHEMA_VERSION)
    genus = Column(Integer, nullable=False)

    base = Column(IntegerList, nullable=False, doc='base points as class bits')
    strong_generators = Column(BitMatrixList, nullable=False)
    orbit_sizes = Column(IntegerList, nullable=False)
    order = Column(ExactInteger, nullable=False)

    created = Column(DateTime, default=datetime.utcnow, nullable=False)

    def __repr__(self):
        return f'StabilizerChain({self.key}, order={self.order})'

    def to_json(self):
        """Return a representation of the instance suitable for passing in to JSON conversion."""
        return {
            'id': self.id,
            'key': str(self.key),
            'schema_version': self.schema_version,
            'genus': self.genus,
            'base': self.base,
            'orbit_sizes': self.orbit_sizes,
            'order': str(self.order),
            'created': str(self.created),
        }
