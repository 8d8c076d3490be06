# -*- coding: utf-8 -*-

"""Manager for MCGz2: the curve registry, the pinned graphs and the stabilizer-chain cache."""

import logging
import os
from typing import Dict, List, Optional, Sequence, Tuple

from sqlalchemy import create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.orm import scoped_session, sessionmaker

from mcgz2.constants import CACHE_SCHEMA_VERSION, MCGZ2_CACHE_DIR
from mcgz2.factorization import Factorization
from mcgz2.models import Base, StabilizerChain
from mcgz2.quadform import ChiGraph, load_graphs
from mcgz2.spgroup import SpElement, SpSubgroup, group_from, twist_matrix
from mcgz2.surface import CurveRegistry, HomologyClass, get_registry
from mcgz2.util import chain_key

__all__ = ['Manager']

logger = logging.getLogger(__name__)


class Manager:
    """Manager for the data files and the chain cache."""

    def __init__(
        self,
        engine: Engine,
        session: scoped_session,
        registry: Optional[CurveRegistry] = None,
    ) -> None:
        """Instantiate a Manager with instances of the objects it needs.

        :param engine: The database engine.
        :param session: The database session.
        :param registry: The curve registry. If None, the configured registry is loaded.
        """
        self.engine = engine
        self.session = session
        self.registry = registry if registry is not None else get_registry()
        self._graphs: Optional[Dict[str, ChiGraph]] = None
        self.stats = {'hits': 0, 'misses': 0, 'rebuilt': 0}

        self.create_all()

    @classmethod
    def from_args(
        cls,
        connection: Optional[str] = None,
        echo: bool = False,
        cache_dir: Optional[str] = None,
        registry_path: Optional[str] = None,
    ) -> 'Manager':
        """Instantiate a Manager along with the objects it needs.

        :param connection: An SQLAlchemy-compatible connection string.
        :param echo: True to echo SQL emitted by SQLAlchemy.
        :param cache_dir: A directory for the default SQLite cache, used when no connection is configured.
        :param registry_path: A registry file. If None, the value will be obtained from the environment or the
            shipped registry is used.

        :returns: An instance of Manager configured according to the arguments provided.
        """
        engine, session = cls._get_engine_from_connection(connection=connection, echo=echo, cache_dir=cache_dir)
        return cls(engine, session, get_registry(registry_path))

    @staticmethod
    def _get_connection(connection: Optional[str] = None, cache_dir: Optional[str] = None) -> str:
        """Get a connection from one of the various configuration locations.

        Prioritizing a passed-in connection, then a passed-in cache directory, then a connection from an environment
        variable, and finally the default cache directory.
        """
        if connection is not None:
            logger.info('using passed-in connection: %s', connection)
            return connection

        if cache_dir is not None:
            logger.info('using passed-in cache directory: %s', cache_dir)
        else:
            connection = os.environ.get('MCGZ2_CACHE_CONNECTION')

            if connection is not None:
                logger.info('using connection from environment: %s', connection)
                return connection

            cache_dir = os.environ.get('MCGZ2_CACHE_DIR', MCGZ2_CACHE_DIR)
            logger.info('using default cache directory: %s', cache_dir)

        os.makedirs(cache_dir, exist_ok=True)
        return 'sqlite:///' + os.path.join(cache_dir, 'chains.db')

    @classmethod
    def _get_engine_from_connection(
        cls, connection: Optional[str] = None, echo: bool = False, cache_dir: Optional[str] = None,
    ) -> Tuple[Engine, scoped_session]:
        connection = cls._get_connection(connection, cache_dir)
        engine = create_engine(connection, echo=echo)

        session_maker = sessionmaker(bind=engine, autoflush=False, expire_on_commit=False)

        session = scoped_session(session_maker)

        return engine, session

    def create_all(self, checkfirst=True):
        """Issue appropriate CREATE statements via SQLalchemy to create the database tables.

        :param checkfirst: Don't issue CREATEs for tables already present in the target database if True.
        """
        Base.metadata.create_all(self.engine, checkfirst=checkfirst)

    def drop_database(self):
        """Drop all tables from the connected database."""
        Base.metadata.drop_all(self.engine)

    @property
    def graphs(self) -> Dict[str, ChiGraph]:
        """The pinned graphs, built against the registry on first use."""
        if self._graphs is None:
            self._graphs = load_graphs(self.registry)
        return self._graphs

    def count_chains(self) -> int:
        """Count the number of chains in the cache."""
        return self.session.query(StabilizerChain).count()

    def get_chain(self, key) -> Optional[StabilizerChain]:
        """Get a cached chain by its key if it exists.

        :param key: the UUID from :func:`mcgz2.util.chain_key`
        """
        return self.session.query(StabilizerChain).filter(StabilizerChain.key == key).one_or_none()

    def _rebuild(self, chain: StabilizerChain, generators: Sequence[SpElement]) -> Optional[SpSubgroup]:
        if chain.schema_version != CACHE_SCHEMA_VERSION:
            logger.warning('discarding cached chain %s with schema version %s', chain.key, chain.schema_version)
            return None
        group = SpSubgroup.from_strong_generators(
            generators, chain.base, [SpElement(m, check=False) for m in chain.strong_generators], chain.genus,
        )
        if group.order != chain.order:
            logger.warning('discarding cached chain %s: rebuilt order %d != stored %d', chain.key, group.order,
                           chain.order)
            return None
        return group

    def ensure_group(self, generators: Sequence[SpElement], genus: Optional[int] = None) -> SpSubgroup:
        """Look up the group generated by ``generators`` in the cache, building and storing it on a miss.

        :param generators: symplectic generators, in order
        :param genus: required only when ``generators`` is empty
        """
        genus = genus if genus is not None else (generators[0].genus if generators else self.registry.genus)
        key = chain_key(g.matrix for g in generators)
        logger.debug('chain key %s', key)

        chain = self.get_chain(key)
        if chain is not None:
            group = self._rebuild(chain, generators)
            if group is not None:
                self.stats['hits'] += 1
                logger.info('cache hit for group of order %d', group.order)
                return group
            self.stats['rebuilt'] += 1
            self.session.delete(chain)
            self.session.commit()

        self.stats['misses'] += 1
        group = group_from(generators, genus=genus)
        logger.info('cache miss; built group of order %d', group.order)
        self.session.add(StabilizerChain(
            key=key,
            schema_version=CACHE_SCHEMA_VERSION,
            genus=genus,
            base=group.base,
            strong_generators=[g.matrix for g in group.strong_generators()],
            orbit_sizes=group.orbit_sizes,
            order=group.order,
        ))
        self.session.commit()
        return group

    def group_of(self, w: Factorization, extra: Sequence[HomologyClass] = ()) -> SpSubgroup:
        """Get the cached mod-2 monodromy group of ``w``, optionally with more twists adjoined."""
        generators = [twist_matrix(letter.homology) for letter in w] + [twist_matrix(c) for c in extra]
        return self.ensure_group(generators, genus=w.genus)

    def cache_summary(self) -> Dict[str, int]:
        """Return the hit and miss counts together with the number of stored chains."""
        return {**self.stats, 'stored': self.count_chains()}

    def list_chains(self) -> List[StabilizerChain]:
        """List the cached chains."""
        return self.session.query(StabilizerChain).order_by(StabilizerChain.created).all()
