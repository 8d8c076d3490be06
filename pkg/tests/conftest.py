# -*- coding: utf-8 -*-

"""Test configuration module for MCGz2."""

import logging

import pytest
from sqlalchemy import create_engine, event
from sqlalchemy.orm import scoped_session, sessionmaker

from mcgz2.factorization import xi
from mcgz2.manager import Manager
from mcgz2.models import Base
from mcgz2.quadform import load_graphs
from mcgz2.spgroup import group_of
from mcgz2.surface import get_registry
from .constants import TEST_CONNECTION

logger = logging.getLogger(__name__)
logging.getLogger('sqlalchemy.engine').setLevel(logging.WARNING)


@pytest.fixture(scope='session')
def registry():
    """Load the shipped curve registry once per session."""
    return get_registry()


@pytest.fixture(scope='session')
def graphs(registry):
    """Build the pinned graphs once per session."""
    return load_graphs(registry)


@pytest.fixture(scope='session')
def xi_group(registry):
    """Build the mod-2 monodromy group of xi(0, 0) once per session.

    This is the most expensive fixture; every test that needs a group order shares it.
    """
    return group_of(xi(0, 0, registry))


@pytest.fixture(scope='session')
def xi_group_of(registry, xi_group):
    """Build the group of xi(p, q) for any parameters once per session.

    :returns: a function of ``(p, q)`` returning the cached group
    """
    groups = {(0, 0): xi_group}

    def get(p, q):
        if (p, q) not in groups:
            groups[p, q] = group_of(xi(p, q, registry))
        return groups[p, q]

    return get


@pytest.fixture(scope='session')
def rfc(tmpdir_factory):
    """Create a temporary SQLite database and create the tables from the SQLAlchemy metadata.

    If the environment variable ``MCGZ2_TEST_CONNECTION`` is set, that gets used instead of creating a temporary
    database.

    :yields: a RFC connection string to the database to use
    """
    if TEST_CONNECTION:
        db_connection = TEST_CONNECTION

    else:
        db_path = tmpdir_factory.mktemp('mcgz2').join('chains.db')
        logger.debug(db_path)
        db_connection = f'sqlite:///{db_path}'

    engine = create_engine(db_connection)

    logger.debug('creating schema')
    Base.metadata.create_all(engine)

    yield db_connection


@pytest.fixture(scope='session')
def manager_session(rfc, registry):
    """Create a Manager test fixture with a temporary SQLite database for a test session.

    All DB operations will be rolled back upon the end of the test session. Note that a connection object is yielded
    as well, which the function-scoped version needs.

    :yields: a 2-tuple of a Manager and a Connection
    """
    engine = create_engine(rfc)
    connection = engine.connect()
    session = scoped_session(sessionmaker(bind=connection))

    @event.listens_for(session, 'after_transaction_end')
    def restart_savepoint(session, transaction):
        if transaction.nested and not transaction._parent.nested:
            # ensure that state is expired the way
            # session.commit() normally does
            session.expire_all()
            session.begin_nested()

    transaction = connection.begin()
    session.begin_nested()

    manager = Manager(engine=engine, session=session, registry=registry)

    yield manager, connection

    session.close()
    transaction.rollback()
    connection.close()


@pytest.fixture(scope='function')
def manager_function(manager_session):
    """Create a Manager test fixture with a temporary SQLite database for a test function.

    All DB operations will be rolled back upon the end of the test function.

    :yields: a Manager
    """
    manager: Manager = manager_session[0]
    connection = manager_session[1]

    transaction = connection.begin_nested()
    manager.session.begin_nested()
    manager.stats = {'hits': 0, 'misses': 0, 'rebuilt': 0}

    yield manager

    manager.session.close()

    # rollback - everything that happened with the
    # Session above (including all calls to commit())
    # is rolled back
    transaction.rollback()
