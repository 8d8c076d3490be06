# -*- coding: utf-8 -*-

"""Test the functionality of the Manager."""

from mcgz2.gf2core import BitVec
from mcgz2.manager import Manager
from mcgz2.models import StabilizerChain
from mcgz2.spgroup import twist_matrix
from mcgz2.util import chain_key


def _generators(*texts):
    return [twist_matrix(BitVec.from_string(text)) for text in texts]


def test_cache_miss_then_hit(manager_function: Manager):
    """The first request builds and stores a chain; the second reads it back."""
    generators = _generators('1000', '0010', '1100')
    first = manager_function.ensure_group(generators)
    assert manager_function.count_chains() == 1
    assert manager_function.stats['misses'] == 1

    second = manager_function.ensure_group(generators)
    assert manager_function.stats['hits'] == 1
    assert second.order == first.order
    assert second.base == first.base
    assert manager_function.count_chains() == 1


def test_chain_key(manager_function: Manager):
    """Chains are keyed by their generators in order."""
    generators = _generators('1000', '0010')
    manager_function.ensure_group(generators)
    key = chain_key(g.matrix for g in generators)
    chain = manager_function.get_chain(key)
    assert isinstance(chain, StabilizerChain)
    assert chain.order == 6
    assert chain.genus == 2
    assert chain_key(g.matrix for g in reversed(generators)) != key
    assert manager_function.get_chain(chain_key([])) is None


def test_stale_chain_is_rebuilt(manager_function: Manager):
    """A chain with an old schema version is discarded and rebuilt."""
    generators = _generators('1000', '0010', '0001')
    manager_function.ensure_group(generators)
    chain = manager_function.get_chain(chain_key(g.matrix for g in generators))
    chain.schema_version = 0
    manager_function.session.commit()

    group = manager_function.ensure_group(generators)
    assert manager_function.stats['rebuilt'] == 1
    assert manager_function.stats['misses'] == 2
    assert group.order == 12
    assert manager_function.count_chains() == 1


def test_corrupt_order_is_rebuilt(manager_function: Manager):
    """A chain whose stored order disagrees with its generators is discarded."""
    generators = _generators('1000', '0010')
    manager_function.ensure_group(generators)
    chain = manager_function.get_chain(chain_key(g.matrix for g in generators))
    chain.order = 7
    manager_function.session.commit()

    assert manager_function.ensure_group(generators).order == 6
    assert manager_function.stats['rebuilt'] == 1


def test_group_of(manager_function: Manager, registry):
    """Groups of factorizations go through the cache."""
    from mcgz2.factorization import eta

    group = manager_function.group_of(eta(2, registry))
    assert group.order > 1
    assert manager_function.cache_summary() == {'hits': 0, 'misses': 1, 'rebuilt': 0, 'stored': 1}
    assert [chain.order for chain in manager_function.list_chains()] == [group.order]


def test_get_connection(monkeypatch, tmpdir):
    """A passed-in connection wins over a passed-in cache directory, which wins over the environment."""
    monkeypatch.delenv('MCGZ2_CACHE_CONNECTION', raising=False)
    assert Manager._get_connection('sqlite://') == 'sqlite://'

    cache_dir = str(tmpdir.join('cache'))
    assert Manager._get_connection(cache_dir=cache_dir) == f'sqlite:///{cache_dir}/chains.db'
    assert tmpdir.join('cache').check(dir=True)

    monkeypatch.setenv('MCGZ2_CACHE_CONNECTION', 'sqlite:///from-env.db')
    assert Manager._get_connection() == 'sqlite:///from-env.db'
    assert Manager._get_connection('sqlite://', cache_dir) == 'sqlite://'


def test_cache_flag_beats_environment(monkeypatch, tmpdir):
    """An explicit cache directory is used even when the environment names a connection."""
    monkeypatch.setenv('MCGZ2_CACHE_CONNECTION', 'sqlite:///from-env.db')
    cache_dir = str(tmpdir.join('flag'))
    assert Manager._get_connection(cache_dir=cache_dir) == f'sqlite:///{cache_dir}/chains.db'

    manager = Manager.from_args(cache_dir=cache_dir)
    assert str(manager.engine.url) == f'sqlite:///{cache_dir}/chains.db'
    assert tmpdir.join('flag', 'chains.db').check(file=True)


def test_graphs(manager_function: Manager):
    """The pinned graphs are available from the manager."""
    assert sorted(manager_function.graphs) == ['gamma1', 'gamma2', 'gamma3', 'gamma4']
