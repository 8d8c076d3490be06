# -*- coding: utf-8 -*-

"""Constants used by MCGz2."""

import os
import uuid

__all__ = [
    'VERSION',
    'NAMESPACE_MCGZ2_CHAIN',
    'REPORT_SCHEMA',
    'CACHE_SCHEMA_VERSION',
    'MCGZ2_DIRECTORY',
    'MCGZ2_CACHE_DIR',
    'MCGZ2_DEFAULT_CONNECTION',
    'MCGZ2_CONNECTION',
    'MCGZ2_REGISTRY',
    'MCGZ2_KRANGE',
    'DATA_DIRECTORY',
    'DEFAULT_REGISTRY_PATH',
    'DEFAULT_GRAPHS_PATH',
    'DEFAULT_RELATIONS_PATH',
    'SCRIPTS_DIRECTORY',
    'DEFAULT_GENUS',
    'XI_GROUP_ORDER',
    'SP10_ORDER',
    'IDENTITY_PARAMETER_RANGE',
]

VERSION = '0.1.0-dev'

NAMESPACE_MCGZ2_CHAIN = uuid.UUID('1f0d5c8e-8f4b-4b8e-9d0e-6a2c8b7f3e51')

REPORT_SCHEMA = 'mcgz2.report/1'

#: Bump whenever the layout of a cached stabilizer chain changes
CACHE_SCHEMA_VERSION = 1

#: The directory in which data for MCGz2 is stored. Can be set from the environment variable
#: ``MCGZ2_DIRECTORY`` or defaults to ``~/.mcgz2``
MCGZ2_DIRECTORY = os.environ.get(
    'MCGZ2_DIRECTORY', os.path.join(os.path.expanduser('~'), '.mcgz2')
)

#: The directory holding the stabilizer-chain cache. Can be set from the environment variable
#: ``MCGZ2_CACHE_DIR`` or defaults to :data:`MCGZ2_DIRECTORY`
MCGZ2_CACHE_DIR = os.environ.get('MCGZ2_CACHE_DIR', MCGZ2_DIRECTORY)

MCGZ2_DEFAULT_CONNECTION = 'sqlite:///' + os.path.join(MCGZ2_CACHE_DIR, 'chains.db')
MCGZ2_CONNECTION = os.environ.get('MCGZ2_CACHE_CONNECTION', MCGZ2_DEFAULT_CONNECTION)

DATA_DIRECTORY = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')
DEFAULT_REGISTRY_PATH = os.path.join(DATA_DIRECTORY, 'registry.json')
DEFAULT_GRAPHS_PATH = os.path.join(DATA_DIRECTORY, 'graphs.json')
DEFAULT_RELATIONS_PATH = os.path.join(DATA_DIRECTORY, 'relations.json')
SCRIPTS_DIRECTORY = os.path.join(DATA_DIRECTORY, 'scripts')

#: A replacement curve registry. Can be set from the environment variable ``MCGZ2_REGISTRY``
MCGZ2_REGISTRY = os.environ.get('MCGZ2_REGISTRY')

#: The default upper bound of ``k`` in identity sweeps. Can be set from the environment variable ``MCGZ2_KRANGE``
MCGZ2_KRANGE = int(os.environ.get('MCGZ2_KRANGE', 4))

DEFAULT_GENUS = 5

#: Order of the subgroup of Sp(10, Z/2) generated by the twists of any xi(p, q)
XI_GROUP_ORDER = 50030759116800

#: Order of Sp(10, Z/2)
SP10_ORDER = 24815256521932800

#: Values of p and q swept by the twist identity checks
IDENTITY_PARAMETER_RANGE = range(-2, 3)
