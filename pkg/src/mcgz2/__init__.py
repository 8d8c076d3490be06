# -*- coding: utf-8 -*-

"""Mod-2 homology computations for monodromy factorizations of genus-5 Lefschetz fibrations."""

# metadata
__version__ = '0.1.0-dev'

__title__ = 'MCGz2'
# keep the __description__ synchronized with the package docstring
__description__ = 'Mod-2 homology computations for monodromy factorizations of genus-5 Lefschetz fibrations.'
__url__ = 'https://github.com/scolby33/MCGz2'

__author__ = 'Scott Colby'
__email__ = 'scolby33@gmail.com'

__license__ = 'MIT'
__copyright__ = 'Copyright (c) 2018 Scott Colby and Charles Tapley Hoyt'
