# -*- coding: utf-8 -*-

"""Constants used in tests for MCGz2."""

import os

__all__ = [
    'TEST_CONNECTION',
    'XI_ORBIT_SIZES',
    'FULL_ORDER',
    'XI_ORDER',
    'EDGE_COUNTS',
    'D_SOLUTIONS',
    'D_SOLUTIONS_UNCONSTRAINED',
    'GAMMA1_ONES',
    'GAMMA1_ZEROS',
    'FAILING_WITH_A1',
    'BAD_CERTIFICATE',
]

TEST_CONNECTION = os.environ.get('MCGZ2_TEST_CONNECTION')

XI_ORDER = 50030759116800
FULL_ORDER = 24815256521932800
XI_ORBIT_SIZES = [528, 272, 120, 63, 32, 15, 8, 2, 3, 2]

EDGE_COUNTS = {'gamma1': 10, 'gamma2': 19, 'gamma3': 16, 'gamma4': 18}

D_SOLUTIONS = {'1100000000', '1110110000'}
D_SOLUTIONS_UNCONSTRAINED = {'1100000000', '1110000000', '1100110000', '1110110000'}

GAMMA1_ONES = [
    'a_1', 'a_2', 'a_3', 'a_4', 'a_5', 'b_1', 'b_2', 'b_3', 'b_4', 'b_5', 'c_1', 'c_6',
    'B_0', 'B_1', 'B_2', 'B_3', 'B_4', 'B_5', "b_3'", 'd_4',
]
GAMMA1_ZEROS = ['c_2', 'c_3', 'c_4', 'c_5', 'd_1', 'd_2', 'd_3', 'd']

#: Relations that stop holding when d is replaced by a_1
FAILING_WITH_A1 = {'k01-B_0', 'k01-B_1', 'k01-B_2', 'k01-B_4', 'k11-B_0', 'k11-B_3'}

#: Conjugates the first block by a twist whose class is not the claimed one
BAD_CERTIFICATE = [[44, 1], [44, 1], [44, -1]]
