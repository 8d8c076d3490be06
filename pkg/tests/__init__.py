# -*- coding: utf-8 -*-

"""Tests for MCGz2."""
