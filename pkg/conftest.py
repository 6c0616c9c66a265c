"""Shared pytest fixtures for zlift"""
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from hopf.algebra import HopfContext  # noqa: E402


@pytest.fixture
def uni():
    """Two structural families a, b: the universal example"""
    return HopfContext.universal(("a", "b"))


@pytest.fixture
def cache_dir(tmp_path):
    path = tmp_path / "cache"
    path.mkdir()
    return str(path)
