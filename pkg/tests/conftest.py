from __future__ import annotations

from functools import lru_cache

import pytest

from bruhat_cubulator.coxeter import build_system


@lru_cache(maxsize=None)
def system(tag: str):
    return build_system(tag)


@pytest.fixture
def a2():
    return system("A2")


@pytest.fixture
def a3():
    return system("A3")


@pytest.fixture
def b3():
    return system("B3")


@pytest.fixture
def atilde2():
    return system("Atilde2")
