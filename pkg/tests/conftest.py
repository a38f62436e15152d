"""Shared fixtures; expensive objects are built once per session."""

from __future__ import annotations

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from gradbouss import Material, PointLoad, SettlementTable  # noqa: E402


@pytest.fixture(scope="session")
def material():
    return Material(mu=1.0, nu=0.3, c=1.0)


@pytest.fixture(scope="session")
def unit_load():
    return PointLoad(1.0)


@pytest.fixture(scope="session")
def settlement_table():
    # ~400 kernel integrals; reused by superposition and acceptance tests
    return SettlementTable(0.3)
