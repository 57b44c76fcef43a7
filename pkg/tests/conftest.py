"""Shared fixtures: built-in models and their potentials."""

import copy
import json

import pytest

from gwvirasoro.core import ModelLoader, build_potential, builtin_table
from gwvirasoro.core.builtins import P2_DOCUMENT
from gwvirasoro.models import Window


@pytest.fixture(scope="session")
def loader():
    """Creates a model loader."""
    return ModelLoader()


@pytest.fixture(scope="session")
def point_model(loader):
    return loader.load_builtin("point")


@pytest.fixture(scope="session")
def p1_model(loader):
    return loader.load_builtin("p1")


@pytest.fixture(scope="session")
def p2_model(loader):
    return loader.load_builtin("p2")


@pytest.fixture(scope="session")
def point_potential(point_model):
    """Point target: F0 = t^3/6, F1 = 0, exact everywhere."""
    return build_potential(point_model, [], Window())


@pytest.fixture(scope="session")
def p1_potential(p1_model):
    """Projective line at t-degree 8, Novikov degree 4."""
    return build_potential(p1_model, builtin_table("p1", 4), Window(8, (4,)))


@pytest.fixture(scope="session")
def p2_table3():
    """Genus 0 and genus 1 point invariants of the plane through degree 3."""
    return builtin_table("p2", 3)


@pytest.fixture(scope="session")
def p2_potential(p2_model, p2_table3):
    """Projective plane at t-degree 10, Novikov degree 3."""
    return build_potential(p2_model, p2_table3, Window(10, (3,)))


@pytest.fixture
def p2_document():
    """A private copy of the plane model document."""
    return copy.deepcopy(P2_DOCUMENT)


@pytest.fixture
def write_json(tmp_path):
    """Writes a JSON document under tmp_path and returns its path."""

    def _write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path

    return _write
