# conftest.py
"""Shared fixtures: catalog triples, seeded sample points, pinned configuration."""

import json

import pytest

from maninsigma import catalog, config
from maninsigma.utils import sample_points


@pytest.fixture(autouse=True)
def pinned_config(monkeypatch):
    # environment overrides never change test outcomes
    monkeypatch.setattr(config, "COMPARE_TOL", 1e-8)
    monkeypatch.setattr(config, "DB_PATH", None)
    monkeypatch.setattr(config, "VERBOSE", False)


@pytest.fixture(params=catalog.names())
def entry(request):
    return catalog.get(request.param)


@pytest.fixture(params=[n for n in catalog.names() if catalog.get(n).triple.dim == 3])
def entry3(request):
    return catalog.get(request.param)


@pytest.fixture
def sl2_dual():
    return catalog.get("sl2_dual").triple


@pytest.fixture
def points():
    """points(n, count=20, radius=0.4, seed=7) -> seeded sample points in the cube."""

    def _points(n, count=20, radius=0.4, seed=7):
        return sample_points(seed, count, n, radius)

    return _points


@pytest.fixture
def write_json(tmp_path):
    def _write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
        return path

    return _write
