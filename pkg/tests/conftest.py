from __future__ import annotations

import pytest

from permclass import relation


@pytest.fixture(params=["numba", "numpy"])
def backend(request, monkeypatch):
    """Run the test under each enumeration backend."""
    monkeypatch.setenv("PERMCLASS_BACKEND", request.param)
    return request.param


@pytest.fixture
def knuth_like():
    return relation.parse_partition("{123,321}{132,231}")


@pytest.fixture
def single_part():
    return relation.parse_partition("{123,132,231}")
