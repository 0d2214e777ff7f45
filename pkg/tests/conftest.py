from __future__ import annotations

import pytest

from chibound.corpus import catalog, full_corpus, random_corpus


@pytest.fixture(scope="session")
def small_catalog():
    """Every graph on at most 6 vertices up to isomorphism (208 graphs)."""
    return catalog(6)


@pytest.fixture(scope="session")
def corpus():
    """The full corpus as a list of ``(name, graph)``: 13598 catalog graphs plus 1000 G(n, p)."""
    return list(full_corpus())


@pytest.fixture(scope="session")
def random_graphs():
    return list(random_corpus())
