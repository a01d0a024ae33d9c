from __future__ import annotations

import random

import pytest

from extempore import (
    build_lexicon,
    full_congress_document,
    load_site,
    mini_congress_document,
    mini_vocab_document,
    parse_fds,
)


@pytest.fixture(scope="session")
def mini_doc():
    return mini_congress_document()


@pytest.fixture(scope="session")
def mini_tree(mini_doc):
    return load_site(mini_doc)


@pytest.fixture(scope="session")
def mini_vocab():
    return mini_vocab_document()


@pytest.fixture(scope="session")
def mini_lexicon(mini_tree, mini_vocab):
    return build_lexicon(mini_tree, mini_vocab)


@pytest.fixture(scope="session")
def mini_fds(mini_tree, mini_vocab):
    return parse_fds(mini_tree, mini_vocab)


@pytest.fixture(scope="session")
def full_doc():
    return full_congress_document()


@pytest.fixture(scope="session")
def full_tree(full_doc):
    return load_site(full_doc)


def random_site_document(rng: random.Random, leaves: int, facets=("fa", "fb", "fc", "fd")) -> dict:
    """A ragged random site with exactly ``leaves`` pages.

    Values are unique across facets so labels-only lexicons stay
    unambiguous; paths may skip facets and end at different depths.
    """
    counter = {"leaf": 0}

    def leaf_node():
        counter["leaf"] += 1
        n = counter["leaf"]
        return {"leaf": {"id": f"L{n}", "title": f"Page {n}", "url": f"https://example.test/{n}"}}

    def build(budget: int, facet_idx: int):
        if facet_idx >= len(facets):
            assert budget == 1  # callers fan out before running out of facets
            return leaf_node()
        if budget == 1 and rng.random() < 0.35:
            return leaf_node()
        # occasionally skip a facet level so paths vary in shape
        child_idx = facet_idx + (2 if rng.random() < 0.2 and facet_idx + 2 <= len(facets) else 1)
        if child_idx >= len(facets):
            width = budget  # children must all be leaves
        else:
            width = min(budget, rng.randint(1, 3))
        cuts = sorted(rng.sample(range(1, budget), width - 1)) if width > 1 else []
        parts = [b - a for a, b in zip([0] + cuts, cuts + [budget])]
        facet = facets[facet_idx]
        values = rng.sample(range(100), width)
        return {
            "solicits": facet,
            "edges": [
                {"label": f"{facet}-v{value}", "child": build(part, child_idx)}
                for value, part in zip(values, parts)
            ],
        }

    root = build(leaves, 0)
    if "leaf" in root:  # degenerate draw: force a one-edge root node
        root = {"solicits": facets[0], "edges": [{"label": f"{facets[0]}-v0", "child": root}]}
    return {
        "format": "extempore-site/1",
        "id": f"random-{leaves}",
        "title": f"Random site ({leaves} pages)",
        "facets": list(facets),
        "root": root,
    }
