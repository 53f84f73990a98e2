"""
Agreement between the operators and the independent oracles in src.testkit.
"""
import random

import pytest

from src.algebra import difference, meet, merge
from src.axioms import is_sub_hypernetwork
from src.core import Hypernetwork
from src.testkit import (
    EXHAUSTIVE_LIMIT,
    GenConfig,
    gen_flat,
    gen_subset,
    gen_valid,
    oracle_set_ops,
    oracle_subhn,
)
from src.utils.config import get_law_settings

pytestmark = pytest.mark.integration

SETTINGS = get_law_settings()
SMALL = GenConfig(max_vertices=3, max_hypersimplices=2, max_arity=2, max_boundaries=2)


def small_model(seed: int) -> Hypernetwork:
    return gen_valid(SMALL.model_copy(update={"seed": seed}))


def flip_one_tag(h: Hypernetwork, seed: int) -> Hypernetwork:
    """Same elements, with one tag removed from or added to one hypersimplex."""
    candidates = [hs for hs in h.hypersimplices() if not hs.is_conflict]
    if not candidates or not h.boundaries:
        return h
    rng = random.Random(seed)
    target = rng.choice(candidates)
    boundary = rng.choice(sorted(h.boundaries))
    tags = target.tags ^ {boundary}
    elements = [target.with_tags(tags) if e.id == target.id else e for e in h]
    return Hypernetwork.from_elements(elements, h.boundaries.values())


def test_flat_operators_match_set_oracle():
    for seed in range(SETTINGS["flat_oracle_examples"]):
        h1, h2 = gen_flat(2 * seed), gen_flat(2 * seed + 1)
        expected = oracle_set_ops(h1, h2)
        assert merge(h1, h2).ids() == expected.union, seed
        assert meet(h1, h2).ids() == expected.intersection, seed
        assert difference(h1, h2).ids() == expected.difference, seed


def test_sub_hypernetwork_matches_exhaustive_oracle():
    verdicts = set()
    for seed in range(SETTINGS["subhn_oracle_examples"]):
        h = small_model(seed)
        kind = seed % 4
        if kind == 0:
            small, big = gen_subset(h, seed), h
        elif kind == 1:
            small, big = h, gen_subset(h, seed)
        elif kind == 2:
            small, big = gen_subset(h, seed), flip_one_tag(h, seed)
        else:
            small, big = small_model(seed + 7919), h
        assert len(small) <= EXHAUSTIVE_LIMIT and len(big) <= EXHAUSTIVE_LIMIT
        verdict = is_sub_hypernetwork(small, big)
        assert verdict == oracle_subhn(small, big), seed
        verdicts.add(verdict)
    assert verdicts == {True, False}


def test_tag_flip_changes_both_verdicts():
    flipped = 0
    for seed in range(100):
        h = small_model(seed)
        perturbed = flip_one_tag(h, seed)
        if perturbed is h:
            continue
        assert not is_sub_hypernetwork(h, perturbed)
        assert not oracle_subhn(h, perturbed)
        flipped += 1
    assert flipped > 0
