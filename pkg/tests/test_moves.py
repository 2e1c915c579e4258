"""Diagram rewriting moves preserve the normalized invariant."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from pseudolinks.algebra import A
from pseudolinks.braid import close, random_word
from pseudolinks.braiding import diagram_from_morse, random_morse
from pseudolinks.diagram import NEG, POS, validate
from pseudolinks.moves import (
    MOVE_KINDS,
    apply_move,
    enumerate_sites,
    random_move_walk,
)
from pseudolinks.skein import bracket, normalized_invariant


def _rand_diagram(seed, max_crossings=7):
    for attempt in range(60):
        sub = seed * 60 + attempt
        m = random_morse(sub % 4, 1 + sub % 5, 0xFACE + sub)
        d = diagram_from_morse(m)
        if len(d.crossings) <= max_crossings:
            return d
    raise RuntimeError("sampler failed")


def _diagrams_with_sites(kind, want):
    """Seeded diagrams that admit the move, with one chosen site each."""
    out = []
    for seed in range(4000):
        m = random_morse(seed % 4, 2 + seed % 7, 0xFACE + seed)
        d = diagram_from_morse(m)
        if len(d.crossings) > 9:
            continue
        sites = enumerate_sites(d, kind)
        if sites:
            out.append((d, random.Random(seed).choice(sites)))
            if len(out) >= want:
                break
    return out


def test_move_kind_catalogue():
    assert set(MOVE_KINDS) == {
        "R1", "R2", "R3", "PR1", "PR2", "PR3",
        "MR2_over", "MR2_under", "MR3", "MPR3",
    }


@pytest.mark.parametrize("kind", MOVE_KINDS)
def test_single_moves_preserve_invariant(kind):
    pairs = _diagrams_with_sites(kind, want=6)
    assert pairs, f"no applicable site ever found for {kind}"
    for d, site in pairs:
        d2 = apply_move(d, site)
        validate(d2)
        assert normalized_invariant(d2) == normalized_invariant(d), (kind, site)


def test_r1_insert_scales_raw_bracket():
    done = 0
    for seed in range(100):
        if done >= 10:
            break
        d = _rand_diagram(seed, max_crossings=5)
        sites = [s for s in enumerate_sites(d, "R1") if s.direction == "insert"]
        if not sites:
            continue
        site = random.Random(seed).choice(sites)
        factor = -A(3) if site.args[2] == POS else -A(-3)
        assert bracket(apply_move(d, site)) == factor * bracket(d)
        done += 1
    assert done == 10


@given(st.integers(min_value=0, max_value=10_000),
       st.integers(min_value=0, max_value=10_000))
@settings(max_examples=30, deadline=None)
def test_random_walks_preserve_invariant(seed, walk_seed):
    d = _rand_diagram(seed % 300, max_crossings=6)
    d2 = random_move_walk(d, 8, walk_seed)
    validate(d2)
    assert normalized_invariant(d2) == normalized_invariant(d)


def test_walk_is_reproducible():
    d = _rand_diagram(7)
    assert random_move_walk(d, 10, 42) == random_move_walk(d, 10, 42)


def test_remove_then_insert_sites_are_inverse_on_r2():
    # an R2 insertion must create a diagram where removal restores equality
    for seed in range(50):
        d = _rand_diagram(seed, max_crossings=4)
        sites = [s for s in enumerate_sites(d, "R2") if s.direction == "insert"]
        if not sites:
            continue
        d2 = apply_move(d, sites[0])
        assert len(d2.crossings) == len(d.crossings) + 2
        assert normalized_invariant(d2) == normalized_invariant(d)
        return
    pytest.skip("no R2 insert site in sample")
