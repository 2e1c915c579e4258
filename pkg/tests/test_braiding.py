"""Morse presentations and the braiding (diagram -> braid) algorithm."""

import random

import pytest

from pseudolinks.braid import MixedBraidWord, close, random_word, s
from pseudolinks.braiding import (
    Event,
    MorsePresentation,
    braid_from_diagram,
    diagram_from_morse,
    morse_from_braid_closure,
    random_morse,
    rotate_pre_crossings,
    validate_morse,
)
from pseudolinks.diagram import FreeLoop, canonical_key, validate
from pseudolinks.skein import bracket, normalized_invariant


def test_round_unknot():
    m = MorsePresentation(0, (Event("cup", 0, "l"), Event("cap", 0)))
    validate_morse(m)
    d = diagram_from_morse(m)
    assert not d.crossings
    assert d.loops == (FreeLoop(()),)


def test_loop_around_puncture():
    # a meridian: one pass behind the membrane, one in front
    m = MorsePresentation(1, (
        Event("cup", 1, "l"),
        Event("pass", 0, "under"),
        Event("pass", 0, "over"),
        Event("cap", 1),
    ))
    d = diagram_from_morse(m)
    assert d.loops and d.loops[0].word in ((1,), (-1,))


def test_both_under_excursion_is_trivial():
    # passing behind the fixed strand and straight back is a null loop
    m = MorsePresentation(1, (
        Event("cup", 1, "l"),
        Event("pass", 0, "under"),
        Event("pass", 0, "under"),
        Event("cap", 1),
    ))
    d = diagram_from_morse(m)
    assert d.loops == (FreeLoop(()),)


def test_invalid_morse_rejected():
    # unbalanced events
    with pytest.raises(ValueError):
        validate_morse(MorsePresentation(0, (Event("cup", 0, "l"),)))
    # cap of two same-direction strands
    with pytest.raises(ValueError):
        validate_morse(MorsePresentation(0, (
            Event("cup", 0, "l"), Event("cup", 1, "l"),
            Event("cap", 2), Event("cap", 0))))


@pytest.mark.parametrize("seed", range(25))
def test_random_morse_valid(seed):
    m = random_morse(seed % 4, 1 + seed % 6, seed)
    validate_morse(m)
    validate(diagram_from_morse(m))
    assert m == random_morse(seed % 4, 1 + seed % 6, seed)


@pytest.mark.parametrize("seed", range(30))
def test_closure_pipelines_agree(seed):
    rng = random.Random(seed)
    w = random_word(seed % 3, 1 + seed % 3, seed % 7, rng)
    d1 = close(w)
    d2 = diagram_from_morse(morse_from_braid_closure(w))
    # same crossings; letters may sit at different points along an arc
    # passing the fixed part, so compare invariants rather than keys
    assert sorted(c.kind for c in d1.crossings) == sorted(c.kind for c in d2.crossings)
    assert normalized_invariant(d1) == normalized_invariant(d2)


@pytest.mark.parametrize("seed", range(25))
def test_pre_rotation_preserves_bracket(seed):
    m = random_morse(seed % 3, 2 + seed % 5, 0xAB + seed)
    m2 = rotate_pre_crossings(m)
    validate_morse(m2)
    assert bracket(diagram_from_morse(m)) == bracket(diagram_from_morse(m2))


@pytest.mark.parametrize("seed", range(40))
def test_braiding_braided_input_is_stable(seed):
    rng = random.Random(seed)
    w = random_word(seed % 3, 1 + seed % 3, seed % 8, rng)
    w2 = braid_from_diagram(morse_from_braid_closure(w))
    # letters survive unchanged; crossing-free closure lanes fall back to
    # the deterministic default label
    assert w2.letters == w.letters
    assert close(w2) == close(w)
    assert braid_from_diagram(morse_from_braid_closure(w2)) == w2


def test_braiding_round_unknot():
    m = MorsePresentation(0, (Event("cup", 0, "l"), Event("cap", 0)))
    w = braid_from_diagram(m)
    assert w.strands == 1 and not w.letters
    assert normalized_invariant(close(w)) == 1


def _invariant_preserving_seeds():
    # seeds whose braiding output closes small enough to verify exactly
    out = []
    for seed in range(200):
        if len(out) >= 30:
            break
        g = seed % 4
        m = random_morse(g, 1 + seed % 5, 5000 + seed)
        d = diagram_from_morse(m)
        if len(d.crossings) > 8:
            continue
        out.append((seed, g, m, d))
    return out


@pytest.mark.parametrize("idx", range(30))
def test_braiding_preserves_invariant(idx):
    cases = _invariant_preserving_seeds()
    seed, g, m, d = cases[idx]
    w = braid_from_diagram(m)
    assert w.genus == g
    dc = close(w)
    if len(dc.crossings) > 15:
        pytest.skip("braided closure too large for exact verification")
    v1, v2 = normalized_invariant(d), normalized_invariant(dc)
    if v1 != v2:
        # Braiding routes rerouted arcs through membrane letter pairs; a
        # crossing landing between such a pair can split it onto two
        # state loops, where the state sum is genuinely not invariant
        # (multi-winding curve classes).  That gap is intrinsic to the
        # letter formalism and documented; anything else is a real bug.
        multi = [cls for v in (v1, v2) for cls in v.curve_classes()
                 if len({abs(x) for x in cls.word}) < len(cls.word)]
        assert g >= 2 and multi, (seed, v1, v2)


def test_braiding_termination_guard():
    m = random_morse(2, 6, 99)
    with pytest.raises(RuntimeError):
        braid_from_diagram(m, budget=0)
