"""Mixed pseudo braid words: validation, closure, relations, Markov moves."""

import random

import pytest

from pseudolinks.algebra import CurveClass, curve_var
from pseudolinks.braid import (
    Gen,
    MixedBraidWord,
    close,
    commute,
    conjugate,
    l_move,
    loop_around_handle,
    p,
    pseudo_stabilize,
    random_word,
    relation_instances,
    s,
    stabilize,
    validate_word,
)
from pseudolinks.checks import label_witness
from pseudolinks.skein import normalized_invariant


def _perm(w: MixedBraidWord) -> tuple[int, ...]:
    roster = list(range(w.total))
    for g in w.letters:
        roster[g.pos - 1], roster[g.pos] = roster[g.pos], roster[g.pos - 1]
    return tuple(roster)


def test_generator_validation():
    with pytest.raises(ValueError):
        Gen("q", 1)
    with pytest.raises(ValueError):
        Gen("p", 1, -1)
    with pytest.raises(ValueError):
        p(1).inverse()
    assert s(2, -1).inverse() == s(2)


def test_word_validation_rejects_fixed_crossings():
    # two fixed strands may never cross each other
    with pytest.raises(ValueError):
        validate_word(MixedBraidWord(2, 1, (s(1),), ("o",)))
    # a pre-crossing may not straddle a fixed strand
    with pytest.raises(ValueError):
        validate_word(MixedBraidWord(1, 2, (p(1),), ("o", "o")))


def test_identity_closures():
    assert normalized_invariant(close(MixedBraidWord(0, 1))) == 1
    for label in ("o", "u"):
        assert normalized_invariant(close(MixedBraidWord(1, 1, (), (label,)))) == 1


def test_loop_generator_closure():
    for g in (1, 2, 3):
        for j in range(1, g + 1):
            w = loop_around_handle(g, j)
            v = normalized_invariant(close(w))
            assert v == curve_var(CurveClass.of((j,))), (g, j, v)


def test_relations_fix_permutation():
    for g, n in ((0, 2), (0, 3), (0, 4), (1, 2), (1, 3)):
        for name, left, right in relation_instances(g, n):
            wl = MixedBraidWord(g, n, tuple(left))
            wr = MixedBraidWord(g, n, tuple(right))
            assert _perm(wl) == _perm(wr), name
            validate_word(wl)
            validate_word(wr)


@pytest.mark.parametrize("seed", range(30))
def test_random_word_valid_and_reproducible(seed):
    rng = random.Random(seed)
    w = random_word(seed % 3, 1 + seed % 3, seed % 8, rng)
    validate_word(w)
    assert w == random_word(seed % 3, 1 + seed % 3, seed % 8, random.Random(seed))


def test_markov_moves_examples():
    w = MixedBraidWord(0, 2, (s(1), s(1)), ("o", "o"))
    v = normalized_invariant(close(w))
    assert normalized_invariant(close(conjugate(w, s(1)))) == v
    assert normalized_invariant(close(stabilize(w, 1))) == v
    assert normalized_invariant(close(stabilize(w, -1))) == v
    assert normalized_invariant(close(pseudo_stabilize(w))) == v
    for flavor in ("o", "u"):
        assert normalized_invariant(close(l_move(w, 1, 1, flavor))) == v
    assert normalized_invariant(close(commute(w, 1))) == v


def test_stabilization_changes_strand_count_only():
    w = MixedBraidWord(1, 2, (s(2),), ("o", "u"))
    w2 = stabilize(w, 1, "u")
    assert w2.strands == 3
    assert w2.labels == ("o", "u", "u")
    assert w2.letters == w.letters + (s(3),)


def test_label_sensitivity_witness():
    w1, w2 = label_witness()
    assert w1.letters == w2.letters
    assert normalized_invariant(close(w1)) != normalized_invariant(close(w2))
