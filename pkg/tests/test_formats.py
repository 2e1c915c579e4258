"""Text format round-trips and error reporting."""

import random

import pytest

from pseudolinks.braid import MixedBraidWord, random_word
from pseudolinks.braiding import diagram_from_morse, morse_from_braid_closure, random_morse
from pseudolinks.formats import (
    FormatError,
    parse_mpb,
    parse_mpl,
    parse_mpl_full,
    render_mpb,
    render_mpl,
)


@pytest.mark.parametrize("seed", range(25))
def test_mpl_round_trip(seed):
    m = random_morse(seed % 4, 1 + seed % 5, 0x11 + seed)
    d = diagram_from_morse(m)
    assert parse_mpl_full(render_mpl(d, m)) == (d, m)
    assert parse_mpl(render_mpl(d)) == d


@pytest.mark.parametrize("seed", range(25))
def test_mpb_round_trip(seed):
    rng = random.Random(seed)
    w = random_word(seed % 3, 1 + seed % 3, seed % 8, rng)
    assert parse_mpb(render_mpb(w)) == w


def test_mpb_empty_word():
    w = MixedBraidWord(0, 1)
    text = render_mpb(w)
    assert "word" in text
    assert parse_mpb(text) == w


def test_comments_and_blank_lines_ignored():
    text = "# heading\nmpl 1\n\ngenus 0  # trailing\n\nloop\n"
    d = parse_mpl(text)
    assert d.genus == 0 and len(d.loops) == 1


@pytest.mark.parametrize("text,line", [
    ("", 1),
    ("mpl 2\ngenus 0\n", 1),
    ("mpl 1\ngenus x\n", 2),
    ("mpl 1\ngenus 0\nbogus\n", 3),
    ("mpl 1\ngenus 0\narc 0 c0.9 c0.0\n", 3),
    ("mpl 1\ngenus 1\nmorse cup 0 x\n", 3),
])
def test_mpl_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as exc:
        parse_mpl(text)
    assert exc.value.line == line


@pytest.mark.parametrize("text,line", [
    ("mpb 2\n", 1),
    ("mpb 1\nfixed 0\nmoving 1\nlabels o\nword q1\n", 5),
    ("mpb 1\nfixed 0\nmoving 2\nlabels o\nword\n", 4),
    ("mpb 1\nfixed 0\nmoving 1\nlabels z\nword\n", 4),
])
def test_mpb_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as exc:
        parse_mpb(text)
    assert exc.value.line == line


def test_mpb_semantic_validation():
    # fixed strands crossing each other is rejected at parse time
    with pytest.raises(FormatError):
        parse_mpb("mpb 1\nfixed 2\nmoving 1\nlabels o\nword s1\n")


def test_morse_section_must_match_diagram():
    w = MixedBraidWord(0, 1)
    m = morse_from_braid_closure(w)
    d = diagram_from_morse(m)
    good = render_mpl(d, m)
    bad = good.replace("genus 0", "genus 1").replace("loop\n", "loop 1\n")
    with pytest.raises(FormatError):
        parse_mpl_full(bad)
