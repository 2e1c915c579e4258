"""Text formats for diagrams (``.mpl``) and mixed braid words (``.mpb``).

Both formats are line based; ``#`` starts a comment and blank lines are
ignored.  Parse errors carry the 1-based line number.

``.mpl`` (mixed pseudo link diagram)::

    mpl 1
    genus <g>
    crossing <id> <pos|neg|pre>
    arc <id> c<cid>.<slot> c<cid>.<slot> [<letters...>]
    loop [<letters...>]

The two ends of an ``arc`` line are its tail and head; letters are the
signed membrane intersections (+j / -j) read from tail to head.  A
``loop`` line records a crossing-free closed component by its letters.

A diagram file may also carry an optional Morse presentation of the same
diagram (one ``morse`` line per event, in top-to-bottom order)::

    morse cup <pos> <l|r>
    morse cap <pos>
    morse cross <pos> <l|r|pre>
    morse pass <pos> <over|under>

The Morse section, when present, must describe exactly the diagram given
by the combinatorial lines (this is checked on parse).  It is what the
braiding algorithm consumes; purely combinatorial files cannot be
braided, since they fix no plane embedding.

``.mpb`` (mixed pseudo braid word)::

    mpb 1
    fixed <g>
    moving <n>
    labels o u ...
    word s3 S1 p2 ...

``s<i>`` is the positive classical generator at positions i, i+1 of the
combined braid, ``S<i>`` its inverse and ``p<i>`` the pre-crossing
generator.  The ``word`` line may be empty (identity word).
"""

from __future__ import annotations

import re

from .braid import Gen, MixedBraidWord, validate_word
from .braiding import Event, MorsePresentation, diagram_from_morse, validate_morse
from .diagram import Arc, Crossing, Diagram, End, FreeLoop, NEG, POS, PRE, validate

__all__ = [
    "FormatError",
    "parse_mpl",
    "parse_mpl_full",
    "render_mpl",
    "parse_mpb",
    "render_mpb",
]


class FormatError(ValueError):
    """Syntax or semantic error in a text file, with its line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _logical_lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line


def _int(tok: str, line: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(line, f"expected an integer {what}, got {tok!r}") from None


_END_RE = re.compile(r"^c(\d+)\.([0-3])$")


def _end(tok: str, line: int) -> End:
    m = _END_RE.match(tok)
    if not m:
        raise FormatError(line, f"expected an end 'c<id>.<slot>', got {tok!r}")
    return End(int(m.group(1)), int(m.group(2)))


_KINDS = {"pos": POS, "neg": NEG, "pre": PRE}


_MORSE_ARGS = {
    "cup": ("l", "r"),
    "cap": (),
    "cross": ("l", "r", "pre"),
    "pass": ("over", "under"),
}


def parse_mpl(text: str) -> Diagram:
    return parse_mpl_full(text)[0]


def parse_mpl_full(text: str) -> tuple[Diagram, MorsePresentation | None]:
    lines = _logical_lines(text)
    try:
        lno, header = next(lines)
    except StopIteration:
        raise FormatError(1, "empty file; expected 'mpl 1' header") from None
    if header.split() != ["mpl", "1"]:
        raise FormatError(lno, f"expected 'mpl 1' header, got {header!r}")

    genus = None
    crossings: list[Crossing] = []
    arcs: list[Arc] = []
    loops: list[FreeLoop] = []
    events: list[Event] = []
    for lno, line in lines:
        toks = line.split()
        key = toks[0]
        if key == "genus":
            if genus is not None:
                raise FormatError(lno, "duplicate 'genus' line")
            if len(toks) != 2:
                raise FormatError(lno, "expected 'genus <g>'")
            genus = _int(toks[1], lno, "genus")
            if genus < 0:
                raise FormatError(lno, "genus must be >= 0")
        elif key == "crossing":
            if len(toks) != 3:
                raise FormatError(lno, "expected 'crossing <id> <pos|neg|pre>'")
            kind = _KINDS.get(toks[2])
            if kind is None:
                raise FormatError(lno, f"unknown crossing kind {toks[2]!r}")
            crossings.append(Crossing(_int(toks[1], lno, "crossing id"), kind))
        elif key == "arc":
            if len(toks) < 4:
                raise FormatError(lno, "expected 'arc <id> <tail> <head> [letters]'")
            word = tuple(_int(t, lno, "letter") for t in toks[4:])
            if any(x == 0 for x in word):
                raise FormatError(lno, "letters must be nonzero")
            arcs.append(
                Arc(_int(toks[1], lno, "arc id"), _end(toks[2], lno), _end(toks[3], lno), word)
            )
        elif key == "loop":
            word = tuple(_int(t, lno, "letter") for t in toks[1:])
            if any(x == 0 for x in word):
                raise FormatError(lno, "letters must be nonzero")
            loops.append(FreeLoop(word))
        elif key == "morse":
            if len(toks) not in (3, 4):
                raise FormatError(lno, "expected 'morse <kind> <pos> [arg]'")
            kind = toks[1]
            if kind not in _MORSE_ARGS:
                raise FormatError(lno, f"unknown morse event kind {kind!r}")
            pos = _int(toks[2], lno, "event position")
            arg = toks[3] if len(toks) == 4 else ""
            allowed = _MORSE_ARGS[kind]
            if allowed and arg not in allowed:
                raise FormatError(lno, f"morse {kind} needs an argument in {allowed}")
            if not allowed and arg:
                raise FormatError(lno, f"morse {kind} takes no argument")
            events.append(Event(kind, pos, arg))
        else:
            raise FormatError(lno, f"unknown directive {key!r}")
    if genus is None:
        raise FormatError(lno if crossings or arcs or loops else 1, "missing 'genus' line")

    d = Diagram(genus, tuple(crossings), tuple(arcs), tuple(loops))
    try:
        validate(d)
    except ValueError as e:
        raise FormatError(0, f"invalid diagram: {e}") from None

    morse = None
    if events:
        morse = MorsePresentation(genus, tuple(events))
        try:
            validate_morse(morse)
        except ValueError as e:
            raise FormatError(0, f"invalid morse section: {e}") from None
        if diagram_from_morse(morse) != d:
            raise FormatError(0, "morse section does not describe the listed diagram")
    return d, morse


def render_mpl(d: Diagram, morse: MorsePresentation | None = None) -> str:
    if morse is not None and (morse.genus != d.genus or diagram_from_morse(morse) != d):
        raise ValueError("morse presentation does not describe the diagram")
    out = ["mpl 1", f"genus {d.genus}"]
    kinds = {POS: "pos", NEG: "neg", PRE: "pre"}
    for c in d.crossings:
        out.append(f"crossing {c.id} {kinds[c.kind]}")
    for a in d.arcs:
        parts = [f"arc {a.id}", f"c{a.tail.crossing}.{a.tail.slot}", f"c{a.head.crossing}.{a.head.slot}"]
        parts.extend(str(x) for x in a.word)
        out.append(" ".join(parts))
    for l in d.loops:
        out.append(" ".join(["loop", *(str(x) for x in l.word)]).rstrip())
    if morse is not None:
        for e in morse.events:
            out.append(f"morse {e.kind} {e.pos} {e.arg}".rstrip())
    return "\n".join(out) + "\n"


_GEN_RE = re.compile(r"^([sSp])(\d+)$")


def parse_mpb(text: str) -> MixedBraidWord:
    lines = _logical_lines(text)
    try:
        lno, header = next(lines)
    except StopIteration:
        raise FormatError(1, "empty file; expected 'mpb 1' header") from None
    if header.split() != ["mpb", "1"]:
        raise FormatError(lno, f"expected 'mpb 1' header, got {header!r}")

    fields: dict[str, tuple[int, list[str]]] = {}
    for lno, line in lines:
        toks = line.split()
        if toks[0] not in ("fixed", "moving", "labels", "word"):
            raise FormatError(lno, f"unknown directive {toks[0]!r}")
        if toks[0] in fields:
            raise FormatError(lno, f"duplicate '{toks[0]}' line")
        fields[toks[0]] = (lno, toks[1:])

    for req in ("fixed", "moving", "labels", "word"):
        if req not in fields:
            raise FormatError(1, f"missing '{req}' line")

    lno, toks = fields["fixed"]
    if len(toks) != 1:
        raise FormatError(lno, "expected 'fixed <g>'")
    genus = _int(toks[0], lno, "fixed-strand count")
    lno, toks = fields["moving"]
    if len(toks) != 1:
        raise FormatError(lno, "expected 'moving <n>'")
    strands = _int(toks[0], lno, "moving-strand count")

    lno, toks = fields["labels"]
    if len(toks) != strands:
        raise FormatError(lno, f"expected {strands} labels, got {len(toks)}")
    for t in toks:
        if t not in ("o", "u"):
            raise FormatError(lno, f"labels must be 'o' or 'u', got {t!r}")
    labels = tuple(toks)

    lno, toks = fields["word"]
    letters = []
    for t in toks:
        m = _GEN_RE.match(t)
        if not m:
            raise FormatError(lno, f"bad generator token {t!r} (expected s<i>, S<i> or p<i>)")
        pos = int(m.group(2))
        k = m.group(1)
        letters.append(Gen("p", pos) if k == "p" else Gen("s", pos, 1 if k == "s" else -1))

    w = MixedBraidWord(genus, strands, tuple(letters), labels)
    try:
        validate_word(w)
    except ValueError as e:
        raise FormatError(lno, f"invalid word: {e}") from None
    return w


def render_mpb(w: MixedBraidWord) -> str:
    toks = []
    for g in w.letters:
        toks.append(f"p{g.pos}" if g.kind == "p" else ("s" if g.sign == 1 else "S") + str(g.pos))
    return (
        f"mpb 1\nfixed {w.genus}\nmoving {w.strands}\n"
        f"labels {' '.join(w.labels)}".rstrip() + "\n"
        f"word {' '.join(toks)}".rstrip() + "\n"
    )
