"""Mixed pseudo link diagrams in a genus-g handlebody.

A diagram is a 4-valent graph whose vertices are crossings (positive,
negative, or *pre*-crossings, which carry no over/under information) and
whose edges are oriented arcs.  The handlebody structure is recorded
combinatorially: the g punctures of the disc (one per handle) span
membranes, and each arc carries the word of signed membrane intersections
met while traversing it from tail to head (letter +j / -j = crossing the
j-th membrane in the positive / negative direction).

Slot convention at a crossing (looking at the crossing, slots counter-
clockwise 0,1,2,3):

* classical crossings: slot 0 is the incoming end of the under-strand,
  slot 2 its outgoing end; the over-strand occupies slots 1,3.  The sign is
  determined by where the over-strand comes in: slot 1 for positive,
  slot 3 for negative.
* pre-crossings: slot 0 is the incoming end of the *designated* strand
  (an arbitrary but fixed choice); the other strand comes in at slot 1 or
  slot 3.

Smoothings reconnect slots:

* A-smoothing joins {0,3} and {1,2}; B-smoothing joins {0,1} and {2,3}.
  For a classical crossing these carry coefficients A and A^-1.
* For a pre-crossing the *oriented* (Seifert) smoothing is the one of the
  two that respects orientations; the other is the disoriented smoothing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import CurveClass, free_reduce

__all__ = [
    "End",
    "Arc",
    "Crossing",
    "FreeLoop",
    "Diagram",
    "POS",
    "NEG",
    "PRE",
    "A_PAIRING",
    "B_PAIRING",
    "THROUGH_PAIRING",
    "smooth",
    "join_through",
    "writhe",
    "validate",
    "validate_structural",
]

POS = "pos"
NEG = "neg"
PRE = "pre"

#: slot pairings of the two planar smoothings and of the "delete the
#: crossing, keep both strands" surgery used by R1/R2 reductions
A_PAIRING = ((0, 3), (1, 2))
B_PAIRING = ((0, 1), (2, 3))
THROUGH_PAIRING = ((0, 2), (1, 3))


@dataclass(frozen=True, order=True)
class End:
    """One of the four arc-ends at a crossing."""

    crossing: int
    slot: int


@dataclass(frozen=True)
class Arc:
    """Oriented arc from tail end to head end, with its membrane word."""

    id: int
    tail: End
    head: End
    word: tuple[int, ...] = ()


@dataclass(frozen=True)
class Crossing:
    id: int
    kind: str  # POS | NEG | PRE


@dataclass(frozen=True)
class FreeLoop:
    """A crossing-free closed component, recorded by its membrane word."""

    word: tuple[int, ...] = ()


@dataclass(frozen=True)
class Diagram:
    genus: int
    crossings: tuple[Crossing, ...] = ()
    arcs: tuple[Arc, ...] = ()
    loops: tuple[FreeLoop, ...] = ()

    def crossing(self, cid: int) -> Crossing:
        for c in self.crossings:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def arc(self, aid: int) -> Arc:
        for a in self.arcs:
            if a.id == aid:
                return a
        raise KeyError(aid)

    def ends(self) -> dict[End, tuple[int, str]]:
        """Map each occupied end to (arc id, 'head'|'tail')."""
        out: dict[End, tuple[int, str]] = {}
        for a in self.arcs:
            for end, role in ((a.tail, "tail"), (a.head, "head")):
                if end in out:
                    raise ValueError(f"end {end} used twice")
                out[end] = (a.id, role)
        return out

    def fresh_arc_id(self) -> int:
        return max((a.id for a in self.arcs), default=-1) + 1

    def fresh_crossing_id(self) -> int:
        return max((c.id for c in self.crossings), default=-1) + 1

    def __str__(self) -> str:
        kinds = "".join(
            {"pos": "+", "neg": "-", "pre": "p"}[c.kind] for c in self.crossings
        )
        return (
            f"Diagram(g={self.genus}, crossings={len(self.crossings)}[{kinds}],"
            f" arcs={len(self.arcs)}, loops={len(self.loops)})"
        )


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def validate_structural(d: Diagram) -> None:
    """Check the 4-valent graph structure, ignoring orientation rules.

    Used for intermediate diagrams produced during smoothing, where the
    disoriented smoothing of a pre-crossing has already destroyed a
    globally consistent orientation.
    """
    if d.genus < 0:
        raise ValueError("genus must be >= 0")
    ids = [c.id for c in d.crossings]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate crossing ids")
    aids = [a.id for a in d.arcs]
    if len(set(aids)) != len(aids):
        raise ValueError("duplicate arc ids")
    seen: set[End] = set()
    for a in d.arcs:
        for end in (a.tail, a.head):
            if end.slot not in (0, 1, 2, 3):
                raise ValueError(f"bad slot {end.slot}")
            if not any(c.id == end.crossing for c in d.crossings):
                raise ValueError(f"arc {a.id} references missing crossing")
            if end in seen:
                raise ValueError(f"end {end} used twice")
            seen.add(end)
        for letter in a.word:
            if letter == 0 or abs(letter) > d.genus:
                raise ValueError(f"arc {a.id}: letter {letter} out of range")
    for c in d.crossings:
        if c.kind not in (POS, NEG, PRE):
            raise ValueError(f"bad crossing kind {c.kind}")
        for slot in range(4):
            if End(c.id, slot) not in seen:
                raise ValueError(f"crossing {c.id} slot {slot} unoccupied")
    for loop in d.loops:
        for letter in loop.word:
            if letter == 0 or abs(letter) > d.genus:
                raise ValueError(f"loop letter {letter} out of range")


def validate(d: Diagram) -> None:
    """Full validation, including the orientation/slot conventions."""
    validate_structural(d)
    ends = d.ends()
    for c in d.crossings:
        roles = {slot: ends[End(c.id, slot)][1] for slot in range(4)}
        # each strand passes through: slots {0,2} one strand, {1,3} the other
        if roles[0] != "head" or roles[2] != "tail":
            raise ValueError(f"crossing {c.id}: slot 0/2 must be in/out")
        if {roles[1], roles[3]} != {"head", "tail"}:
            raise ValueError(f"crossing {c.id}: slots 1,3 must be one in one out")
        if c.kind == POS and roles[1] != "head":
            raise ValueError(f"crossing {c.id}: positive needs over-in at slot 1")
        if c.kind == NEG and roles[3] != "head":
            raise ValueError(f"crossing {c.id}: negative needs over-in at slot 3")


def writhe(d: Diagram) -> int:
    """Sum of classical crossing signs; pre-crossings contribute nothing."""
    return sum(+1 if c.kind == POS else -1 for c in d.crossings if c.kind != PRE)


# ---------------------------------------------------------------------------
# smoothing machinery
# ---------------------------------------------------------------------------

def _reversed_arc(a: Arc) -> Arc:
    return Arc(a.id, tail=a.head, head=a.tail,
               word=tuple(-x for x in reversed(a.word)))


def _join_pair(
    arcs: dict[int, Arc],
    loops: list[FreeLoop],
    end_x: End,
    end_y: End,
    ends: dict[End, tuple[int, str]],
) -> None:
    """Glue the two arc-ends sitting at end_x and end_y into one arc.

    Mutates `arcs`/`loops`/`ends` in place.  Handles head-to-tail gluing
    directly; a head-to-head or tail-to-tail gluing first reverses one of
    the arcs (valid once orientation data is being discarded).  A self-join
    turns the arc into a FreeLoop.
    """
    aid_x, role_x = ends.pop(end_x)
    aid_y, role_y = ends.pop(end_y)
    if aid_x == aid_y:
        loop_arc = arcs.pop(aid_x)
        loops.append(FreeLoop(free_reduce(loop_arc.word)))
        return
    ax, ay = arcs[aid_x], arcs[aid_y]
    if role_x == role_y:
        # reverse arc y so the junction becomes head-to-tail
        ay = _reversed_arc(ay)
        role_y = "tail" if role_y == "head" else "head"
        for end2 in (ay.tail, ay.head):
            if end2 in ends:
                aid2, role2 = ends[end2]
                ends[end2] = (aid2, "tail" if role2 == "head" else "head")
        arcs[aid_y] = ay
    if role_x == "head":
        first, second = ax, ay  # ax.head glued to ay.tail
    else:
        first, second = ay, ax
    merged = Arc(first.id, tail=first.tail, head=second.head,
                 word=first.word + second.word)
    del arcs[second.id]
    arcs[first.id] = merged
    for end2 in (merged.tail, merged.head):
        if end2 in ends:
            ends[end2] = (merged.id, ends[end2][1])


def _resolve(d: Diagram, cid: int, pairing: tuple[tuple[int, int], ...]) -> Diagram:
    """Delete crossing cid, reconnecting its arc-ends along `pairing`."""
    ends = d.ends()
    arcs = {a.id: a for a in d.arcs}
    loops = list(d.loops)
    for sx, sy in pairing:
        _join_pair(arcs, loops, End(cid, sx), End(cid, sy), ends)
    return Diagram(
        genus=d.genus,
        crossings=tuple(c for c in d.crossings if c.id != cid),
        arcs=tuple(sorted(arcs.values(), key=lambda a: a.id)),
        loops=tuple(loops),
    )


def smooth(d: Diagram, cid: int, pairing: tuple[tuple[int, int], ...]) -> Diagram:
    """Replace a crossing by a planar smoothing (A_PAIRING or B_PAIRING)."""
    if pairing not in (A_PAIRING, B_PAIRING):
        raise ValueError("smoothing must be the A or B pairing")
    return _resolve(d, cid, pairing)


def join_through(d: Diagram, cid: int) -> Diagram:
    """Delete a crossing letting both strands pass straight through.

    This is the surgery underlying R1 and R2 reductions: slots 0-2 and 1-3
    are reconnected.
    """
    return _resolve(d, cid, THROUGH_PAIRING)


def seifert_pairing(d: Diagram, cid: int) -> tuple[tuple[int, int], ...]:
    """The orientation-respecting pairing at a crossing.

    With slot 0 an incoming end, the Seifert smoothing connects slot 0 to
    the outgoing end of the *other* strand, i.e. to slot (s + 2) mod 4 where
    s is the other strand's incoming slot.
    """
    ends = d.ends()
    role1 = ends[End(cid, 1)][1]
    other_in = 1 if role1 == "head" else 3
    return A_PAIRING if other_in == 1 else B_PAIRING


# ---------------------------------------------------------------------------
# state curves
# ---------------------------------------------------------------------------

def state_curves(d: Diagram) -> list[CurveClass]:
    """Curve classes of a crossing-free diagram (all crossings resolved)."""
    if d.crossings or d.arcs:
        raise ValueError("diagram still has crossings")
    return [CurveClass.of(loop.word) for loop in d.loops]


# ---------------------------------------------------------------------------
# canonical relabeling (memoization keys)
# ---------------------------------------------------------------------------

def canonical_key(d: Diagram):
    """A hashable key identifying the diagram up to id relabeling.

    Crossings are renumbered in id order; arcs are renumbered by a canonical
    traversal.  Two diagrams that differ only by ids map to the same key,
    which makes bracket memoization collapse repeated sub-diagrams.
    """
    cid_order = sorted(c.id for c in d.crossings)
    cid_map = {cid: i for i, cid in enumerate(cid_order)}
    kinds = tuple(d.crossing(cid).kind for cid in cid_order)
    arc_entries = []
    for a in d.arcs:
        arc_entries.append((
            (cid_map[a.tail.crossing], a.tail.slot),
            (cid_map[a.head.crossing], a.head.slot),
            a.word,
        ))
    arc_entries.sort()
    loop_words = tuple(sorted(CurveClass.of(l.word).word for l in d.loops))
    return (d.genus, kinds, tuple(arc_entries), loop_words)
