"""Morse presentations and the braiding algorithm.

A Morse presentation slices a mixed pseudo diagram into horizontal levels
read top to bottom, one event per level:

* ``cup``  -- a local maximum; births two adjacent moving columns.
* ``cap``  -- a local minimum; joins two adjacent moving columns.
* ``cross`` -- two adjacent moving columns cross (over-left / over-right /
  pre).
* ``pass`` -- a moving column crosses a fixed column in front of it
  (``over``) or behind it (``under``; this emits a membrane letter).

Fixed columns are ordinary roster occupants: g of them enter at the top,
leave at the bottom, and never cross each other.  Moving strands are
closed curves (born at cups, killed at caps).

``braid_from_diagram`` implements the braiding algorithm: rotate
pre-crossings until both of their strands point downward, split every
maximal upward arc into pieces whose crossings have a single type, then
eliminate each piece with one L-move, pulling the cut ends entirely over
(``o``) or entirely under (``u``) the rest of the diagram to a fresh pair
of braid endpoints on the far right.  The result is a mixed pseudo braid
word whose labeled closure represents the original diagram.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace

from .algebra import free_reduce
from .braid import Gen, MixedBraidWord, validate_word
from .diagram import (
    NEG,
    POS,
    PRE,
    Arc,
    Crossing,
    Diagram,
    End,
    FreeLoop,
    validate,
)

__all__ = [
    "Event",
    "MorsePresentation",
    "validate_morse",
    "diagram_from_morse",
    "morse_from_braid_closure",
    "rotate_pre_crossings",
    "braid_from_diagram",
    "random_morse",
]


@dataclass(frozen=True)
class Event:
    """One Morse level.

    kind: "cup" | "cap" | "cross" | "pass"; pos: leftmost roster index
    involved; arg: cup -> which leg points up ('l'/'r'); cross -> 'l'/'r'
    (over strand) or 'pre'; pass -> 'over'/'under' (the moving strand's
    passage).
    """

    kind: str
    pos: int
    arg: str = ""


@dataclass(frozen=True)
class MorsePresentation:
    genus: int
    events: tuple[Event, ...]


# ---------------------------------------------------------------------------
# simulation
# ---------------------------------------------------------------------------

@dataclass
class _Strand:
    id: int
    fixed: int | None  # 1-based fixed index, or None for moving
    dir: str = "d"     # 'd' flows down, 'u' flows up


@dataclass
class _LogEntry:
    """One event together with the strand ids and directions it saw."""

    event: Event
    index: int                 # position in the event list
    ids: tuple[int, ...]       # left-to-right strand ids involved
    dirs: tuple[str, ...]      # their directions at the time
    fixed: tuple[int | None, ...]


def _simulate(genus: int, events: tuple[Event, ...],
              opens: int = 0) -> list[_LogEntry]:
    """Validate the event list and return the per-event strand log.

    ``opens`` extra moving columns (flowing down) are placed right of the
    fixed block at the top: they are the open braid strands created by
    L-moves during braiding.  A closed presentation has opens = 0.
    """
    roster: list[_Strand] = [_Strand(j, j + 1) for j in range(genus)]
    next_id = genus
    for _ in range(opens):
        roster.append(_Strand(next_id, None, "d"))
        next_id += 1
    log: list[_LogEntry] = []
    for idx, ev in enumerate(events):
        p = ev.pos
        if ev.kind == "cup":
            if not 0 <= p <= len(roster):
                raise ValueError(f"event {idx}: cup position out of range")
            if ev.arg not in ("l", "r"):
                raise ValueError(f"event {idx}: bad cup arg {ev.arg!r}")
            dl, dr = ("u", "d") if ev.arg == "l" else ("d", "u")
            a, b = _Strand(next_id, None, dl), _Strand(next_id + 1, None, dr)
            next_id += 2
            roster[p:p] = [a, b]
            log.append(_LogEntry(ev, idx, (a.id, b.id), (dl, dr), (None, None)))
            continue
        if not 0 <= p < len(roster) - 1:
            raise ValueError(f"event {idx}: position {p} out of range")
        a, b = roster[p], roster[p + 1]
        entry = _LogEntry(ev, idx, (a.id, b.id), (a.dir, b.dir),
                          (a.fixed, b.fixed))
        if ev.kind == "cap":
            if a.fixed is not None or b.fixed is not None:
                raise ValueError(f"event {idx}: cap on a fixed column")
            if {a.dir, b.dir} != {"d", "u"}:
                raise ValueError(f"event {idx}: cap needs opposite directions")
            del roster[p:p + 2]
        elif ev.kind == "cross":
            if a.fixed is not None or b.fixed is not None:
                raise ValueError(f"event {idx}: cross involves a fixed column")
            if ev.arg not in ("l", "r", "pre"):
                raise ValueError(f"event {idx}: bad cross arg {ev.arg!r}")
            roster[p], roster[p + 1] = b, a
        elif ev.kind == "pass":
            if (a.fixed is None) == (b.fixed is None):
                raise ValueError(
                    f"event {idx}: pass needs one fixed, one moving column")
            if ev.arg not in ("over", "under"):
                raise ValueError(f"event {idx}: bad pass arg {ev.arg!r}")
            roster[p], roster[p + 1] = b, a
        else:
            raise ValueError(f"event {idx}: unknown kind {ev.kind!r}")
        log.append(entry)
    movers = [s for s in roster if s.fixed is None]
    if len(movers) != opens:
        raise ValueError("moving strands left open at the bottom")
    fixed_order = [s.fixed for s in roster if s.fixed is not None]
    if fixed_order != list(range(1, genus + 1)):
        raise ValueError("fixed strands do not exit in order")
    if opens and any(s.fixed is not None for s in roster[genus:]):
        raise ValueError("open strands must exit right of the fixed block")
    return log


def validate_morse(m: MorsePresentation) -> None:
    """Raise if the presentation is not a valid closed-curve slicing."""
    _simulate(m.genus, m.events)


# ---------------------------------------------------------------------------
# Morse -> diagram
# ---------------------------------------------------------------------------

#: geometric corners of a crossing in counterclockwise order
_CCW = ("NE", "NW", "SW", "SE")


def _cross_slots(over: str, dl: str, dr: str) -> dict[str, int]:
    """Slot index per geometric corner for a crossing of two downward
    columns read left/right with directions dl, dr.

    The left column's segment runs NW-SE, the right column's NE-SW.  For
    classical crossings slot 0 is the under-strand's incoming corner; for
    pre-crossings the NW-SE segment is the designated strand.
    """
    if over == "pre":
        seg = ("NW", "SE")          # designated segment
        seg_dir = dl
    else:
        seg = ("NE", "SW") if over == "l" else ("NW", "SE")
        seg_dir = dr if over == "l" else dl
    start = seg[0] if seg_dir == "d" else seg[1]
    base = _CCW.index(start)
    return {c: (_CCW.index(c) - base) % 4 for c in _CCW}


def _cross_kind(over: str, slots: dict[str, int], dl: str, dr: str) -> str:
    if over == "pre":
        return PRE
    over_seg = ("NW", "SE") if over == "l" else ("NE", "SW")
    over_dir = dl if over == "l" else dr
    over_in = over_seg[0] if over_dir == "d" else over_seg[1]
    return POS if slots[over_in] == 1 else NEG


def diagram_from_morse(m: MorsePresentation) -> Diagram:
    """Assemble the mixed pseudo diagram a Morse presentation describes."""
    log = _simulate(m.genus, m.events)
    crossings: list[Crossing] = []
    edges: list[dict] = []
    # per live moving strand id: the growing edge
    open_edges: dict[int, dict] = {}

    def open_edge(sid: int, port, direction: str) -> None:
        open_edges[sid] = {"top": port, "bot": None,
                           "letters": [], "dir": direction}

    def close_edge(sid: int, port) -> None:
        e = open_edges.pop(sid)
        e["bot"] = port
        edges.append(e)

    turn = 0
    for entry in log:
        ev = entry.event
        if ev.kind == "cup":
            open_edge(entry.ids[0], ("T", turn, "l"), entry.dirs[0])
            open_edge(entry.ids[1], ("T", turn, "r"), entry.dirs[1])
            turn += 1
        elif ev.kind == "cap":
            close_edge(entry.ids[0], ("T", turn, "l"))
            close_edge(entry.ids[1], ("T", turn, "r"))
            turn += 1
        elif ev.kind == "cross":
            cid = len(crossings)
            dl, dr = entry.dirs
            slots = _cross_slots(ev.arg, dl, dr)
            crossings.append(Crossing(cid, _cross_kind(ev.arg, slots, dl, dr)))
            close_edge(entry.ids[0], ("X", cid, slots["NW"]))
            close_edge(entry.ids[1], ("X", cid, slots["NE"]))
            open_edge(entry.ids[0], ("X", cid, slots["SE"]), dl)
            open_edge(entry.ids[1], ("X", cid, slots["SW"]), dr)
        else:  # pass
            if ev.arg == "under":
                mover = 0 if entry.fixed[0] is None else 1
                j = entry.fixed[1 - mover]
                # membrane rule: positive when the moving strand crosses
                # the fixed one left-to-right (in page coordinates)
                letter = j if mover == 0 else -j
                open_edges[entry.ids[mover]]["letters"].append(letter)

    if open_edges:
        raise ValueError("simulation left dangling edges")

    # trace arcs: follow the flow from each crossing-end that emits it
    at_port: dict[tuple, dict] = {}
    for e in edges:
        at_port[e["top"]] = e
        at_port[e["bot"]] = e

    def edge_word(e: dict, downward: bool) -> list[int]:
        if downward:
            return list(e["letters"])
        return [-x for x in reversed(e["letters"])]

    def walk(e: dict, from_top: bool):
        """Follow the flow through turns; return (end port, word, edges)."""
        word: list[int] = []
        seen: list[int] = []
        while True:
            seen.append(id(e))
            word += edge_word(e, from_top)
            port = e["bot"] if from_top else e["top"]
            if port[0] == "X":
                return port, word, seen
            other = (port[0], port[1], "r" if port[2] == "l" else "l")
            nxt = at_port[other]
            if id(nxt) in seen:
                return None, word, seen  # a closed curve with no crossings
            e, from_top = nxt, other == nxt["top"]

    arcs: list[Arc] = []
    used: set[int] = set()
    aid = 0
    for e in sorted(edges, key=lambda e: (e["top"], e["bot"])):
        if id(e) in used:
            continue
        # an edge is traversed tail-to-head when entered per its flow:
        # 'd' edges from the top, 'u' edges from the bottom
        start_port = e["top"] if e["dir"] == "d" else e["bot"]
        if start_port[0] == "X":
            tail = End(start_port[1], start_port[2])
            head_port, word, seen = walk(e, from_top=e["dir"] == "d")
            used.update(seen)
            arcs.append(Arc(aid, tail, End(head_port[1], head_port[2]),
                            tuple(word)))
            aid += 1
    loops: list[FreeLoop] = []
    for e in edges:
        if id(e) in used:
            continue
        _end, word, seen = walk(e, from_top=e["dir"] == "d")
        used.update(seen)
        loops.append(FreeLoop(free_reduce(word)))

    d = Diagram(genus=m.genus, crossings=tuple(crossings),
                arcs=tuple(arcs), loops=tuple(loops))
    validate(d)
    return d


# ---------------------------------------------------------------------------
# braid closure -> Morse
# ---------------------------------------------------------------------------

def _roster_index(genus: int, col: int) -> int:
    """Roster index of braid column ``col`` once closure lanes are
    interleaved (the lane of moving column c sits just right of it)."""
    if col <= genus:
        return col - 1
    return genus + 2 * (col - genus) - 2


def _letter_event(pos: int, fixed_left: bool, fixed_right: bool,
                  kind: str, sign: int) -> Event:
    if kind == "p":
        if fixed_left or fixed_right:
            raise ValueError("pre-crossing letter on a fixed strand")
        return Event("cross", pos, "pre")
    if fixed_left or fixed_right:
        over_left = sign > 0
        moving_under = (fixed_left and over_left) or (fixed_right
                                                      and not over_left)
        return Event("pass", pos, "under" if moving_under else "over")
    return Event("cross", pos, "l" if sign > 0 else "r")


def morse_from_braid_closure(b: MixedBraidWord) -> MorsePresentation:
    """Morse presentation of the labeled closure of a mixed braid word.

    The closure arc of moving column c ascends immediately to the right
    of the column, passing over everything it meets when its label is
    ``o`` and under everything when it is ``u``.
    """
    validate_word(b)
    g, n = b.genus, b.strands
    events: list[Event] = []
    for k in range(n):
        events.append(Event("cup", g + 2 * k, "r"))
    # cols[j] = fixed index occupying braid column j+1, or None if moving
    cols: list[int | None] = [j + 1 for j in range(g)] + [None] * n
    for gen in b.letters:
        i = gen.pos
        a, c = cols[i - 1], cols[i]
        if i <= g:
            events.append(_letter_event(i - 1, a is not None,
                                        c is not None, gen.kind, gen.sign))
        else:
            lab = b.labels[i - g - 1]
            lane_pos = _roster_index(g, i) + 1
            # the strand of column i crosses the lane rightward
            if a is not None:
                events.append(Event("pass", lane_pos - 1,
                                    "over" if lab == "o" else "under"))
            else:
                events.append(Event("cross", lane_pos - 1,
                                    "r" if lab == "o" else "l"))
            events.append(_letter_event(lane_pos, a is not None,
                                        c is not None, gen.kind, gen.sign))
            # the strand headed for column i crosses the lane leftward
            if c is not None:
                events.append(Event("pass", lane_pos - 1,
                                    "over" if lab == "o" else "under"))
            else:
                events.append(Event("cross", lane_pos - 1,
                                    "l" if lab == "o" else "r"))
        cols[i - 1], cols[i] = cols[i], cols[i - 1]
    for _ in range(n):
        events.append(Event("cap", g))
    m = MorsePresentation(g, tuple(events))
    validate_morse(m)
    return m


# ---------------------------------------------------------------------------
# rotating pre-crossings
# ---------------------------------------------------------------------------

def rotate_pre_crossings(m: MorsePresentation) -> MorsePresentation:
    """Replace every pre-crossing event between strands that are not both
    downward with an isotopic gadget of cups and caps around a downward
    pre-crossing.  The underlying diagram is unchanged."""
    events = list(m.events)
    while True:
        log = _simulate(m.genus, tuple(events))
        target = None
        for entry in log:
            if (entry.event.kind == "cross" and entry.event.arg == "pre"
                    and entry.dirs != ("d", "d")):
                target = entry
                break
        if target is None:
            break
        i = target.event.pos
        if target.dirs == ("u", "d"):
            gadget = [Event("cup", i + 2, "r"), Event("cross", i + 1, "pre"),
                      Event("cap", i)]
        elif target.dirs == ("d", "u"):
            gadget = [Event("cup", i, "l"), Event("cross", i + 1, "pre"),
                      Event("cap", i + 2)]
        else:  # both upward
            gadget = [Event("cup", i, "l"), Event("cup", i + 1, "l"),
                      Event("cross", i + 2, "pre"), Event("cap", i + 3),
                      Event("cap", i + 2)]
        events[target.index:target.index + 1] = gadget
    return MorsePresentation(m.genus, tuple(events))


# ---------------------------------------------------------------------------
# random presentations
# ---------------------------------------------------------------------------

def random_morse(genus: int, size: int, seed: int,
                 pre_prob: float = 0.2) -> MorsePresentation:
    """A random valid closed Morse presentation with roughly ``size``
    crossing events (a few more may be needed to close every curve)."""
    rng = random.Random(seed)
    roster: list[tuple[str, str]] = [("f", "")] * genus
    events: list[Event] = []
    ncross = 0

    def movers() -> list[int]:
        return [i for i, s in enumerate(roster) if s[0] == "m"]

    def do_cup() -> None:
        p = rng.randrange(len(roster) + 1)
        arg = rng.choice("lr")
        dl, dr = ("u", "d") if arg == "l" else ("d", "u")
        events.append(Event("cup", p, arg))
        roster[p:p] = [("m", dl), ("m", dr)]

    def do_swap(p: int, arg_pool=None) -> None:
        nonlocal ncross
        a, b = roster[p], roster[p + 1]
        if a[0] == "f" and b[0] == "f":
            raise AssertionError
        if a[0] == "f" or b[0] == "f":
            events.append(Event("pass", p, rng.choice(("over", "under"))))
        else:
            args = ["l", "r"]
            if rng.random() < pre_prob:
                args = ["pre"]
            events.append(Event("cross", p, rng.choice(args)))
        roster[p], roster[p + 1] = b, a
        ncross += 1

    max_movers = max(2, min(6, size))
    do_cup()
    while True:
        ms = movers()
        grow = ncross < size
        choices = []
        if grow:
            if len(ms) < max_movers:
                choices += ["cup"] * 2
            swappable = [p for p in range(len(roster) - 1)
                         if not (roster[p][0] == "f"
                                 and roster[p + 1][0] == "f")]
            choices += ["swap"] * (5 if swappable else 0)
        cappable = [p for p in range(len(roster) - 1)
                    if roster[p][0] == "m" and roster[p + 1][0] == "m"
                    and roster[p][1] != roster[p + 1][1]]
        if cappable and (not grow or rng.random() < 0.3):
            choices += ["cap"] * (1 if grow else 8)
        if not grow and not cappable:
            if not ms:
                break
            # close the gap of the nearest opposite-direction mover pair
            best = None
            for x in ms:
                for y in ms:
                    if x < y and roster[x][1] != roster[y][1]:
                        if best is None or y - x < best[1] - best[0]:
                            best = (x, y)
            do_swap(best[1] - 1)
            continue
        if not choices:
            if not ms:
                break
            do_cup()
            continue
        what = rng.choice(choices)
        if what == "cup":
            do_cup()
        elif what == "swap":
            do_swap(rng.choice(swappable))
        else:
            p = rng.choice(cappable)
            events.append(Event("cap", p))
            del roster[p:p + 2]
    m = MorsePresentation(genus, tuple(events))
    validate_morse(m)
    return m


# ---------------------------------------------------------------------------
# braiding: up-arc elimination by L-moves
# ---------------------------------------------------------------------------

def _sim_snapshots(genus: int, events: tuple[Event, ...], opens: int):
    """Like _simulate but also return roster id snapshots.

    snaps[k] is the tuple of strand ids before event k (so snaps[0] is the
    initial roster and snaps[len(events)] the final one).
    """
    log = _simulate(genus, events, opens)
    roster = list(range(genus + opens))
    next_id = genus + opens
    snaps = [tuple(roster)]
    for entry in log:
        ev = entry.event
        if ev.kind == "cup":
            roster[ev.pos:ev.pos] = [next_id, next_id + 1]
            next_id += 2
        elif ev.kind == "cap":
            del roster[ev.pos:ev.pos + 2]
        else:
            p = ev.pos
            roster[p], roster[p + 1] = roster[p + 1], roster[p]
        snaps.append(tuple(roster))
    return log, snaps


def _up_arcs(genus: int, events: tuple[Event, ...], opens: int):
    """Upward strand pieces, each a dict with its birth cup, death cap and
    crossing participations, ordered by birth event."""
    log = _simulate(genus, events, opens)
    arcs: dict[int, dict] = {}
    for entry in log:
        ev = entry.event
        if ev.kind == "cup":
            side = 0 if entry.dirs[0] == "u" else 1
            arcs[entry.ids[side]] = {"id": entry.ids[side],
                                     "birth": entry.index, "death": None,
                                     "parts": []}
        elif ev.kind == "cap":
            for side in (0, 1):
                if entry.ids[side] in arcs:
                    arcs[entry.ids[side]]["death"] = entry.index
        elif ev.kind == "cross":
            for side in (0, 1):
                if entry.ids[side] in arcs:
                    if ev.arg == "pre":
                        raise ValueError(
                            "pre-crossing on an upward strand; rotate first")
                    over = (ev.arg == "l") == (side == 0)
                    arcs[entry.ids[side]]["parts"].append(
                        (entry.index, "o" if over else "u"))
        else:  # pass
            side = 0 if entry.fixed[0] is None else 1
            if entry.ids[side] in arcs:
                arcs[entry.ids[side]]["parts"].append(
                    (entry.index, "o" if ev.arg == "over" else "u"))
    out = sorted(arcs.values(), key=lambda a: a["birth"])
    for a in out:
        if a["death"] is None:
            raise ValueError("upward strand never capped")
    return out


def _first_type_split(arc: dict) -> int | None:
    """Event index of the first crossing whose type differs from its
    predecessor on this up-arc, or None if the types are uniform."""
    parts = arc["parts"]
    for k in range(1, len(parts)):
        if parts[k][1] != parts[k - 1][1]:
            return parts[k][0]
    return None


def _march_arg(t: str, neighbor_fixed: bool, cord_on_right: bool) -> Event:
    """March a cord one roster step; the cord passes over everything when
    its L-move type is 'o' and under everything when it is 'u'."""
    if neighbor_fixed:
        return "over" if t == "o" else "under"
    if cord_on_right:
        return "r" if t == "o" else "l"
    return "l" if t == "o" else "r"


def _eliminate(genus: int, events: tuple[Event, ...], order: list[int],
               arc: dict) -> tuple[tuple[Event, ...], str, list[int]]:
    """Remove one uniform up-arc with an L-move.

    A fresh braid strand pair is created at the far right: the strand that
    descended past the arc's top now enters from the top boundary, and the
    strand that fed its bottom exits at the bottom boundary, both pulled
    across the diagram entirely over or entirely under it.
    """
    t = arc["parts"][0][1] if arc["parts"] else "o"
    U = arc["id"]
    opens = len(order)
    log, _snaps = _sim_snapshots(genus, events, opens)
    new_events: list[Event] = []
    # parallel rosters of (id, fixed) pairs
    old: list[tuple[int, int | None]] = (
        [(j, j + 1) for j in range(genus)]
        + [(genus + k, None) for k in range(opens)])
    F2 = -1  # sentinel id for the new cord strand
    new = list(old) + [(F2, None)]
    feeder = None  # strand carrying the new bottom endpoint

    def new_pos(sid: int) -> int:
        for k, (i, _f) in enumerate(new):
            if i == sid:
                return k
        raise AssertionError("strand missing from rebuilt roster")

    def march(frm: int, to: int) -> None:
        step = 1 if to > frm else -1
        k = frm
        while k != to:
            nb = new[k + step] if step == 1 else new[k - 1]
            arg = _march_arg(t, nb[1] is not None, cord_on_right=step == -1)
            kind = "pass" if nb[1] is not None else "cross"
            new_events.append(Event(kind, min(k, k + step), arg))
            other = k + step
            new[k], new[other] = new[other], new[k]
            k = other

    for entry in log:
        ev = entry.event
        if ev.kind == "cup":
            ids = list(entry.ids)
            if U in ids:
                # birth of the eliminated arc: bring the cord in from the
                # far right to take over the downward leg's position
                D = ids[1 - ids.index(U)]
                left = [x for x, _f in old[:ev.pos]]
                target = len(left)
                march(new_pos(F2), target)
                new[target] = (D, None)
                old[ev.pos:ev.pos] = [(ids[0], None), (ids[1], None)]
                continue
            pos = len([x for x, _f in old[:ev.pos] if x != U])
            new_events.append(Event("cup", pos, ev.arg))
            new[pos:pos] = [(ids[0], None), (ids[1], None)]
            old[ev.pos:ev.pos] = [(ids[0], None), (ids[1], None)]
            continue
        a, b = old[ev.pos], old[ev.pos + 1]
        if ev.kind == "cap":
            if U in (a[0], b[0]):
                # death of the eliminated arc: pull the feeding strand out
                # to the far right, where it descends to the bottom
                S = b[0] if a[0] == U else a[0]
                feeder = S
                del old[ev.pos:ev.pos + 2]
                march(new_pos(S), len(new) - 1)
                continue
            pos = new_pos(a[0])
            new_events.append(Event("cap", pos, ev.arg))
            del new[pos:pos + 2]
            del old[ev.pos:ev.pos + 2]
            continue
        # cross / pass
        old[ev.pos], old[ev.pos + 1] = b, a
        if U in (a[0], b[0]):
            continue
        pos = new_pos(a[0])
        if new_pos(b[0]) != pos + 1:
            raise AssertionError("rebuilt roster lost adjacency")
        new_events.append(Event(ev.kind, pos, ev.arg))
        new[pos], new[pos + 1] = new[pos + 1], new[pos]
    # bottom endpoints: map each surviving open column to its pass index
    pass_of = dict(zip([i for i, f in old if f is None], order))
    pass_of[feeder] = opens
    new_order = [pass_of[i] for i, f in new if f is None]
    return tuple(new_events), t, new_order


def _extract(genus: int, events: tuple[Event, ...], labels: list[str],
             order: list[int]) -> MixedBraidWord:
    """Read the braid word off an all-downward presentation, first sliding
    the cords' bottom endpoints back under/over everything so that the two
    endpoints of each L-move pair share a column."""
    from .braid import p as p_gen
    from .braid import s as s_gen

    n = len(labels)
    events = list(events)
    order = list(order)  # pass index per moving bottom column, left to right
    for j in range(n):
        cur = order.index(j)
        t = labels[j]
        while cur > j:
            arg = _march_arg(t, False, cord_on_right=True)
            events.append(Event("cross", genus + cur - 1, arg))
            order[cur - 1], order[cur] = order[cur], order[cur - 1]
            cur -= 1
    log = _simulate(genus, tuple(events), n)
    letters = []
    for entry in log:
        ev = entry.event
        if ev.kind == "cross":
            if ev.arg == "pre":
                letters.append(p_gen(ev.pos + 1))
            else:
                letters.append(s_gen(ev.pos + 1, 1 if ev.arg == "l" else -1))
        elif ev.kind == "pass":
            fixed_left = entry.fixed[0] is not None
            over_left = (ev.arg == "under") == fixed_left
            letters.append(s_gen(ev.pos + 1, 1 if over_left else -1))
        else:
            raise AssertionError("turn left after braiding")
    w = MixedBraidWord(genus, n, tuple(letters), tuple(labels))
    validate_word(w)
    return w


def _try_unclose(m: MorsePresentation) -> MixedBraidWord | None:
    """Recognize the output shape of morse_from_braid_closure and read the
    word straight back off, so braided input is returned unchanged."""
    from .braid import p as p_gen
    from .braid import s as s_gen

    g, ev = m.genus, m.events
    log = _simulate(g, ev)
    n = 0
    while (n < len(ev) and ev[n].kind == "cup" and ev[n].arg == "r"
           and ev[n].pos == g + 2 * n):
        n += 1
    if n == 0 or len(ev) < 2 * n:
        return None
    if any(not (e.kind == "cap" and e.pos == g) for e in ev[len(ev) - n:]):
        return None
    lane_of = {g + 1 + k: log[k].ids[1] for k in range(n)}
    labels: list[str | None] = [None] * n
    letters = []

    def decode(entry: _LogEntry, pos: int):
        e = entry.event
        if e.kind == "cross":
            if e.arg == "pre":
                return p_gen(pos + 1)
            return s_gen(pos + 1, 1 if e.arg == "l" else -1)
        if e.kind == "pass":
            fixed_left = entry.fixed[0] is not None
            over_left = (e.arg == "under") == fixed_left
            return s_gen(pos + 1, 1 if over_left else -1)
        return None

    def lane_arg(entry: _LogEntry, lane_right: bool):
        e = entry.event
        if e.kind == "pass":
            return "o" if e.arg == "over" else "u"
        if e.kind == "cross":
            if (e.arg == "r") == lane_right:
                return "o"
            if e.arg in ("l", "r"):
                return "u"
        return None

    j = n
    end = len(ev) - n
    while j < end:
        e = ev[j]
        if e.pos < g:
            gen = decode(log[j], e.pos)
            if gen is None:
                return None
            letters.append(gen)
            j += 1
            continue
        if j + 3 > end:
            return None
        L = e.pos + 1
        if (L - g) % 2 != 1:
            return None
        col = g + (L - g + 1) // 2
        if not (g < col <= g + n):
            return None
        e1, e2, e3 = log[j], log[j + 1], log[j + 2]
        if e2.event.pos != L or e3.event.pos != L - 1:
            return None
        if e1.ids[1] != lane_of[col] or e3.ids[0] != lane_of[col]:
            return None
        l1, l3 = lane_arg(e1, True), lane_arg(e3, False)
        gen = decode(e2, col - 1)
        if l1 is None or l1 != l3 or gen is None:
            return None
        k = col - g - 1
        if labels[k] is None:
            labels[k] = l1
        elif labels[k] != l1:
            return None
        letters.append(gen)
        j += 3
    w = MixedBraidWord(g, n, tuple(letters),
                       tuple(x if x is not None else "o" for x in labels))
    try:
        validate_word(w)
    except ValueError:
        return None
    return w


def braid_from_diagram(m: MorsePresentation,
                       budget: int = 10000,
                       trace=None) -> MixedBraidWord:
    """Braiding algorithm: turn a Morse presentation into a mixed pseudo
    braid word whose labeled closure represents the same diagram.

    Pre-crossings are first rotated downward; every upward arc is then
    split into pieces whose crossings share one type and each piece is
    removed by an L-move of that type ('o' for a crossing-free piece).
    ``trace``, if given, is called with (step-name, event tuple) after
    every rewriting step.
    """
    fast = _try_unclose(m)
    if fast is not None:
        return fast
    events = rotate_pre_crossings(m).events
    genus = m.genus
    if trace is not None:
        trace("rotate", events)
    labels: list[str] = []
    order: list[int] = []
    while True:
        arcs = _up_arcs(genus, events, len(labels))
        if not arcs:
            break
        if budget <= 0:
            raise RuntimeError("braiding budget exceeded")
        budget -= 1
        arc = arcs[0]
        split = _first_type_split(arc)
        if split is not None:
            _log, snaps = _sim_snapshots(genus, events, len(labels))
            pos = snaps[split].index(arc["id"])
            events = (events[:split]
                      + (Event("cup", pos + 1, "r"), Event("cap", pos))
                      + events[split:])
            if trace is not None:
                trace("subdivide", events)
            continue
        events, t, order = _eliminate(genus, events, order, arc)
        labels.append(t)
        if trace is not None:
            trace(f"eliminate-{t}", events)
    return _extract(genus, events, labels, order)
