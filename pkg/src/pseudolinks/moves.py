"""Local diagram moves: Reidemeister, pseudo and mixed variants.

Every move is a local rewrite applied at an explicit :class:`MoveSite`.
``enumerate_sites`` lists the sites where a move pattern matches, and
``apply_move`` performs the rewrite.  The ten move kinds:

* ``R1`` / ``PR1`` -- kink insertion/removal with a classical / pre
  crossing.  R1 scales the raw bracket by -A^{+-3}; PR1 preserves it.
* ``R2`` -- bigon insertion/removal (one strand slides over another).
* ``PR2`` -- exchange a pre-crossing with an adjacent classical crossing
  on the same strand pair (the ``p s = s p`` slide).
* ``R3`` / ``PR3`` -- triangle slide: a strand passing uniformly over or
  uniformly under slides across a classical / pre crossing.
* ``MR2_over`` -- a moving strand slides across a fixed strand in front
  of it; a no-op on the combinatorial code (over-passes carry no data).
* ``MR2_under`` -- the same slide behind the fixed strand; inserts or
  removes a cancelling membrane-letter pair ``j, -j`` on one arc or loop.
* ``MR3`` / ``MPR3`` -- a classical / pre crossing slides across a fixed
  strand lying above both strands: the pair of equal letters flanking the
  crossing jumps to its other side.

Sites are plain data; a site computed for one diagram is stale on any
other diagram and ``apply_move`` raises on mismatch.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace

from .algebra import free_reduce
from .diagram import (
    NEG,
    POS,
    PRE,
    Arc,
    Crossing,
    Diagram,
    End,
    FreeLoop,
    validate_structural,
)

__all__ = [
    "MOVE_KINDS",
    "MoveSite",
    "enumerate_sites",
    "apply_move",
    "random_move_walk",
]

MOVE_KINDS = (
    "R1", "R2", "R3",
    "PR1", "PR2", "PR3",
    "MR2_over", "MR2_under", "MR3", "MPR3",
)

#: ends of each strand at a crossing, as (in-slot, out-slot); strand 0 is
#: the slot-0/2 strand, strand 1 the slot-1/3 strand (role order depends
#: on the crossing kind and is resolved per diagram).
_UNDER_SLOTS = frozenset((0, 2))
_OVER_SLOTS = frozenset((1, 3))


@dataclass(frozen=True)
class MoveSite:
    """A move kind, a direction, and the ids/choices it touches.

    ``direction`` is ``"insert"``/``"remove"`` for R1, R2, PR1 and
    MR2_under, ``"slide"`` for R3/PR3/PR2 and MR2_over, and
    ``"in_to_out"``/``"out_to_in"`` for MR3/MPR3.  ``args`` is the
    kind-specific payload documented in the matching ``_apply_*`` helper.
    """

    kind: str
    direction: str
    args: tuple


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------

def _arc_map(d: Diagram) -> dict[int, Arc]:
    return {a.id: a for a in d.arcs}


def _in_slots(d: Diagram, c: Crossing) -> tuple[int, int]:
    """(slot-0/2-strand in-slot, other-strand in-slot) of a crossing."""
    ends = d.ends()
    other_in = 1 if ends[End(c.id, 1)][1] == "head" else 3
    return 0, other_in


def _connecting_arcs(d: Diagram, c1: int, c2: int) -> list[Arc]:
    out = []
    for a in d.arcs:
        ends = {a.tail.crossing, a.head.crossing}
        if ends == {c1, c2} or (c1 == c2 and ends == {c1}):
            out.append(a)
    return out


def _corner_type(slots: frozenset[int]) -> str | None:
    if slots in (frozenset((0, 3)), frozenset((1, 2))):
        return "A"
    if slots in (frozenset((0, 1)), frozenset((2, 3))):
        return "B"
    return None


def _bounds_face(d: Diagram, arc_ids: set[int]) -> bool:
    """True iff the given arcs form the full boundary of one face of the
    diagram's rotation system (slots counter-clockwise at each crossing).

    Bigon and triangle moves require this: the same arcs can connect the
    same crossings in a twisted arrangement that bounds no disc, and
    sliding across such a pattern is not an isotopy.
    """
    ends = d.ends()
    arcs = _arc_map(d)
    first = arcs[min(arc_ids)]
    for start_forward in (True, False):
        aid, forward = first.id, start_forward
        seen = []
        ok = True
        while True:
            seen.append(aid)
            if len(seen) > len(arc_ids):
                ok = False
                break
            a = arcs[aid]
            e = a.head if forward else a.tail
            nxt = End(e.crossing, (e.slot + 1) % 4)
            aid, role = ends[nxt]
            forward = role == "tail"
            if aid not in arc_ids:
                ok = False
                break
            if aid == first.id and forward == start_forward:
                break
        if ok and set(seen) == arc_ids and len(seen) == len(arc_ids):
            return True
    return False


def _rebuild(d: Diagram, crossings, arcs, loops) -> Diagram:
    out = Diagram(
        genus=d.genus,
        crossings=tuple(sorted(crossings, key=lambda c: c.id)),
        arcs=tuple(sorted(arcs, key=lambda a: a.id)),
        loops=tuple(loops),
    )
    validate_structural(out)
    return out


def _split_arc(a: Arc, split: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if not 0 <= split <= len(a.word):
        raise ValueError(f"bad word split {split} on arc {a.id}")
    return a.word[:split], a.word[split:]


# ---------------------------------------------------------------------------
# R1 / PR1
# ---------------------------------------------------------------------------

#: kink wiring tables: chirality -> (in-slot, loop tail slot, loop head
#: slot, out-slot).  For classical kinks the chirality is the crossing
#: sign; each sign has an under-first and an over-first planar variant
#: that scale the bracket identically, so one wiring per sign suffices.
_KINK = {
    POS: (0, 2, 1, 3),   # under in, loop from under-out to over-in
    NEG: (0, 2, 3, 1),
    PRE: (0, 2, 1, 3),   # designated strand in first
}


def _apply_kink_insert(d: Diagram, kind: str, args) -> Diagram:
    """args = (arc id, word split, chirality in {pos, neg, pre})."""
    aid, split, chir = args
    a = d.arc(aid)
    w1, w2 = _split_arc(a, split)
    cid = d.fresh_crossing_id()
    lid = d.fresh_arc_id()
    s_in, s_lt, s_lh, s_out = _KINK[chir]
    arcs = [x for x in d.arcs if x.id != aid]
    arcs.append(Arc(a.id, a.tail, End(cid, s_in), w1))
    arcs.append(Arc(lid, End(cid, s_lt), End(cid, s_lh), ()))
    arcs.append(Arc(lid + 1, End(cid, s_out), a.head, w2))
    crossings = list(d.crossings) + [Crossing(cid, chir)]
    return _rebuild(d, crossings, arcs, d.loops)


def _apply_kink_remove(d: Diagram, kind: str, args) -> Diagram:
    """args = (crossing id, loop arc id)."""
    cid, loop_aid = args
    loop = d.arc(loop_aid)
    if loop.tail.crossing != cid or loop.head.crossing != cid:
        raise ValueError("stale site: arc is not a kink loop")
    if free_reduce(loop.word):
        raise ValueError("stale site: kink loop carries letters")
    loop_slots = {loop.tail.slot, loop.head.slot}
    through = [s for s in range(4) if s not in loop_slots]
    ends = d.ends()
    (aid_x, role_x) = ends[End(cid, through[0])]
    (aid_y, role_y) = ends[End(cid, through[1])]
    arcs = _arc_map(d)
    loops = list(d.loops)
    del arcs[loop_aid]
    if aid_x == aid_y:
        a = arcs.pop(aid_x)
        loops.append(FreeLoop(free_reduce(a.word)))
    else:
        ax, ay = arcs[aid_x], arcs[aid_y]
        if role_x == "head":
            first, second = ax, ay
        else:
            first, second = ay, ax
        merged = Arc(first.id, first.tail, second.head,
                     first.word + loop.word + second.word)
        del arcs[second.id]
        arcs[first.id] = merged
    crossings = [c for c in d.crossings if c.id != cid]
    return _rebuild(d, crossings, arcs.values(), loops)


def _kink_sites(d: Diagram, chirs) -> list[MoveSite]:
    name = "PR1" if PRE in chirs else "R1"
    sites = []
    for a in d.arcs:
        for chir in chirs:
            sites.append(MoveSite(name, "insert", (a.id, 0, chir)))
    for a in d.arcs:
        if a.tail.crossing != a.head.crossing:
            continue
        # a loop on the through-slots is not a kink (the other strand
        # would cross a closed curve exactly once)
        if {a.tail.slot, a.head.slot} in ({0, 2}, {1, 3}):
            continue
        c = d.crossing(a.tail.crossing)
        if c.kind not in chirs or free_reduce(a.word):
            continue
        sites.append(MoveSite(name, "remove", (c.id, a.id)))
    return sites


# ---------------------------------------------------------------------------
# R2
# ---------------------------------------------------------------------------

def _apply_r2_insert(d: Diagram, args) -> Diagram:
    """args = (over arc id, over split, under arc id, under split).

    Slides the over arc across the under arc, creating a positive and a
    negative crossing.  The two arcs may coincide (a strand sliding over
    itself); then the under split must not precede the over split.
    """
    ov_aid, ov_split, un_aid, un_split = args
    c0 = d.fresh_crossing_id()
    c1 = c0 + 1
    arcs = _arc_map(d)
    base = d.fresh_arc_id()
    if ov_aid != un_aid:
        ov, un = arcs.pop(ov_aid), arcs.pop(un_aid)
        ow1, ow2 = _split_arc(ov, ov_split)
        uw1, uw2 = _split_arc(un, un_split)
        new = [
            Arc(ov.id, ov.tail, End(c0, 1), ow1),
            Arc(base, End(c1, 1), ov.head, ow2),
            Arc(un.id, un.tail, End(c0, 0), uw1),
            Arc(base + 1, End(c1, 2), un.head, uw2),
        ]
    else:
        a = arcs.pop(ov_aid)
        if un_split < ov_split:
            raise ValueError("self-R2 requires over split before under split")
        w1 = a.word[:ov_split]
        w2 = a.word[ov_split:un_split]
        w3 = a.word[un_split:]
        new = [
            Arc(a.id, a.tail, End(c0, 1), w1),
            Arc(base, End(c1, 1), End(c0, 0), w2),
            Arc(base + 1, End(c1, 2), a.head, w3),
        ]
    new.append(Arc(base + 2, End(c0, 3), End(c1, 3), ()))  # over bigon arc
    new.append(Arc(base + 3, End(c0, 2), End(c1, 0), ()))  # under bigon arc
    crossings = list(d.crossings) + [Crossing(c0, POS), Crossing(c1, NEG)]
    return _rebuild(d, crossings, list(arcs.values()) + new, d.loops)


def _apply_r2_remove(d: Diagram, args) -> Diagram:
    """args = (crossing id, crossing id, over arc id, under arc id)."""
    c0, c1, ov_aid, un_aid = args
    ov, un = d.arc(ov_aid), d.arc(un_aid)
    if free_reduce(ov.word) or free_reduce(un.word):
        raise ValueError("stale site: bigon arcs carry letters")
    arcs = _arc_map(d)
    loops = list(d.loops)
    ends = d.ends()
    del arcs[ov_aid], arcs[un_aid]
    # reconnect the four outer ends: at each crossing the slot opposite a
    # bigon end belongs to the same strand continuing out of the pattern
    from .diagram import _join_pair  # shared gluing helper
    for strand_arc in (ov, un):
        outer = []
        for cid in (c0, c1):
            slots_here = {
                e.slot for e in (strand_arc.tail, strand_arc.head)
                if e.crossing == cid
            }
            strand_slots = _UNDER_SLOTS if slots_here <= _UNDER_SLOTS else _OVER_SLOTS
            other = next(iter(strand_slots - slots_here))
            outer.append(End(cid, other))
        _join_pair(arcs, loops, outer[0], outer[1], ends)
    crossings = [c for c in d.crossings if c.id not in (c0, c1)]
    return _rebuild(d, crossings, arcs.values(), loops)


def _r2_remove_sites(d: Diagram) -> list[MoveSite]:
    sites = []
    kinds = {c.id: c.kind for c in d.crossings}
    seen = set()
    for a in d.arcs:
        c0, c1 = a.tail.crossing, a.head.crossing
        if c0 == c1 or kinds[c0] == PRE or kinds[c1] == PRE:
            continue
        if (key := frozenset((c0, c1))) in seen:
            continue
        conn = _connecting_arcs(d, c0, c1)
        if len(conn) != 2:
            continue
        seen.add(key)
        over = [x for x in conn
                if {x.tail.slot, x.head.slot} <= _OVER_SLOTS]
        under = [x for x in conn
                 if {x.tail.slot, x.head.slot} <= _UNDER_SLOTS]
        if len(over) != 1 or len(under) != 1:
            continue
        if any(free_reduce(x.word) for x in conn):
            continue
        corners = []
        for cid in (c0, c1):
            slots = frozenset(
                e.slot for x in conn for e in (x.tail, x.head)
                if e.crossing == cid
            )
            corners.append(_corner_type(slots))
        if sorted(corners) != ["A", "B"]:
            continue
        if not _bounds_face(d, {x.id for x in conn}):
            continue
        sites.append(MoveSite("R2", "remove",
                              (c0, c1, over[0].id, under[0].id)))
    return sites


# ---------------------------------------------------------------------------
# PR2 (pre-crossing slides through a classical crossing: p s = s p)
# ---------------------------------------------------------------------------

def _rotate_pre(d: Diagram, cid: int, delta: int) -> Diagram:
    """Re-designate a pre-crossing by rotating its slot labels by delta."""
    arcs = []
    for a in d.arcs:
        tail, head = a.tail, a.head
        if tail.crossing == cid:
            tail = End(cid, (tail.slot + delta) % 4)
        if head.crossing == cid:
            head = End(cid, (head.slot + delta) % 4)
        arcs.append(Arc(a.id, tail, head, a.word))
    return replace(d, arcs=tuple(arcs))


def _apply_pr2(d: Diagram, args) -> Diagram:
    """args = (pre crossing id, classical crossing id); swap their kinds."""
    p_cid, s_cid = args
    pre, cl = d.crossing(p_cid), d.crossing(s_cid)
    if pre.kind != PRE or cl.kind not in (POS, NEG):
        raise ValueError("stale site: PR2 needs a pre and a classical crossing")
    want_over_in = 1 if cl.kind == POS else 3
    ends = d.ends()
    other_in = 1 if ends[End(p_cid, 1)][1] == "head" else 3
    if other_in != want_over_in:
        d = _rotate_pre(d, p_cid, +1 if want_over_in == 1 else -1)
    crossings = [
        Crossing(c.id, cl.kind) if c.id == p_cid
        else Crossing(c.id, PRE) if c.id == s_cid
        else c
        for c in d.crossings
    ]
    return _rebuild(d, crossings, d.arcs, d.loops)


def _pr2_sites(d: Diagram) -> list[MoveSite]:
    sites = []
    kinds = {c.id: c.kind for c in d.crossings}
    seen = set()
    for a in d.arcs:
        c0, c1 = a.tail.crossing, a.head.crossing
        if c0 == c1 or (key := frozenset((c0, c1))) in seen:
            continue
        pair = {kinds[c0], kinds[c1]}
        if PRE not in pair or pair == {PRE}:
            continue
        conn = _connecting_arcs(d, c0, c1)
        if len(conn) != 2 or any(free_reduce(x.word) for x in conn):
            continue
        seen.add(key)
        corners = []
        for cid in (c0, c1):
            slots = frozenset(
                e.slot for x in conn for e in (x.tail, x.head)
                if e.crossing == cid
            )
            corners.append(_corner_type(slots))
        # both connecting ends must sit on different strands at each
        # crossing (the pair acts on one strand pair in sequence); corner
        # types themselves are irrelevant: the exchange commutes either way
        if None in corners:
            continue
        if not _bounds_face(d, {x.id for x in conn}):
            continue
        p_cid = c0 if kinds[c0] == PRE else c1
        s_cid = c1 if p_cid == c0 else c0
        sites.append(MoveSite("PR2", "slide", (p_cid, s_cid)))
    return sites


# ---------------------------------------------------------------------------
# R3 / PR3
# ---------------------------------------------------------------------------

def _strand_passages(d: Diagram, cids: set[int]):
    """Group the arcs at a crossing triple into its three strands.

    Returns per strand: (crossings in traversal order, per-crossing
    (in-slot, out-slot)), or None if the pattern is not a triangle of
    three strands with three inner arcs.
    """
    inner = [a for a in d.arcs
             if a.tail.crossing in cids and a.head.crossing in cids]
    if len(inner) != 3 or any(free_reduce(a.word) for a in inner):
        return None
    if any(a.tail.crossing == a.head.crossing for a in inner):
        return None
    # each strand: outer in-arc -> c_first -> inner arc -> c_second -> out
    strands = []
    used = set()
    ends = d.ends()
    for a in inner:
        if a.id in used:
            continue
        used.add(a.id)
        c_first, c_second = a.tail.crossing, a.head.crossing
        out_slot_first = a.tail.slot
        in_slot_second = a.head.slot
        in_slot_first = (out_slot_first + 2) % 4
        out_slot_second = (in_slot_second + 2) % 4
        if ends[End(c_first, in_slot_first)][1] != "head":
            return None
        if ends[End(c_second, out_slot_second)][1] != "tail":
            return None
        strands.append(((c_first, c_second),
                        ((in_slot_first, out_slot_first),
                         (in_slot_second, out_slot_second))))
    if len(strands) != 3:
        return None
    pairs = [frozenset(s[0]) for s in strands]
    if len(set(pairs)) != 3:
        return None
    # every outer end must be occupied by a non-inner arc, otherwise a
    # strand chains through all three crossings and this is no triangle
    inner_ids = {a.id for a in inner}
    for (c1, c2), ((in1, _o1), (_i2, out2)) in strands:
        if ends[End(c1, in1)][0] in inner_ids:
            return None
        if ends[End(c2, out2)][0] in inner_ids:
            return None
    return strands


def _apply_r3(d: Diagram, args) -> Diagram:
    """args = the strand table from _strand_passages (made hashable)."""
    strands = args
    arcs = _arc_map(d)
    ends = d.ends()
    fresh = d.fresh_arc_id()
    inner_ids = {
        a.id for a in d.arcs
        if a.tail.crossing in {c for s in strands for c in s[0]}
        and a.head.crossing in {c for s in strands for c in s[0]}
    }
    for aid in inner_ids:
        del arcs[aid]
    new = []
    for (c1, c2), ((in1, out1), (in2, out2)) in strands:
        outer_in_aid, role_in = ends[End(c1, in1)]
        outer_out_aid, role_out = ends[End(c2, out2)]
        # reverse the order of the two crossings along this strand
        a_in = arcs[outer_in_aid]
        arcs[outer_in_aid] = replace(a_in, head=End(c2, in2)) \
            if a_in.head == End(c1, in1) else replace(a_in, tail=End(c2, in2))
        new.append(Arc(fresh, End(c2, out2), End(c1, in1), ()))
        fresh += 1
        a_out = arcs[outer_out_aid]
        arcs[outer_out_aid] = replace(a_out, tail=End(c1, out1)) \
            if a_out.tail == End(c2, out2) else replace(a_out, head=End(c1, out1))
    return _rebuild(d, d.crossings, list(arcs.values()) + new, d.loops)


def _r3_sites(d: Diagram, pre_stationary: bool) -> list[MoveSite]:
    name = "PR3" if pre_stationary else "R3"
    kinds = {c.id: c.kind for c in d.crossings}
    triples = set()
    for a in d.arcs:
        c0, c1 = a.tail.crossing, a.head.crossing
        if c0 == c1:
            continue
        for b in d.arcs:
            c2, c3 = b.tail.crossing, b.head.crossing
            if {c2, c3} & {c0, c1} and len({c0, c1, c2, c3}) == 3:
                triples.add(frozenset((c0, c1, c2, c3)))
    sites = []
    for cids in sorted(triples, key=sorted):
        strands = _strand_passages(d, set(cids))
        if strands is None:
            continue
        inner = {a.id for a in d.arcs
                 if a.tail.crossing in cids and a.head.crossing in cids}
        if not _bounds_face(d, inner):
            continue
        n_pre = sum(1 for cid in cids if kinds[cid] == PRE)
        if n_pre != (1 if pre_stationary else 0):
            continue
        # the sliding strand passes uniformly over or under its two
        # classical crossings; the stationary crossing is the remaining one
        ok = False
        for (pair, slots) in strands:
            if any(kinds[c] == PRE for c in pair):
                continue
            flat = {x for inout in slots for x in inout}
            if flat <= _OVER_SLOTS or flat <= _UNDER_SLOTS:
                ok = True
        if not ok:
            continue
        key = tuple(sorted((s for s in strands), key=lambda s: s[0]))
        sites.append(MoveSite(name, "slide", key))
    return sites


# ---------------------------------------------------------------------------
# MR2
# ---------------------------------------------------------------------------

def _apply_mr2_under(d: Diagram, direction: str, args) -> Diagram:
    """insert: args = ('arc'|'loop', id/index, position, letter j).
    remove: args = ('arc'|'loop', id/index, position) with word[pos] ==
    -word[pos+1]."""
    where, ident = args[0], args[1]
    if where == "arc":
        a = d.arc(ident)
        word = a.word
    else:
        word = d.loops[ident].word
    if direction == "insert":
        pos, j = args[2], args[3]
        if not (0 <= pos <= len(word) and j != 0 and abs(j) <= d.genus):
            raise ValueError("stale MR2 site")
        word = word[:pos] + (j, -j) + word[pos:]
    else:
        pos = args[2]
        if pos + 1 >= len(word) or word[pos] != -word[pos + 1]:
            raise ValueError("stale MR2 site")
        word = word[:pos] + word[pos + 2:]
    if where == "arc":
        arcs = [replace(x, word=word) if x.id == ident else x for x in d.arcs]
        return replace(d, arcs=tuple(arcs))
    loops = list(d.loops)
    loops[ident] = FreeLoop(word)
    return replace(d, loops=tuple(loops))


def _mr2_sites(d: Diagram) -> list[MoveSite]:
    sites = []
    carriers = [("arc", a.id, a.word) for a in d.arcs]
    carriers += [("loop", i, l.word) for i, l in enumerate(d.loops)]
    for where, ident, word in carriers:
        for j in range(1, d.genus + 1):
            sites.append(MoveSite("MR2_under", "insert", (where, ident, 0, j)))
            sites.append(MoveSite("MR2_under", "insert", (where, ident, 0, -j)))
        for pos in range(len(word) - 1):
            if word[pos] == -word[pos + 1]:
                sites.append(MoveSite("MR2_under", "remove", (where, ident, pos)))
    return sites


# ---------------------------------------------------------------------------
# MR3 / MPR3
# ---------------------------------------------------------------------------

def _crossing_io_arcs(d: Diagram, cid: int):
    """((in arc, in end), (in arc, in end)), same for the two out ends."""
    ends = d.ends()
    ins, outs = [], []
    for slot in range(4):
        aid, role = ends[End(cid, slot)]
        (ins if role == "head" else outs).append((aid, slot))
    return ins, outs


def _apply_mr3(d: Diagram, kind: str, direction: str, args) -> Diagram:
    """args = (crossing id, letter j): both arcs on the source side of
    the crossing shed one letter j next to it; both target-side arcs
    gain it."""
    cid, j = args
    ins, outs = _crossing_io_arcs(d, cid)
    arcs = _arc_map(d)

    def strip(aid: int, side: str):
        a = arcs[aid]
        if side == "head":
            if not a.word or a.word[-1] != j:
                raise ValueError("stale MR3 site")
            arcs[aid] = replace(a, word=a.word[:-1])
        else:
            if not a.word or a.word[0] != j:
                raise ValueError("stale MR3 site")
            arcs[aid] = replace(a, word=a.word[1:])

    def grow(aid: int, side: str):
        a = arcs[aid]
        if side == "head":
            arcs[aid] = replace(a, word=a.word + (j,))
        else:
            arcs[aid] = replace(a, word=(j,) + a.word)

    if direction == "in_to_out":
        for aid, _slot in ins:
            strip(aid, "head")
        for aid, _slot in outs:
            grow(aid, "tail")
    else:
        for aid, _slot in outs:
            strip(aid, "tail")
        for aid, _slot in ins:
            grow(aid, "head")
    return _rebuild(d, d.crossings, arcs.values(), d.loops)


def _mr3_sites(d: Diagram, pre: bool) -> list[MoveSite]:
    name = "MPR3" if pre else "MR3"
    sites = []
    for c in d.crossings:
        if (c.kind == PRE) != pre:
            continue
        ins, outs = _crossing_io_arcs(d, c.id)
        arcs = _arc_map(d)
        # the two in-arcs may be the same arc looping through; the word
        # surgery handles that, but pattern matching needs care only for
        # the common case of distinct ends
        in_last = [arcs[aid].word[-1] if arcs[aid].word else None
                   for aid, _ in ins]
        if in_last[0] is not None and in_last[0] == in_last[1]:
            sites.append(MoveSite(name, "in_to_out", (c.id, in_last[0])))
        out_first = [arcs[aid].word[0] if arcs[aid].word else None
                     for aid, _ in outs]
        if out_first[0] is not None and out_first[0] == out_first[1]:
            sites.append(MoveSite(name, "out_to_in", (c.id, out_first[0])))
    return sites


# ---------------------------------------------------------------------------
# public surface
# ---------------------------------------------------------------------------

def enumerate_sites(d: Diagram, kind: str) -> list[MoveSite]:
    """All sites where the move pattern matches combinatorially."""
    if kind == "R1":
        return _kink_sites(d, (POS, NEG))
    if kind == "PR1":
        return _kink_sites(d, (PRE,))
    if kind == "R2":
        sites = _r2_remove_sites(d)
        for a in d.arcs:
            for b in d.arcs:
                if a.id <= b.id:
                    sites.append(MoveSite("R2", "insert", (a.id, 0, b.id, 0)))
        return sites
    if kind == "PR2":
        return _pr2_sites(d)
    if kind == "R3":
        return _r3_sites(d, pre_stationary=False)
    if kind == "PR3":
        return _r3_sites(d, pre_stationary=True)
    if kind == "MR2_over":
        return [MoveSite("MR2_over", "slide", (a.id,)) for a in d.arcs]
    if kind == "MR2_under":
        return _mr2_sites(d)
    if kind == "MR3":
        return _mr3_sites(d, pre=False)
    if kind == "MPR3":
        return _mr3_sites(d, pre=True)
    raise ValueError(f"unknown move kind {kind!r}")


def apply_move(d: Diagram, site: MoveSite) -> Diagram:
    """Rewrite the diagram at a site previously found on it."""
    k, direction = site.kind, site.direction
    if k in ("R1", "PR1"):
        chir = (POS, NEG) if k == "R1" else (PRE,)
        if direction == "insert":
            if site.args[2] not in chir:
                raise ValueError("chirality does not match move kind")
            return _apply_kink_insert(d, k, site.args)
        return _apply_kink_remove(d, k, site.args)
    if k == "R2":
        if direction == "insert":
            return _apply_r2_insert(d, site.args)
        return _apply_r2_remove(d, site.args)
    if k == "PR2":
        return _apply_pr2(d, site.args)
    if k in ("R3", "PR3"):
        return _apply_r3(d, site.args)
    if k == "MR2_over":
        d.arc(site.args[0])  # staleness check only; the move is a no-op
        return d
    if k == "MR2_under":
        return _apply_mr2_under(d, direction, site.args)
    if k in ("MR3", "MPR3"):
        return _apply_mr3(d, k, direction, site.args)
    raise ValueError(f"unknown move kind {k!r}")


def random_move_walk(d: Diagram, length: int, seed: int) -> Diagram:
    """Apply a reproducible pseudorandom sequence of admissible moves.

    Insertion moves are throttled once the diagram grows past a dozen
    crossings so long walks stay tractable for the state-sum engine.
    """
    rng = random.Random(seed)
    for _ in range(length):
        kinds = list(MOVE_KINDS)
        rng.shuffle(kinds)
        applied = False
        for kind in kinds:
            sites = enumerate_sites(d, kind)
            if len(d.crossings) >= 12:
                sites = [s for s in sites if s.direction != "insert"]
            if not sites:
                continue
            site = rng.choice(sites)
            d = apply_move(d, site)
            applied = True
            break
        if not applied:
            break
    return d
