"""Mixed pseudo braid words and their labeled closures.

A mixed pseudo braid on g + n strands has g *fixed* strands (columns
1..g, each representing one handle of the handlebody; their closure is the
g-component unlink whose complement the link lives in) and n *moving*
strands (columns g+1..g+n).  Letters act at positions 1..g+n-1:

* ``s i``  / ``s i ^-1``: classical crossing at position i; positive means
  the strand coming from column i passes over the one from column i+1.
* ``p i``: pre-crossing at position i (both strands must be moving).

A classical letter may involve one fixed strand; it then creates no
crossing in the closed diagram but records the moving strand's passage
over (no letter) or under (a membrane letter +-j, j the fixed strand's
handle) the fixed strand.  Two fixed strands never cross, and the final
permutation must return every fixed strand to its own column.

The closure joins the bottom of each moving column c to its top by a
vertical lane just right of the column.  Each lane carries a label:

* ``o``: the lane passes over everything it meets,
* ``u``: the lane passes under everything (and picks up membrane letters
  from fixed strands it passes under).

A lane at column c meets exactly the crossings of letters at position c,
so the labels genuinely matter only when strands are displaced across
moving columns.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
import random

from .diagram import Arc, Crossing, Diagram, End, FreeLoop, NEG, POS, PRE, validate

__all__ = [
    "Gen",
    "s",
    "p",
    "MixedBraidWord",
    "validate_word",
    "close",
    "loop_around_handle",
    "relation_instances",
    "random_word",
    "conjugate",
    "commute",
    "stabilize",
    "pseudo_stabilize",
    "l_move",
]


@dataclass(frozen=True)
class Gen:
    """One letter: classical crossing ('s', signed) or pre-crossing ('p')."""

    kind: str  # 's' | 'p'
    pos: int
    sign: int = 1

    def __post_init__(self):
        if self.kind not in ("s", "p"):
            raise ValueError(f"bad generator kind {self.kind}")
        if self.kind == "p" and self.sign != 1:
            raise ValueError("pre-crossing generators are unsigned")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +-1")

    def inverse(self) -> "Gen":
        if self.kind == "p":
            raise ValueError("pre-crossing generators are not invertible")
        return Gen("s", self.pos, -self.sign)

    def __str__(self) -> str:
        base = f"{self.kind}{self.pos}"
        return base if self.sign == 1 else base + "^-1"


def s(pos: int, sign: int = 1) -> Gen:
    return Gen("s", pos, sign)


def p(pos: int) -> Gen:
    return Gen("p", pos)


@dataclass(frozen=True)
class MixedBraidWord:
    genus: int
    strands: int  # number of moving strands
    letters: tuple[Gen, ...] = ()
    labels: tuple[str, ...] = ()  # closure label per moving column, 'o'/'u'

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", ("o",) * self.strands)

    @property
    def total(self) -> int:
        return self.genus + self.strands

    def __str__(self) -> str:
        body = " ".join(str(g) for g in self.letters) or "1"
        return f"[g={self.genus} n={self.strands} | {body} | {''.join(self.labels)}]"


def _initial_roster(w: MixedBraidWord) -> list[tuple[str, int]]:
    return [("fixed", j + 1) for j in range(w.genus)] + [
        ("mov", c) for c in range(w.genus + 1, w.total + 1)
    ]


def validate_word(w: MixedBraidWord) -> None:
    if w.genus < 0 or w.strands < 1:
        raise ValueError("need genus >= 0 and at least one moving strand")
    if len(w.labels) != w.strands or any(x not in "ou" for x in w.labels):
        raise ValueError("labels must assign 'o'/'u' to each moving strand")
    roster = _initial_roster(w)
    for g in w.letters:
        if not 1 <= g.pos <= w.total - 1:
            raise ValueError(f"letter {g} out of range")
        left, right = roster[g.pos - 1], roster[g.pos]
        if g.kind == "p" and not (left[0] == "mov" and right[0] == "mov"):
            raise ValueError(f"pre-crossing {g} involves a fixed strand")
        if g.kind == "s" and left[0] == "fixed" and right[0] == "fixed":
            raise ValueError(f"{g} would cross two fixed strands")
        roster[g.pos - 1], roster[g.pos] = right, left
    for j in range(w.genus):
        if roster[j] != ("fixed", j + 1):
            raise ValueError("fixed strands do not return to their columns")


# ---------------------------------------------------------------------------
# closure
# ---------------------------------------------------------------------------
#
# Slot tables.  Braid crossings (strands both moving, both downward):
#   s+ : left over.  under-in (right strand) = slot 0, so left: in 1, out 3;
#        right: in 0, out 2.   kind POS
#   s- : right over.  left: in 0, out 2; right: in 3, out 1.   kind NEG
#   p  : designated-in = left strand = slot 0: left in 0 out 2;
#        right in 3 out 1.
# Lane crossings (lane ascending, strand segment diagonal; 'dr' = segment
# heading down-right, 'dl' = down-left):
#   label u (lane under): lane in 0 out 2; 'dr' seg in 3 out 1 (NEG),
#                         'dl' seg in 1 out 3 (POS)
#   label o (lane over):  seg in 0 out 2; 'dr' lane in 1 out 3 (POS),
#                         'dl' lane in 3 out 1 (NEG)
# Membrane letters: a moving strand passing under a fixed strand picks up
# +j when it is the left entry of the crossing, -j when it is the right
# entry; an ascending u-lane passing under a fixed segment picks up -j for
# a 'dr' segment and +j for a 'dl' one.

_BRAID_SLOTS = {
    ("s", 1): (POS, (1, 3), (0, 2)),  # kind, (left in, out), (right in, out)
    ("s", -1): (NEG, (0, 2), (3, 1)),
    ("p", 1): (PRE, (0, 2), (3, 1)),
}

_LANE_SLOTS = {
    ("u", "dr"): (NEG, (0, 2), (3, 1)),  # kind, (lane in, out), (seg in, out)
    ("u", "dl"): (POS, (0, 2), (1, 3)),
    ("o", "dr"): (POS, (1, 3), (0, 2)),
    ("o", "dl"): (NEG, (3, 1), (0, 2)),
}


def close(w: MixedBraidWord) -> Diagram:
    """The labeled closure of a mixed pseudo braid word, as a diagram."""
    validate_word(w)
    g, m = w.genus, w.total
    roster = _initial_roster(w)
    label_of = {w.genus + 1 + i: w.labels[i] for i in range(w.strands)}

    crossings: list[Crossing] = []
    # per moving strand (keyed by top column): downward stream of items
    streams: dict[int, list[tuple]] = {c: [] for c in range(g + 1, m + 1)}
    # per moving column: upward stream of the closure lane (built in letter
    # order, reversed at the end)
    lanes: dict[int, list[tuple]] = {c: [] for c in range(g + 1, m + 1)}

    def new_crossing(kind: str) -> int:
        cid = len(crossings)
        crossings.append(Crossing(cid, kind))
        return cid

    def lane_hit(col: int, segdir: str, entity: tuple[str, int]) -> None:
        lab = label_of[col]
        if entity[0] == "fixed":
            if lab == "u":
                lanes[col].append(("letter", -entity[1] if segdir == "dr" else entity[1]))
            return
        kind, lane_io, seg_io = _LANE_SLOTS[(lab, segdir)]
        cid = new_crossing(kind)
        lanes[col].append(("cross", cid, *lane_io))
        streams[entity[1]].append(("cross", cid, *seg_io))

    for gen in w.letters:
        i = gen.pos
        left, right = roster[i - 1], roster[i]
        # the departing (left) strand meets the lane of column i first
        if i > g:
            lane_hit(i, "dr", left)
        if left[0] == "mov" and right[0] == "mov":
            kind, left_io, right_io = _BRAID_SLOTS[(gen.kind, gen.sign)]
            cid = new_crossing(kind)
            streams[left[1]].append(("cross", cid, *left_io))
            streams[right[1]].append(("cross", cid, *right_io))
        else:
            mov, fixed_j, mov_is_left = (
                (right, left[1], False) if left[0] == "fixed" else (left, right[1], True)
            )
            over_is_left = gen.sign == 1
            moving_under = over_is_left != mov_is_left
            if moving_under:
                streams[mov[1]].append(("letter", fixed_j if mov_is_left else -fixed_j))
        if i > g:
            lane_hit(i, "dl", right)
        roster[i - 1], roster[i] = right, left

    # stitch components: strand (top col c) .. lane at its bottom col .. next
    bottom_col = {}
    for col, ent in enumerate(roster, start=1):
        if ent[0] == "mov":
            bottom_col[ent[1]] = col

    arcs: list[Arc] = []
    loops: list[FreeLoop] = []
    seen: set[int] = set()
    for start in sorted(streams):
        if start in seen:
            continue
        items: list[tuple] = []
        c = start
        while True:
            seen.add(c)
            items.extend(streams[c])
            items.extend(reversed(lanes[bottom_col[c]]))
            c = bottom_col[c]
            if c == start:
                break
        cross_idx = [k for k, it in enumerate(items) if it[0] == "cross"]
        if not cross_idx:
            loops.append(FreeLoop(tuple(v for _, v in items)))
            continue
        n_cr = len(cross_idx)
        for a in range(n_cr):
            k_from = cross_idx[a]
            k_to = cross_idx[(a + 1) % n_cr]
            _, cid_from, _, out_slot = items[k_from]
            _, cid_to, in_slot, _ = items[k_to]
            between = (
                items[k_from + 1:k_to]
                if a + 1 < n_cr
                else items[k_from + 1:] + items[:cross_idx[0]]
            )
            word = tuple(v for tag, v in between if tag == "letter")
            arcs.append(Arc(len(arcs), tail=End(cid_from, out_slot),
                            head=End(cid_to, in_slot), word=word))

    d = Diagram(genus=g, crossings=tuple(crossings), arcs=tuple(arcs),
                loops=tuple(loops))
    validate(d)
    return d


# ---------------------------------------------------------------------------
# standard loops
# ---------------------------------------------------------------------------

def loop_around_handle(genus: int, j: int) -> MixedBraidWord:
    """One moving strand winding once around handle j (class x_j)."""
    if not 1 <= j <= genus:
        raise ValueError("handle index out of range")
    letters = [s(i, -1) for i in range(genus, j, -1)]
    letters += [s(j), s(j)]
    letters += [s(i) for i in range(j + 1, genus + 1)]
    return MixedBraidWord(genus, 1, tuple(letters))


# ---------------------------------------------------------------------------
# monoid relations
# ---------------------------------------------------------------------------

def relation_instances(genus: int, strands: int) -> list[tuple[str, tuple[Gen, ...], tuple[Gen, ...]]]:
    """Defining relations of the pseudo braid monoid (genus 0) or its
    solid-torus version (genus 1), written in the mixed alphabet.

    Moving-strand generator index i corresponds to mixed position i+genus;
    the loop generator t of the genus-1 monoid is s1^2.
    """
    if genus not in (0, 1):
        raise ValueError("relation catalogue covers genus 0 and 1")
    g = genus
    n = strands
    out: list[tuple[str, tuple[Gen, ...], tuple[Gen, ...]]] = []

    def S(i, sign=1):
        return s(i + g, sign)

    def P(i):
        return p(i + g)

    for i in range(1, n - 1):
        for j in range(i + 2, n):
            out.append((f"s{i}s{j}=s{j}s{i}", (S(i), S(j)), (S(j), S(i))))
            out.append((f"p{i}p{j}=p{j}p{i}", (P(i), P(j)), (P(j), P(i))))
            for sign in (1, -1):
                out.append((f"p{i}s{j}=s{j}p{i}",
                            (P(i), S(j, sign)), (S(j, sign), P(i))))
    for i in range(1, n - 1):
        out.append((f"s{i}s{i+1}s{i}=s{i+1}s{i}s{i+1}",
                    (S(i), S(i + 1), S(i)), (S(i + 1), S(i), S(i + 1))))
        out.append((f"s{i}s{i+1}p{i}=p{i+1}s{i}s{i+1}",
                    (S(i), S(i + 1), P(i)), (P(i + 1), S(i), S(i + 1))))
        out.append((f"s{i+1}s{i}p{i+1}=p{i}s{i+1}s{i}",
                    (S(i + 1), S(i), P(i + 1)), (P(i), S(i + 1), S(i))))
    for i in range(1, n):
        for sign in (1, -1):
            out.append((f"p{i}s{i}=s{i}p{i}",
                        (P(i), S(i, sign)), (S(i, sign), P(i))))
        out.append((f"s{i}s{i}^-1=1", (S(i), S(i, -1)), ()))

    if genus == 1:
        t = (s(1), s(1))
        for i in range(2, n):
            out.append((f"ts{i}=s{i}t", t + (S(i),), (S(i),) + t))
            out.append((f"tp{i}=p{i}t", t + (P(i),), (P(i),) + t))
        if n >= 2:
            out.append(("ts1ts1=s1ts1t",
                        t + (S(1),) + t + (S(1),), (S(1),) + t + (S(1),) + t))
            out.append(("ts1tp1=p1ts1t",
                        t + (S(1),) + t + (P(1),), (P(1),) + t + (S(1),) + t))
    return out


# ---------------------------------------------------------------------------
# random words
# ---------------------------------------------------------------------------

def random_word(genus: int, strands: int, length: int, rng: random.Random,
                pre_prob: float = 0.25, labels: tuple[str, ...] | None = None) -> MixedBraidWord:
    """A random valid word: random letters followed by a homing tail that
    returns displaced fixed strands to their columns."""
    total = genus + strands
    roster = [("fixed", j + 1) for j in range(genus)] + [
        ("mov", c) for c in range(genus + 1, total + 1)]
    letters: list[Gen] = []
    for _ in range(length):
        choices = []
        for i in range(1, total):
            left, right = roster[i - 1], roster[i]
            if left[0] == "fixed" and right[0] == "fixed":
                continue
            choices.append((i, left[0] == "mov" and right[0] == "mov"))
        if not choices:
            break
        i, can_pre = choices[rng.randrange(len(choices))]
        if can_pre and rng.random() < pre_prob:
            gen = p(i)
        else:
            gen = s(i, rng.choice((1, -1)))
        letters.append(gen)
        roster[i - 1], roster[i] = roster[i], roster[i - 1]
    # homing: bubble each fixed strand back to its column
    for target in range(genus):
        col = next(k for k, ent in enumerate(roster) if ent == ("fixed", target + 1))
        while col > target:
            letters.append(s(col, rng.choice((1, -1))))
            roster[col - 1], roster[col] = roster[col], roster[col - 1]
            col -= 1
    if labels is None:
        labels = tuple(rng.choice("ou") for _ in range(strands))
    w = MixedBraidWord(genus, strands, tuple(letters), labels)
    validate_word(w)
    return w


# ---------------------------------------------------------------------------
# Markov-type moves
# ---------------------------------------------------------------------------

def conjugate(w: MixedBraidWord, gen: Gen) -> MixedBraidWord:
    """a^-1 w a for an invertible (classical) letter a."""
    return replace(w, letters=(gen.inverse(),) + w.letters + (gen,))


def commute(w: MixedBraidWord, split: int) -> MixedBraidWord:
    """alpha beta -> beta alpha (both halves must be valid words themselves)."""
    alpha, beta = w.letters[:split], w.letters[split:]
    # The closure of beta+alpha only matches the closure of alpha+beta when
    # each half is a mixed braid element in its own right: the rotation
    # conjugates by alpha, and a half that displaces a fixed strand is not
    # an element one may conjugate by.
    validate_word(replace(w, letters=alpha))
    validate_word(replace(w, letters=beta))
    return replace(w, letters=beta + alpha)


def _extend(w: MixedBraidWord, extra: tuple[Gen, ...], label: str) -> MixedBraidWord:
    return MixedBraidWord(w.genus, w.strands + 1, w.letters + extra,
                          w.labels + (label,))


def stabilize(w: MixedBraidWord, sign: int = 1, label: str = "o") -> MixedBraidWord:
    """Add a moving strand and a final s_m^sign crossing it with the last one."""
    return _extend(w, (s(w.total, sign),), label)


def pseudo_stabilize(w: MixedBraidWord, label: str = "o") -> MixedBraidWord:
    """Add a moving strand and a final pre-crossing with the last one."""
    return _extend(w, (p(w.total),), label)


def l_move(w: MixedBraidWord, k: int, col: int, flavor: str) -> MixedBraidWord:
    """An L-move: cut the strand at column `col` between letters k and k+1,
    pull both new endpoints around the right edge on a new strand.

    flavor 'o': the rerouted segments pass over everything they cross;
    flavor 'u': under everything.
    """
    if flavor not in ("ou"):
        raise ValueError("flavor must be 'o' or 'u'")
    roster = _initial_roster(w)
    for gen in w.letters[:k]:
        roster[gen.pos - 1], roster[gen.pos] = roster[gen.pos], roster[gen.pos - 1]
    if roster[col - 1][0] != "mov":
        raise ValueError("cut column holds a fixed strand")
    m = w.total
    eps_in = -1 if flavor == "o" else 1  # new strand travelling left, as right entry
    eps_out = 1 if flavor == "o" else -1  # cut strand travelling right, as left entry
    t_in = tuple(s(i, eps_in) for i in range(m, col - 1, -1))
    t_out = tuple(s(i, eps_out) for i in range(col + 1, m + 1))
    letters = w.letters[:k] + t_in + t_out + w.letters[k:]
    out = MixedBraidWord(w.genus, w.strands + 1, letters, w.labels + (flavor,))
    validate_word(out)
    return out
