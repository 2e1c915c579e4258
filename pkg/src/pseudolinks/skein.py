"""Bracket polynomial state sum for pseudo links in handlebodies.

Skein rules
-----------

Classical crossings expand as usual:

    < X > = A < A-smoothing > + A^-1 < B-smoothing >

A pre-crossing expands against the orientation of the diagram:

    < P > = V < oriented smoothing > + (1 + (A^2 + A^-2) V) < disoriented >

where the *oriented* (Seifert) smoothing is the one compatible with the
strand orientations and V is a fresh central variable.  The coefficients
satisfy  V*delta + (1 + (A^2+A^-2)V) = 1  with delta = -A^2 - A^-2, which
makes the bracket invariant under pre-kink removal; invariance under the
remaining pseudo-Reidemeister moves holds for the whole one-parameter
family of such coefficient pairs (see tests/test_skein.py for the
Temperley-Lieb verification).

A fully smoothed state is a disjoint union of closed curves in the
handlebody.  With m curves of which the non-null-homotopic ones have curve
classes w_1, ..., w_r, the state evaluates to

    delta^(m-1) * s_{w_1} * ... * s_{w_r}

so that < unknot > = 1 and < L u c > = delta * s_c * < L >.

The normalized invariant multiplies by (-A^-3)^w where w is the writhe
counted over classical crossings only (pre-crossings have no sign).

`bracket` is a memoized recursive expansion with kink short-cuts;
`bracket_bruteforce` re-derives the same sum by brute enumeration of
smoothing assignments and is used as an oracle in the test suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import A, CurveClass, Poly, V, curve_var, delta, one, zero
from .diagram import (
    A_PAIRING,
    B_PAIRING,
    PRE,
    Arc,
    Crossing,
    Diagram,
    End,
    canonical_key,
    seifert_pairing,
    smooth,
    validate,
    writhe,
)

__all__ = [
    "SkeinRules",
    "DEFAULT_RULES",
    "bracket",
    "bracket_bruteforce",
    "normalized_invariant",
]


@dataclass(frozen=True)
class SkeinRules:
    """Expansion coefficients; the default is the (a, b) = (V, 1 - V*delta) pair."""

    classical_a: Poly  # coefficient of the A-pairing at a classical crossing
    classical_b: Poly
    pre_oriented: Poly  # coefficient of the Seifert smoothing at a pre-crossing
    pre_disoriented: Poly

    def check_consistency(self) -> None:
        if self.pre_oriented * delta + self.pre_disoriented != one:
            raise ValueError("pre-crossing coefficients must satisfy a*delta + b = 1")


DEFAULT_RULES = SkeinRules(
    classical_a=A(1),
    classical_b=A(-1),
    pre_oriented=V,
    pre_disoriented=one - V * delta,
)


def _other(pairing):
    return B_PAIRING if pairing == A_PAIRING else A_PAIRING


def _state_value(curves: list[CurveClass]) -> Poly:
    if not curves:
        return one
    value = one
    for cls in curves:
        if not cls.is_trivial:
            value = value * curve_var(cls)
    return value * delta ** (len(curves) - 1)


def _loop_arc_pair(d: Diagram, cid: int) -> tuple[int, int] | None:
    """If a single arc connects two adjacent slots of cid with a
    null-homotopic word, return its (slot, slot) pair."""
    for a in d.arcs:
        if a.tail.crossing == cid and a.head.crossing == cid:
            slots = tuple(sorted((a.tail.slot, a.head.slot)))
            if slots in ((0, 1), (1, 2), (2, 3), (0, 3)):
                if CurveClass.of(a.word).is_trivial:
                    return slots
    return None


def bracket(d: Diagram, rules: SkeinRules = DEFAULT_RULES) -> Poly:
    """Bracket polynomial of an (oriented, valid) diagram.

    The Seifert pairing of every pre-crossing is fixed up front from the
    input orientation; the expansion is then a plain sum over smoothing
    assignments, so the result does not depend on resolution order.
    """
    validate(d)
    rules.check_consistency()
    seif = {c.id: seifert_pairing(d, c.id) for c in d.crossings if c.kind == PRE}
    memo: dict = {}
    return _expand(d, seif, rules, memo)


def _memo_key(d: Diagram, seif: dict[int, tuple]):
    tagged = Diagram(
        genus=d.genus,
        crossings=tuple(
            Crossing(c.id, c.kind if c.kind != PRE
                     else ("preA" if seif[c.id] == A_PAIRING else "preB"))
            for c in d.crossings
        ),
        arcs=d.arcs,
        loops=d.loops,
    )
    return canonical_key(tagged)


def _expand(d: Diagram, seif, rules: SkeinRules, memo) -> Poly:
    if not d.crossings:
        return _state_value([CurveClass.of(l.word) for l in d.loops])
    key = _memo_key(d, seif)
    if key in memo:
        return memo[key]

    result = None
    # kink short-cut: a crossing whose two adjacent slots are connected by
    # a null-homotopic loop arc contributes a scalar factor
    for c in d.crossings:
        slots = _loop_arc_pair(d, c.id)
        if slots is None:
            continue
        in_a = slots in A_PAIRING
        if c.kind == PRE:
            factor = one if (slots in seif[c.id]) else (
                rules.pre_oriented + rules.pre_disoriented * delta)
        else:
            # A*delta + A^-1 = -A^3 when the loop pair is an A-pair, and
            # symmetrically -A^-3 for a B-pair
            factor = (rules.classical_a * delta + rules.classical_b) if in_a \
                else (rules.classical_a + rules.classical_b * delta)
        rest = smooth(d, c.id, B_PAIRING if in_a else A_PAIRING)
        result = factor * _expand(rest, seif, rules, memo)
        break

    if result is None:
        c = min(d.crossings, key=lambda c: c.id)
        if c.kind == PRE:
            sp = seif[c.id]
            result = (
                rules.pre_oriented * _expand(smooth(d, c.id, sp), seif, rules, memo)
                + rules.pre_disoriented
                * _expand(smooth(d, c.id, _other(sp)), seif, rules, memo)
            )
        else:
            result = (
                rules.classical_a * _expand(smooth(d, c.id, A_PAIRING), seif, rules, memo)
                + rules.classical_b * _expand(smooth(d, c.id, B_PAIRING), seif, rules, memo)
            )
    memo[key] = result
    return result


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------

def bracket_bruteforce(d: Diagram, rules: SkeinRules = DEFAULT_RULES) -> Poly:
    """Same polynomial, computed by enumerating all smoothing assignments.

    Shares no smoothing/surgery code with `bracket`: loops are traced
    directly on the original diagram's end-connectivity.
    """
    validate(d)
    rules.check_consistency()
    crossings = list(d.crossings)
    options = []
    for c in crossings:
        if c.kind == PRE:
            sp = seifert_pairing(d, c.id)
            options.append(((rules.pre_oriented, sp),
                            (rules.pre_disoriented, _other(sp))))
        else:
            options.append(((rules.classical_a, A_PAIRING),
                            (rules.classical_b, B_PAIRING)))

    total = zero
    for choice in itertools.product(*options):
        coeff = one
        pairing_at = {}
        for c, (poly, pairing) in zip(crossings, choice):
            coeff = coeff * poly
            pairing_at[c.id] = pairing
        curves = _trace_state(d, pairing_at)
        total = total + coeff * _state_value(curves)
    return total


def _trace_state(d: Diagram, pairing_at) -> list[CurveClass]:
    # neighbour map across smoothed crossings
    across: dict[End, End] = {}
    for cid, pairing in pairing_at.items():
        for sx, sy in pairing:
            across[End(cid, sx)] = End(cid, sy)
            across[End(cid, sy)] = End(cid, sx)
    at_end: dict[End, tuple[Arc, str]] = {}
    for a in d.arcs:
        at_end[a.tail] = (a, "tail")
        at_end[a.head] = (a, "head")

    curves = [CurveClass.of(l.word) for l in d.loops]
    seen: set[int] = set()
    for start in d.arcs:
        if start.id in seen:
            continue
        word: list[int] = []
        arc, direction = start, "forward"
        while True:
            seen.add(arc.id)
            if direction == "forward":
                word.extend(arc.word)
                leave = arc.head
            else:
                word.extend(-x for x in reversed(arc.word))
                leave = arc.tail
            nxt = across[leave]
            arc, role = at_end[nxt]
            direction = "forward" if role == "tail" else "backward"
            if arc.id == start.id:
                break
        curves.append(CurveClass.of(word))
    return curves


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------

def normalized_invariant(d: Diagram, rules: SkeinRules = DEFAULT_RULES) -> Poly:
    """Writhe-normalized bracket: (-A^-3)^writhe * <d>."""
    w = writhe(d)
    norm = Poly({(-3, 0, ()): -1}) ** w
    return norm * bracket(d, rules)
