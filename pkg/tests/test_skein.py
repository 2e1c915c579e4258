"""State-sum engine against independent oracles.

The main oracle is ``bracket_bruteforce`` (a no-sharing resolution-tree
enumeration).  For classical genus-0 diagrams this file adds a second,
fully independent check: a union-find state enumeration written here
from scratch, plus literature values for the trefoils and the Hopf
link.
"""

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from pseudolinks.algebra import A, CurveClass, Poly, curve_var, delta, one
from pseudolinks.braid import MixedBraidWord, close, p, s
from pseudolinks.braiding import diagram_from_morse, random_morse
from pseudolinks.diagram import (
    A_PAIRING,
    B_PAIRING,
    Diagram,
    FreeLoop,
    NEG,
    POS,
    writhe,
)
from pseudolinks.skein import bracket, bracket_bruteforce, normalized_invariant


def _rand_diagram(seed, max_crossings=8, max_genus=3):
    for attempt in range(60):
        sub = seed * 60 + attempt
        m = random_morse(sub % (max_genus + 1), 1 + sub % 6, 0xBEEF + sub)
        d = diagram_from_morse(m)
        if len(d.crossings) <= max_crossings:
            return d
    raise RuntimeError("sampler failed")


# ---------------------------------------------------------------------------
# independent union-find oracle (classical, genus 0)
# ---------------------------------------------------------------------------

def _kauffman_unionfind(d: Diagram) -> Poly:
    assert d.genus == 0
    assert all(c.kind in (POS, NEG) for c in d.crossings)
    cids = [c.id for c in d.crossings]
    total = Poly.const(0)
    for choice in itertools.product("AB", repeat=len(cids)):
        parent: dict = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        for a in d.arcs:
            union(("end", a.tail.crossing, a.tail.slot),
                  ("end", a.head.crossing, a.head.slot))
        coeff = one
        for cid, ch in zip(cids, choice):
            pairing = A_PAIRING if ch == "A" else B_PAIRING
            coeff = coeff * (A() if ch == "A" else A(-1))
            for s1, s2 in pairing:
                union(("end", cid, s1), ("end", cid, s2))
        loops = len({find(("end", a.tail.crossing, a.tail.slot)) for a in d.arcs})
        loops += len(d.loops)
        total = total + coeff * delta ** (loops - 1)
    return total


def _classical_random_diagram(seed):
    rng = random.Random(seed)
    n = 1 + rng.randrange(2)
    length = rng.randrange(6)
    w = MixedBraidWord(
        0, n,
        tuple(s(1 + rng.randrange(max(1, n - 1)), rng.choice((1, -1)))
              for _ in range(length)) if n > 1 else (),
        tuple(rng.choice("ou") for _ in range(n)))
    return close(w)


@pytest.mark.parametrize("seed", range(25))
def test_unionfind_oracle_agrees(seed):
    d = _classical_random_diagram(seed)
    assert bracket(d) == _kauffman_unionfind(d)
    assert bracket_bruteforce(d) == _kauffman_unionfind(d)


# ---------------------------------------------------------------------------
# literature values
# ---------------------------------------------------------------------------

HOPF = close(MixedBraidWord(0, 2, (s(1), s(1)), ("o", "o")))
TREFOIL = close(MixedBraidWord(0, 2, (s(1),) * 3, ("o", "o")))
TREFOIL_MIRROR = close(MixedBraidWord(0, 2, (s(1, -1),) * 3, ("o", "o")))


def test_unknot():
    assert bracket(Diagram(0, loops=(FreeLoop(()),))) == 1
    assert normalized_invariant(close(MixedBraidWord(0, 1))) == 1


def test_hopf_bracket():
    assert bracket(HOPF) == -A(4) - A(-4)
    assert writhe(HOPF) == 2
    assert normalized_invariant(HOPF) == -A(-2) - A(-10)


def test_trefoil_values():
    # Jones polynomials of the two trefoils: t + t^3 - t^4 at t = A^-4,
    # and its mirror image under A -> A^-1 (unknot normalized to 1)
    assert normalized_invariant(TREFOIL) == A(-4) + A(-12) - A(-16)
    assert normalized_invariant(TREFOIL_MIRROR) == A(4) + A(12) - A(16)


def test_classical_signature():
    for d in (HOPF, TREFOIL, TREFOIL_MIRROR):
        v = normalized_invariant(d)
        assert v.v_degree() == 0
        assert not v.curve_classes()


# ---------------------------------------------------------------------------
# handlebody base cases
# ---------------------------------------------------------------------------

def test_free_loops_are_curve_variables():
    for word in ((1,), (2,), (1, 2)):
        d = Diagram(2, loops=(FreeLoop(word),))
        assert bracket(d) == curve_var(CurveClass.of(word))


def test_trivial_loop_value_one():
    assert bracket(Diagram(3, loops=(FreeLoop(()),))) == 1


def test_two_loops_multiply_with_delta():
    d = Diagram(1, loops=(FreeLoop((1,)), FreeLoop((1,))))
    x = curve_var(CurveClass.of((1,)))
    assert bracket(d) == delta * x * x


def test_pre_kink_unknot_normalizes_to_one():
    d = close(MixedBraidWord(0, 2, (p(1),), ("o", "o")))
    assert normalized_invariant(d) == 1


# ---------------------------------------------------------------------------
# engine properties
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(40))
def test_bracket_matches_bruteforce(seed):
    d = _rand_diagram(seed)
    assert bracket(d) == bracket_bruteforce(d)


@pytest.mark.parametrize("seed", range(20))
def test_normalization_is_writhe_scaling(seed):
    d = _rand_diagram(seed)
    assert normalized_invariant(d) == (-A(-3)) ** writhe(d) * bracket(d)


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=25, deadline=None)
def test_bracket_deterministic(seed):
    d = _rand_diagram(seed % 500, max_crossings=6)
    assert bracket(d) == bracket(d)
