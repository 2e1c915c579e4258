#!/usr/bin/env python3
"""A short tour of the library: diagrams, brackets, braids, and closures.

Run: python3 scripts/demo.py
"""

from pseudolinks.braid import MixedBraidWord, close, p, s
from pseudolinks.braiding import braid_from_diagram, morse_from_braid_closure
from pseudolinks.diagram import Diagram, FreeLoop, writhe
from pseudolinks.moves import random_move_walk
from pseudolinks.skein import bracket, normalized_invariant


def show(title, value):
    print(f"{title:<44} {value}")


def main() -> None:
    # Classical values in S^3 (genus 0).
    trefoil = MixedBraidWord(0, 2, (s(1), s(1), s(1)), ("o", "o"))
    hopf = MixedBraidWord(0, 2, (s(1), s(1)), ("o", "o"))
    show("trefoil  <.> =", bracket(close(trefoil)))
    show("trefoil  normalized =", normalized_invariant(close(trefoil)))
    show("Hopf     normalized =", normalized_invariant(close(hopf)))

    # A pseudo trefoil: one crossing left undetermined.
    pseudo = MixedBraidWord(0, 2, (s(1), p(1), s(1)), ("o", "o"))
    show("pseudo trefoil normalized =", normalized_invariant(close(pseudo)))

    # In the solid torus (genus 1) curve variables appear.
    t2 = MixedBraidWord(1, 1, (s(1), s(1)), ("o",))
    show("loop around the handle (g=1) =", normalized_invariant(close(t2)))

    # Loops in the genus-2 handlebody with distinct homotopy classes.
    for word in ((1,), (2,), (1, 2)):
        d = Diagram(2, loops=(FreeLoop(word),))
        show(f"H_2 loop {word} =", normalized_invariant(d))

    # Invariance: a random move walk leaves the normalized bracket alone.
    d0 = close(trefoil)
    d1 = random_move_walk(d0, length=8, seed=42)
    show("after 8 random moves, equal =",
         normalized_invariant(d1) == normalized_invariant(d0))
    show("writhe before/after =", f"{writhe(d0)} / {writhe(d1)}")

    # Braiding: recover a braid word from a closed diagram.
    m = morse_from_braid_closure(pseudo)
    w = braid_from_diagram(m)
    show("re-braided pseudo trefoil =", w)
    show("round trip preserves invariant =",
         normalized_invariant(close(w)) == normalized_invariant(close(pseudo)))


if __name__ == "__main__":
    main()
