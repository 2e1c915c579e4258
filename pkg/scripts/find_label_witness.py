#!/usr/bin/env python3
"""Search for label-sensitive closure witnesses.

Scans seeded random mixed pseudo braid words for a word whose closure
invariant changes when one strand's closure label flips from 'o' to 'u'.
The first hit for the default arguments is pinned in
``pseudolinks.checks.label_witness`` as a frozen regression pair.

Usage: python3 scripts/find_label_witness.py [--genus 1] [--strands 2]
       [--length 7] [--tries 2000] [--seed 0] [--all]
"""

import argparse
import random

from pseudolinks.braid import close, random_word
from pseudolinks.skein import normalized_invariant


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--genus", type=int, default=1)
    ap.add_argument("--strands", type=int, default=2)
    ap.add_argument("--length", type=int, default=7)
    ap.add_argument("--tries", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--all", action="store_true",
                    help="keep scanning after the first witness")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    found = 0
    for i in range(args.tries):
        w = random_word(args.genus, args.strands, args.length, rng)
        base = normalized_invariant(close(w))
        for col in range(args.strands):
            labels = tuple("u" if j == col else lab
                           for j, lab in enumerate(w.labels))
            if labels == w.labels:
                continue
            flipped = type(w)(w.genus, w.strands, w.letters, labels)
            v = normalized_invariant(close(flipped))
            if v != base:
                found += 1
                print(f"witness #{found} (try {i}, column {col + 1}):")
                print(f"  word    {w}")
                print(f"  labels  {''.join(w.labels)} -> {base}")
                print(f"  labels  {''.join(labels)} -> {v}")
                if not args.all:
                    return 0
                break
    if not found:
        print("no witness found; widen --tries or --length")
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
