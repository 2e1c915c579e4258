"""Exact polynomial arithmetic for the state sum.

The invariant lives in the Laurent polynomial ring

    Z[A, A^-1][V][s_w : w a curve class]

where A is the usual bracket variable, V tracks oriented smoothings of
pre-crossings, and each s_w is a formal variable attached to the free
homotopy class w of a state curve in the handlebody (w is a cyclic word in
the free group F_g, taken up to rotation and inversion; the trivial class
contributes the loop value delta = -A^2 - A^-2 instead of a variable).

Everything is exact: integer coefficients, dict-based sparse polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

__all__ = [
    "CurveClass",
    "canonical_curve_word",
    "free_reduce",
    "cyclic_reduce",
    "Poly",
    "A",
    "A_inv",
    "V",
    "curve_var",
    "delta",
    "one",
    "zero",
]


# ---------------------------------------------------------------------------
# curve classes
# ---------------------------------------------------------------------------

def free_reduce(word: Iterable[int]) -> tuple[int, ...]:
    """Freely reduce a word in F_g (letters are nonzero ints, -j = x_j^-1)."""
    out: list[int] = []
    for letter in word:
        if letter == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def cyclic_reduce(word: tuple[int, ...]) -> tuple[int, ...]:
    word = free_reduce(word)
    while len(word) >= 2 and word[0] == -word[-1]:
        word = word[1:-1]
    return word


def _letter_key(letter: int) -> tuple[int, int]:
    # order x1 < x1^-1 < x2 < x2^-1 < ...
    return (abs(letter), 0 if letter > 0 else 1)


def _word_key(word: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    return tuple(_letter_key(c) for c in word)


def canonical_curve_word(word: Iterable[int]) -> tuple[int, ...]:
    """Canonical representative of a free homotopy class of unoriented curves.

    Cyclically reduce, then take the lexicographically smallest rotation of
    either the word or its inverse.
    """
    w = cyclic_reduce(tuple(word))
    if not w:
        return ()
    inv = tuple(-c for c in reversed(w))
    candidates = [w[i:] + w[:i] for i in range(len(w))]
    candidates += [inv[i:] + inv[:i] for i in range(len(inv))]
    return min(candidates, key=_word_key)


@dataclass(frozen=True, order=True)
class CurveClass:
    """A free homotopy class of an unoriented closed curve in a handlebody."""

    word: tuple[int, ...]

    @staticmethod
    def of(word: Iterable[int]) -> "CurveClass":
        return CurveClass(canonical_curve_word(word))

    @property
    def is_trivial(self) -> bool:
        return not self.word

    def __str__(self) -> str:
        if not self.word:
            return "1"
        parts = []
        for c in self.word:
            parts.append(f"x{c}" if c > 0 else f"x{-c}^-1")
        return " ".join(parts)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------
#
# A monomial is a key (a_exp, v_exp, curves) where curves is a sorted tuple
# of (CurveClass, positive multiplicity) pairs.  Poly maps keys to nonzero
# int coefficients.

MonoKey = tuple[int, int, tuple[tuple[CurveClass, int], ...]]


def _mul_curves(
    left: tuple[tuple[CurveClass, int], ...],
    right: tuple[tuple[CurveClass, int], ...],
) -> tuple[tuple[CurveClass, int], ...]:
    if not left:
        return right
    if not right:
        return left
    acc: dict[CurveClass, int] = dict(left)
    for cls, mult in right:
        acc[cls] = acc.get(cls, 0) + mult
    return tuple(sorted(acc.items()))


@dataclass(frozen=True)
class Poly:
    """Sparse exact polynomial in A^{±1}, V, and curve-class variables."""

    terms: Mapping[MonoKey, int]

    @staticmethod
    def from_terms(terms: Mapping[MonoKey, int]) -> "Poly":
        return Poly({k: c for k, c in terms.items() if c != 0})

    @staticmethod
    def const(n: int) -> "Poly":
        if n == 0:
            return Poly({})
        return Poly({(0, 0, ()): n})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Poly | int") -> "Poly":
        if isinstance(other, int):
            other = Poly.const(other)
        acc = dict(self.terms)
        for key, coeff in other.terms.items():
            new = acc.get(key, 0) + coeff
            if new:
                acc[key] = new
            else:
                acc.pop(key, None)
        return Poly(acc)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Poly | int") -> "Poly":
        if isinstance(other, int):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other: int) -> "Poly":
        return Poly.const(other) - self

    def __mul__(self, other: "Poly | int") -> "Poly":
        if isinstance(other, int):
            other = Poly.const(other)
        acc: dict[MonoKey, int] = {}
        for (a1, v1, c1), k1 in self.terms.items():
            for (a2, v2, c2), k2 in other.terms.items():
                key = (a1 + a2, v1 + v2, _mul_curves(c1, c2))
                new = acc.get(key, 0) + k1 * k2
                if new:
                    acc[key] = new
                else:
                    acc.pop(key, None)
        return Poly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            # only ±A^k is invertible here, which is all normalization needs
            if len(self.terms) == 1:
                ((a, v, c), k), = self.terms.items()
                if v == 0 and not c and k in (1, -1):
                    return Poly({(a * n, 0, ()): k if n % 2 else 1})
            raise ValueError("negative power of a non-unit")
        result = one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- queries ----------------------------------------------------------

    def a_span(self) -> tuple[int, int] | None:
        """(min, max) exponent of A over all terms, or None for 0."""
        if not self.terms:
            return None
        exps = [a for (a, _, _) in self.terms]
        return (min(exps), max(exps))

    def v_degree(self) -> int:
        """Maximal V-exponent appearing (0 for the zero polynomial)."""
        return max((v for (_, v, _) in self.terms), default=0)

    def curve_classes(self) -> set[CurveClass]:
        out: set[CurveClass] = set()
        for (_, _, curves) in self.terms:
            out.update(cls for cls, _ in curves)
        return out

    # -- rendering --------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        def mono_sort_key(key: MonoKey):
            a, v, curves = key
            return (-a, v, curves)
        parts = []
        for key in sorted(self.terms, key=mono_sort_key):
            coeff = self.terms[key]
            a, v, curves = key
            factors = []
            if abs(coeff) != 1 or (a == 0 and v == 0 and not curves):
                factors.append(str(abs(coeff)))
            if a:
                factors.append(f"A^{a}" if a != 1 else "A")
            if v:
                factors.append(f"V^{v}" if v != 1 else "V")
            for cls, mult in curves:
                base = f"s[{cls}]"
                factors.append(base if mult == 1 else f"{base}^{mult}")
            text = "*".join(factors)
            if not parts:
                parts.append(text if coeff > 0 else f"-{text}")
            else:
                parts.append(f"+ {text}" if coeff > 0 else f"- {text}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"


def A(exp: int = 1) -> Poly:
    return Poly({(exp, 0, ()): 1})


A_inv = A(-1)
V = Poly({(0, 1, ()): 1})
one = Poly({(0, 0, ()): 1})
zero = Poly({})

#: loop value of a null-homotopic state curve
delta = Poly({(2, 0, ()): -1, (-2, 0, ()): -1})


def curve_var(cls: CurveClass) -> Poly:
    """The variable s_w for a curve class, or delta for the trivial class."""
    if cls.is_trivial:
        return delta
    return Poly({(0, 0, ((cls, 1),)): 1})
