"""Braided patterns and the 0-framed cabling operator on braid words.

A braided pattern is a braid whose closure is a knot, living in a solid
torus with winding number equal to its strand count.  ``cable`` produces a
braid word presenting the satellite of a closed braid with that pattern,
using the longitude (0-framing) convention: the blackboard framing carried
by the closed-braid diagram is cancelled by an explicit correction twist.

The correction is the single most error-prone convention here; it is pinned
by the Markov-invariance property (conjugated and stabilized presentations
of the same knot must give satellites with identical invariants) and by the
degeneration that every (q,1)-cable of the unknot is the unknot.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .braids import BraidWord, compose, exponent_sum, inverse, is_knot


@dataclass(frozen=True)
class Pattern:
    """Braided pattern: a braid on ``winding`` strands closing to a knot."""

    winding: int
    word: BraidWord
    name: str = ""

    def __post_init__(self):
        if self.winding < 1:
            raise ValueError("winding number must be >= 1")
        if self.word.strands != self.winding:
            raise ValueError("pattern word must live on `winding` strands")
        if not is_knot(self.word):
            raise ValueError("pattern closure must be a knot")


def trivial_pattern() -> Pattern:
    return Pattern(1, BraidWord(1, []), name="trivial")


def cable_pattern(q: int, f: int) -> Pattern:
    """The (q, f) torus pattern: (sigma_1 ... sigma_{q-1})^f on q strands.

    The closure is a knot exactly when gcd(q, f) = 1.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    if q == 1:
        return Pattern(1, BraidWord(1, []), name="(1,%d)-cable" % f)
    if gcd(q, f) != 1:
        raise ValueError(f"({q},{f}) torus pattern closes to a link, not a knot")
    run = list(range(1, q))
    if f >= 0:
        letters = run * f
    else:
        letters = [-g for g in reversed(run)] * (-f)
    return Pattern(q, BraidWord(q, letters), name=f"({q},{f})-cable")


def block_transposition(block: int, w: int, positive: bool) -> list[int]:
    """Word crossing the w-strand block ``block`` over (or under) block+1.

    All w^2 crossings share one sign; the negative version is the exact
    inverse word of the positive one, so cabling is a homomorphism on words.
    """
    p = (block - 1) * w + 1
    letters = []
    for a in range(w):
        for b in range(w):
            letters.append(p + w - 1 - a + b)
    if positive:
        return letters
    return [-g for g in reversed(letters)]


def full_twist(w: int) -> list[int]:
    """Full twist on w strands: (sigma_1 ... sigma_{w-1})^w."""
    return list(range(1, w)) * w


def cable(beta: BraidWord, pattern: Pattern) -> BraidWord:
    """Braid word whose closure is the 0-framed pattern satellite.

    Each letter of ``beta`` lifts to a block transposition; the blackboard
    framing (one full twist per unit of writhe) is cancelled by appending
    the inverse twists on the first block, and the pattern word is appended
    on the first block.  Strand count multiplies by the winding number.
    """
    if not is_knot(beta):
        raise ValueError("cable requires a knot presentation (single cycle)")
    w = pattern.winding
    if w == 1:
        return beta
    m = beta.strands
    letters: list[int] = []
    for g in beta.letters:
        letters.extend(block_transposition(abs(g), w, g > 0))
    e = exponent_sum(beta)
    twist = full_twist(w)
    if e > 0:
        undo = [-g for g in reversed(twist)]
        letters.extend(undo * e)
    elif e < 0:
        letters.extend(twist * (-e))
    letters.extend(pattern.word.letters)
    return BraidWord(m * w, letters)


def cable_letter_count(beta: BraidWord, pattern: Pattern) -> int:
    """Predicted letter count: w^2 |beta| + w(w-1) |e| + |pattern|."""
    w = pattern.winding
    if w == 1:
        return len(beta.letters)
    return (w * w * len(beta.letters)
            + w * (w - 1) * abs(exponent_sum(beta))
            + len(pattern.word.letters))
