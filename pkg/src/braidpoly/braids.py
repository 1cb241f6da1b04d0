"""Braid words, pure-braid generators, and nested commutators.

A braid word on m strands is a sequence of nonzero integers g with
1 <= |g| <= m-1; positive g is the standard generator sigma_|g|, negative g
its inverse.  Only free reduction is applied to words (full braid-relation
rewriting is never needed downstream: every invariant computed from a word is
invariant under the braid relations anyway).

Commutator expression trees over the pure-braid generators A_ij realize
elements arbitrarily deep in the lower central series of the pure braid
group: a depth-n nested commutator lies in the n-th term of the series.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union


class StrandMismatchError(ValueError):
    """Raised when composing braid words on different strand counts."""


@dataclass(frozen=True)
class BraidWord:
    """A word in the braid group on ``strands`` strands."""

    strands: int
    letters: tuple[int, ...] = ()

    def __init__(self, strands: int, letters: Iterable[int] = ()):
        letters = tuple(int(g) for g in letters)
        if strands < 1:
            raise ValueError("strand count must be >= 1")
        for g in letters:
            if g == 0 or abs(g) > strands - 1:
                raise ValueError(
                    f"letter {g} out of range for {strands} strands"
                )
        object.__setattr__(self, "strands", int(strands))
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return render_braid(self)


def parse_braid(text: str) -> BraidWord:
    """Parse the text format ``"m: g1 g2 ... gk"``, e.g. ``"3: 1 2 -1"``."""
    m = re.match(r"^\s*(\d+)\s*:\s*(.*)$", text)
    if not m:
        raise ValueError(f"cannot parse braid word {text!r}")
    strands = int(m.group(1))
    rest = m.group(2).strip()
    letters = [int(tok) for tok in rest.split()] if rest else []
    return BraidWord(strands, letters)


def render_braid(b: BraidWord) -> str:
    return f"{b.strands}: " + " ".join(str(g) for g in b.letters) if b.letters else f"{b.strands}:"


def compose(a: BraidWord, b: BraidWord) -> BraidWord:
    """Concatenate two words on the same strand count."""
    if a.strands != b.strands:
        raise StrandMismatchError(
            f"cannot compose words on {a.strands} and {b.strands} strands"
        )
    return BraidWord(a.strands, a.letters + b.letters)


def inverse(b: BraidWord) -> BraidWord:
    """Reverse and negate the letters."""
    return BraidWord(b.strands, tuple(-g for g in reversed(b.letters)))


def free_reduce(b: BraidWord) -> BraidWord:
    """Cancel adjacent inverse pairs until none remain."""
    stack: list[int] = []
    for g in b.letters:
        if stack and stack[-1] == -g:
            stack.pop()
        else:
            stack.append(g)
    return BraidWord(b.strands, stack)


def exponent_sum(b: BraidWord) -> int:
    """Sum of letter signs: the writhe of the closed-braid diagram."""
    return sum(1 if g > 0 else -1 for g in b.letters)


def self_linking(b: BraidWord) -> int:
    """Self-linking number of the presented closed braid: writhe - strands."""
    return exponent_sum(b) - b.strands


def permutation(b: BraidWord) -> tuple[int, ...]:
    """Underlying permutation: entry k-1 is where top strand k ends up.

    Each letter acts as the transposition of adjacent positions |g|, |g|+1.
    """
    pos = list(range(1, b.strands + 1))  # pos[p] = strand currently at p+1
    for g in b.letters:
        i = abs(g) - 1
        pos[i], pos[i + 1] = pos[i + 1], pos[i]
    # invert: strand k ends at position perm[k-1]
    perm = [0] * b.strands
    for p, strand in enumerate(pos):
        perm[strand - 1] = p + 1
    return tuple(perm)


def cycle_count(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    cycles = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycles += 1
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k] - 1
    return cycles


def is_knot(b: BraidWord) -> bool:
    """True when the closure has a single component (an m-cycle)."""
    return cycle_count(permutation(b)) == 1


def pure_braid_generator(m: int, i: int, j: int) -> BraidWord:
    """Standard pure-braid generator A_ij on m strands, for 1 <= i < j <= m.

    A_ij = (sigma_{j-1} ... sigma_{i+1}) sigma_i^2 (sigma_{i+1}^-1 ... sigma_{j-1}^-1);
    its underlying permutation is the identity.
    """
    if not (1 <= i < j <= m):
        raise ValueError(f"need 1 <= i < j <= m, got i={i}, j={j}, m={m}")
    prefix = list(range(j - 1, i, -1))
    letters = prefix + [i, i] + [-k for k in reversed(prefix)]
    return BraidWord(m, letters)


# -- commutator specs ------------------------------------------------------

CommutatorSpec = Union["PureGenerator", "Commutator"]


@dataclass(frozen=True)
class PureGenerator:
    """Leaf of a commutator tree: the pure-braid generator A_ij."""

    i: int
    j: int


@dataclass(frozen=True)
class Commutator:
    """Internal node [left, right] of a commutator tree."""

    left: "CommutatorSpec"
    right: "CommutatorSpec"


def spec_depth(spec: CommutatorSpec) -> int:
    """Nesting depth: a leaf has depth 1, [a, b] has 1 + max depth."""
    if isinstance(spec, PureGenerator):
        return 1
    return 1 + max(spec_depth(spec.left), spec_depth(spec.right))


def realize_commutator(spec: CommutatorSpec, m: int) -> BraidWord:
    """Build the freely reduced braid word of a commutator tree.

    [a, b] expands to a b a^-1 b^-1.  A left-nested tree of depth n over
    pure-braid generators realizes an element of the n-th lower central
    series term of the pure braid group; its permutation is the identity.
    """
    if isinstance(spec, PureGenerator):
        return pure_braid_generator(m, spec.i, spec.j)
    a = realize_commutator(spec.left, m)
    b = realize_commutator(spec.right, m)
    word = compose(compose(a, b), compose(inverse(a), inverse(b)))
    return free_reduce(word)


def nested_commutator_spec(depth: int, outer: PureGenerator | None = None,
                           inner: PureGenerator | None = None) -> CommutatorSpec:
    """Default left-nested commutator [A12, [A12, ..., [A12, A23]...]].

    ``depth`` counts nesting: depth 1 is the bare inner generator.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if outer is None:
        outer = PureGenerator(1, 2)
    if inner is None:
        inner = PureGenerator(2, 3)
    spec: CommutatorSpec = inner
    for _ in range(depth - 1):
        spec = Commutator(outer, spec)
    return spec


def parse_commutator(text: str) -> CommutatorSpec:
    """Parse nested bracket syntax, e.g. ``"[A(1,2),[A(1,2),A(2,3)]]"``."""
    s = text.replace(" ", "")
    pos = 0

    def parse_node() -> CommutatorSpec:
        nonlocal pos
        if pos < len(s) and s[pos] == "[":
            pos += 1
            left = parse_node()
            if pos >= len(s) or s[pos] != ",":
                raise ValueError(f"expected ',' at offset {pos} in {text!r}")
            pos += 1
            right = parse_node()
            if pos >= len(s) or s[pos] != "]":
                raise ValueError(f"expected ']' at offset {pos} in {text!r}")
            pos += 1
            return Commutator(left, right)
        m = re.match(r"A\((\d+),(\d+)\)", s[pos:])
        if not m:
            raise ValueError(f"expected generator at offset {pos} in {text!r}")
        pos += m.end()
        return PureGenerator(int(m.group(1)), int(m.group(2)))

    node = parse_node()
    if pos != len(s):
        raise ValueError(f"trailing input at offset {pos} in {text!r}")
    return node


def render_commutator(spec: CommutatorSpec) -> str:
    if isinstance(spec, PureGenerator):
        return f"A({spec.i},{spec.j})"
    return f"[{render_commutator(spec.left)},{render_commutator(spec.right)}]"


def conjugate(b: BraidWord, g: BraidWord) -> BraidWord:
    """g b g^-1, for Markov-invariance tests."""
    return compose(compose(g, b), inverse(g))


def stabilize(b: BraidWord, sign: int = 1) -> BraidWord:
    """Markov stabilization: add a strand and one crossing with it."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return BraidWord(b.strands + 1, b.letters + (sign * b.strands,))
