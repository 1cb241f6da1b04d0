"""Reduced Burau representation and Alexander polynomials of closed braids.

Matrices are (m-1) x (m-1) over exact integer Laurent polynomials in t.
The Alexander polynomial of the closure of beta comes from
det(Id - Burau(beta)) rescaled by (1-t)/(1-t^m), then normalized to the
symmetric representative with value 1 at t = 1.  The rescaling division is
performed exactly in the Laurent ring; a nonzero remainder means a
convention bug and raises immediately.

For the experiment harness, matrices of very long commutator words are
built hierarchically (commutator by commutator) on a packed big-integer
polynomial representation; degrees and coefficient sizes double per nesting
level, so the tree evaluation beats any letter-by-letter pass.
"""

from __future__ import annotations

from .braids import (BraidWord, Commutator, CommutatorSpec, PureGenerator,
                     is_knot, pure_braid_generator, inverse)
from ._intpoly import PackedPoly, pack_univariate, unpack_univariate
from .polynomials import LaurentPoly

PMatrix = list[list[PackedPoly]]


class NotAKnotError(ValueError):
    """Raised when an operation needs a single-component closure."""


# -- generator matrices ------------------------------------------------------

def _gen_matrix(m: int, g: int) -> PMatrix:
    """Reduced Burau image of one braid letter, as packed t-polynomials."""
    n = m - 1
    i = abs(g)
    mat: list[list[dict[int, int]]] = [
        [({0: 1} if r == c else {}) for c in range(n)] for r in range(n)
    ]
    if g > 0:
        if i >= 2:
            mat[i - 2][i - 1] = {1: 1}
        mat[i - 1][i - 1] = {1: -1}
        if i <= n - 1:
            mat[i][i - 1] = {0: 1}
    else:
        if i >= 2:
            mat[i - 2][i - 1] = {0: 1}
        mat[i - 1][i - 1] = {-1: -1}
        if i <= n - 1:
            mat[i][i - 1] = {-1: 1}
    return [[pack_univariate(mat[r][c]) for c in range(n)] for r in range(n)]


def _identity_matrix(n: int) -> PMatrix:
    one = PackedPoly.monomial(1, 0)
    zero = PackedPoly.zero()
    return [[one if r == c else zero for c in range(n)] for r in range(n)]


def matrix_multiply(a: PMatrix, b: PMatrix) -> PMatrix:
    n = len(a)
    out: PMatrix = []
    for r in range(n):
        row = []
        for c in range(n):
            acc = PackedPoly.zero()
            for k in range(n):
                if a[r][k].val and b[k][c].val:
                    acc = acc.add(a[r][k].mul(b[k][c]))
            row.append(acc)
        out.append(row)
    return out


def matrix_of_word(m: int, letters) -> PMatrix:
    mat = _identity_matrix(m - 1)
    for g in letters:
        mat = matrix_multiply(mat, _gen_matrix(m, g))
    return mat


def matrix_power(mat: PMatrix, n: int, m: int) -> PMatrix:
    result = _identity_matrix(m - 1)
    base = mat
    while n:
        if n & 1:
            result = matrix_multiply(result, base)
        base = matrix_multiply(base, base) if n > 1 else base
        n >>= 1
    return result


def matrix_of_commutator(spec: CommutatorSpec, m: int) -> PMatrix:
    """Burau matrix of a commutator tree, evaluated tree-wise.

    Returns the image of the freely reduced realization; matrix products
    follow the tree so the work is proportional to the answer's size, not
    to the exponentially long word.
    """
    mat, _inv = _matrix_pair(spec, m)
    return mat


def _matrix_pair(spec: CommutatorSpec, m: int) -> tuple[PMatrix, PMatrix]:
    if isinstance(spec, PureGenerator):
        word = pure_braid_generator(m, spec.i, spec.j)
        return (matrix_of_word(m, word.letters),
                matrix_of_word(m, inverse(word).letters))
    a, ainv = _matrix_pair(spec.left, m)
    b, binv = _matrix_pair(spec.right, m)
    fwd = matrix_multiply(matrix_multiply(a, b), matrix_multiply(ainv, binv))
    bwd = matrix_multiply(matrix_multiply(b, a), matrix_multiply(binv, ainv))
    return fwd, bwd


def reduced_burau(b: BraidWord) -> list[list[LaurentPoly]]:
    """Image of a braid word under the reduced Burau representation."""
    if b.strands < 2:
        raise ValueError("reduced Burau needs at least 2 strands")
    mat = matrix_of_word(b.strands, b.letters)
    return [[LaurentPoly(unpack_univariate(p)) for p in row] for row in mat]


# -- Alexander polynomial ----------------------------------------------------

def _det(mat: list[list[LaurentPoly]]) -> LaurentPoly:
    """Fraction-free (Bareiss) determinant over the Laurent ring."""
    n = len(mat)
    if n == 0:
        return LaurentPoly.const(1)
    a = [row[:] for row in mat]
    sign = 1
    prev = LaurentPoly.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            pivot = next((r for r in range(k + 1, n) if not a[r][k].is_zero()), None)
            if pivot is None:
                return LaurentPoly.zero()
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num.divide_exact(prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def _dense_coeffs(p: LaurentPoly) -> tuple[int, list[int]]:
    lo = p.min_deg()
    hi = p.max_deg()
    out = [0] * (hi - lo + 1)
    for e, c in p.terms:
        out[e - lo] = c
    return lo, out


def _divide_one_minus_tm(p: LaurentPoly, m: int) -> LaurentPoly:
    """Exact division by (1 - t^m) via a linear-time coefficient scan."""
    if p.is_zero():
        return p
    lo, c = _dense_coeffs(p)
    # quotient q satisfies q_k - q_{k-m} = c_k with q supported on [0, len-m)
    n = len(c)
    if n < m:
        raise ValueError("inexact division by 1 - t^m")
    q = [0] * (n - m)
    for k in range(len(q)):
        q[k] = c[k] + (q[k - m] if k >= m else 0)
    # remainder check: top m coefficients must match -q tail
    for k in range(len(q), n):
        want = -q[k - m] if 0 <= k - m < len(q) else 0
        if c[k] != want:
            raise ValueError("inexact division by 1 - t^m (convention bug)")
    return LaurentPoly({k + lo: v for k, v in enumerate(q) if v})


def alexander_from_matrix(mat: list[list[LaurentPoly]], m: int) -> LaurentPoly:
    """Alexander polynomial from a reduced Burau image of an m-braid."""
    n = m - 1
    idm = [[LaurentPoly.const(1) if r == c else LaurentPoly.zero()
            for c in range(n)] for r in range(n)]
    diff = [[idm[r][c] - mat[r][c] for c in range(n)] for r in range(n)]
    det = _det(diff)
    if det.is_zero():
        raise NotAKnotError("det(Id - Burau) vanished; closure is not a knot")
    num = det * LaurentPoly({0: 1, 1: -1})
    delta = _divide_one_minus_tm(num, m)
    return normalize_alexander(delta)


def normalize_alexander(delta: LaurentPoly) -> LaurentPoly:
    """Center the support and fix the sign so that p(t)=p(1/t) and p(1)=1."""
    if delta.is_zero():
        raise ValueError("zero Alexander polynomial")
    center = delta.min_deg() + delta.max_deg()
    if center % 2 != 0:
        raise ValueError("Alexander support cannot be centered (odd span)")
    delta = delta.shift(-center // 2)
    at_one = delta.evaluate(1)
    if at_one == -1:
        delta = -delta
    elif at_one != 1:
        raise ValueError(f"Alexander value at 1 is {at_one}, expected +-1")
    if delta != delta.substitute_inverse():
        raise ValueError("Alexander normalization failed symmetry check")
    return delta


def alexander(b: BraidWord) -> LaurentPoly:
    """Alexander polynomial of the closure of a knot presentation."""
    if not is_knot(b):
        raise NotAKnotError("Alexander polynomial requires a knot closure")
    if b.strands < 2:
        return LaurentPoly.const(1)
    return alexander_from_matrix(reduced_burau(b), b.strands)


def packed_matrix_to_laurent(mat: PMatrix) -> list[list[LaurentPoly]]:
    return [[LaurentPoly(unpack_univariate(p)) for p in row] for row in mat]


def matrix_trace(mat: list[list[LaurentPoly]]) -> LaurentPoly:
    acc = LaurentPoly.zero()
    for i in range(len(mat)):
        acc = acc + mat[i][i]
    return acc
