"""Exact Laurent and two-variable polynomial arithmetic.

A one-variable Laurent polynomial is stored as a dict mapping integer
exponents to nonzero integer coefficients; the zero polynomial is the empty
dict.  A two-variable polynomial is stored as a dict mapping z-exponents to
nonzero Laurent polynomials in v.  All arithmetic is exact over Python's
arbitrary-precision integers; linear solves use Fraction.  No floating point
anywhere.

Also provides the moment invariants f_i = sum_a c_a * a^i of a Laurent
polynomial (the closed form of reading Taylor coefficients after v = e^x),
breadth, Vandermonde reconstruction of a polynomial from its moments, and the
canonical text / JSON serializations used by the CLI and golden tests.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping


class InconsistentMomentsError(ValueError):
    """Raised when a moment vector has no integer solution on a support."""


class ParityError(ValueError):
    """Raised when a polynomial violates an expected exponent parity."""


def _clean(terms: Mapping[int, int]) -> dict[int, int]:
    return {e: c for e, c in terms.items() if c != 0}


@dataclass(frozen=True)
class LaurentPoly:
    """Laurent polynomial in one variable with integer coefficients.

    ``terms`` maps exponent -> coefficient and never stores a zero
    coefficient, so equality of dicts is equality of polynomials.
    """

    terms: tuple[tuple[int, int], ...]

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict[int, int] = {}
        for e, c in items:
            acc[e] = acc.get(e, 0) + c
        cleaned = tuple(sorted(_clean(acc).items()))
        object.__setattr__(self, "terms", cleaned)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def const(c: int) -> "LaurentPoly":
        return LaurentPoly({0: c})

    @staticmethod
    def monomial(coeff: int, exp: int) -> "LaurentPoly":
        return LaurentPoly({exp: coeff})

    # -- queries -----------------------------------------------------------

    def coeff(self, exp: int) -> int:
        for e, c in self.terms:
            if e == exp:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.terms)

    def min_deg(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return self.terms[0][0]

    def max_deg(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return self.terms[-1][0]

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.terms)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(acc)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.terms})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly(acc)

    def scale(self, c: int) -> "LaurentPoly":
        return LaurentPoly({e: c * k for e, k in self.terms})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by the k-th power of the variable."""
        return LaurentPoly({e + k: c for e, c in self.terms})

    def substitute_inverse(self) -> "LaurentPoly":
        """Apply the variable inversion v -> v^-1."""
        return LaurentPoly({-e: c for e, c in self.terms})

    def substitute_power(self, k: int) -> "LaurentPoly":
        """Apply v -> v^k for a nonzero integer k."""
        if k == 0:
            raise ValueError("substitution power must be nonzero")
        return LaurentPoly({e * k: c for e, c in self.terms})

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self.terms) == 1 and abs(self.terms[0][1]) == 1:
                e, c = self.terms[0]
                unit = LaurentPoly({-e: c})
                return unit ** (-n)
            raise ValueError("negative powers only defined for unit monomials")
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def evaluate(self, x: Fraction | int) -> Fraction:
        """Exact evaluation at a rational point (x must be invertible if
        negative exponents are present)."""
        total = Fraction(0)
        fx = Fraction(x)
        for e, c in self.terms:
            total += c * fx**e
        return total

    def divide_exact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises ValueError when the division has a remainder.

        Laurent units are factored out so only honest polynomial division in
        the underlying polynomial ring is performed.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero()
        num = {e - self.min_deg(): c for e, c in self.terms}
        den = {e - divisor.min_deg(): c for e, c in divisor.terms}
        shift = self.min_deg() - divisor.min_deg()
        dn = max(den)
        lead = den[dn]
        quot: dict[int, int] = {}
        rem = dict(num)
        while rem:
            rn = max(rem)
            if rn < dn:
                raise ValueError("inexact polynomial division (degree)")
            c = rem[rn]
            if c % lead != 0:
                raise ValueError("inexact polynomial division (leading coefficient)")
            q = c // lead
            qe = rn - dn
            quot[qe] = quot.get(qe, 0) + q
            for de, dc in den.items():
                e = de + qe
                nc = rem.get(e, 0) - q * dc
                if nc:
                    rem[e] = nc
                else:
                    rem.pop(e, None)
        return LaurentPoly({e + shift: c for e, c in quot.items()})

    def __repr__(self) -> str:
        return f"LaurentPoly({render_laurent(self)!r})"


def breadth(f: LaurentPoly) -> int:
    """Max exponent minus min exponent; -2 for the zero polynomial."""
    if f.is_zero():
        return -2
    return f.max_deg() - f.min_deg()


@dataclass(frozen=True)
class MomentVector:
    """Finite sequence of integer moments f_0, f_1, ..., f_{d-1}."""

    values: tuple[int, ...]

    def __init__(self, values: Iterable[int]):
        object.__setattr__(self, "values", tuple(int(v) for v in values))

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __add__(self, other: "MomentVector") -> "MomentVector":
        if len(self) != len(other):
            raise ValueError("moment vectors of unequal length")
        return MomentVector(a + b for a, b in zip(self.values, other.values))


def moments(f: LaurentPoly, count: int) -> MomentVector:
    """First ``count`` moments of f: entry i is sum_a c_a * a^i.

    Entry 0 is f evaluated at 1.  These are exactly i! times the Taylor
    coefficients of f after substituting e^x for the variable, but the closed
    form keeps everything in integers.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    out = []
    for i in range(count):
        out.append(sum(c * e**i for e, c in f.terms))
    return MomentVector(out)


def reconstruct(support: Iterable[int], moment_vec: MomentVector | Iterable[int]) -> LaurentPoly:
    """Recover the unique polynomial on ``support`` with the given moments.

    Solves the Vandermonde system with exact rational Gaussian elimination.
    Raises InconsistentMomentsError when the solution is not integral, i.e.
    the moments cannot come from an integer polynomial on this support.
    """
    supp = list(support)
    if len(set(supp)) != len(supp):
        raise ValueError("support entries must be distinct")
    if any(supp[i] >= supp[i + 1] for i in range(len(supp) - 1)):
        supp = sorted(supp)
    vals = list(moment_vec)
    d = len(supp)
    if len(vals) != d:
        raise ValueError("moment count must equal support size")
    if d == 0:
        return LaurentPoly.zero()

    # Row i of the system is sum_j a_j^i * c_j = f_i.
    aug = [[Fraction(a**i) for a in supp] + [Fraction(vals[i])] for i in range(d)]
    for col in range(d):
        pivot = next((r for r in range(col, d) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular Vandermonde system (duplicate support?)")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(d):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]

    coeffs = [row[d] for row in aug]
    if any(c.denominator != 1 for c in coeffs):
        raise InconsistentMomentsError(
            "moments are inconsistent with an integer polynomial on this support"
        )
    return LaurentPoly({a: int(c) for a, c in zip(supp, coeffs)})


def moments_determine_equal(f: LaurentPoly, g: LaurentPoly) -> bool:
    """Compare f and g through finitely many moments.

    For polynomials supported on even exponents, breadth(f)/2 + breadth(g)/2
    + 2 moments suffice to separate distinct polynomials (the Vandermonde
    argument); the zero/zero case is the vacuous d = 0 comparison.  Inputs
    with odd-exponent support fall back to the safe count breadth(f) +
    breadth(g) + 2, which covers any combined support of that span.
    """
    bf, bg = breadth(f), breadth(g)
    even = all(e % 2 == 0 for e in f.support()) and all(e % 2 == 0 for e in g.support())
    if even:
        d = bf // 2 + bg // 2 + 2
    else:
        d = bf + bg + 2
    if d <= 0:
        return f == g  # both zero
    mf = moments(f, d)
    mg = moments(g, d)
    return mf.values == mg.values


@dataclass(frozen=True)
class TwoVarPoly:
    """Polynomial in z with LaurentPoly coefficients in v.

    z-exponents are usually nonnegative; invariants of links with several
    components carry z^-1 powers, so negative z-exponents are permitted.
    No stored coefficient polynomial is zero.
    """

    terms: tuple[tuple[int, LaurentPoly], ...]

    def __init__(self, terms: Mapping[int, LaurentPoly] | Iterable[tuple[int, LaurentPoly]] = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict[int, LaurentPoly] = {}
        for zexp, poly in items:
            if zexp in acc:
                acc[zexp] = acc[zexp] + poly
            else:
                acc[zexp] = poly
        cleaned = tuple(sorted((z, p) for z, p in acc.items() if not p.is_zero()))
        object.__setattr__(self, "terms", cleaned)

    @staticmethod
    def zero() -> "TwoVarPoly":
        return TwoVarPoly()

    @staticmethod
    def const(c: int) -> "TwoVarPoly":
        if c == 0:
            return TwoVarPoly()
        return TwoVarPoly({0: LaurentPoly.const(c)})

    @staticmethod
    def monomial(coeff: int, v_exp: int, z_exp: int) -> "TwoVarPoly":
        return TwoVarPoly({z_exp: LaurentPoly.monomial(coeff, v_exp)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def z_slice(self, z_exp: int) -> LaurentPoly:
        for z, p in self.terms:
            if z == z_exp:
                return p
        return LaurentPoly.zero()

    def z_degrees(self) -> tuple[int, ...]:
        return tuple(z for z, _ in self.terms)

    def max_z_deg(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return self.terms[-1][0]

    def v_breadth(self) -> int:
        """Breadth across v of the whole polynomial; -2 when zero."""
        if not self.terms:
            return -2
        lo = min(p.min_deg() for _, p in self.terms)
        hi = max(p.max_deg() for _, p in self.terms)
        return hi - lo

    def v_support_range(self) -> tuple[int, int]:
        if not self.terms:
            raise ValueError("zero polynomial has no support")
        lo = min(p.min_deg() for _, p in self.terms)
        hi = max(p.max_deg() for _, p in self.terms)
        return lo, hi

    def __add__(self, other: "TwoVarPoly") -> "TwoVarPoly":
        acc = {z: p for z, p in self.terms}
        for z, p in other.terms:
            acc[z] = acc[z] + p if z in acc else p
        return TwoVarPoly(acc)

    def __neg__(self) -> "TwoVarPoly":
        return TwoVarPoly({z: -p for z, p in self.terms})

    def __sub__(self, other: "TwoVarPoly") -> "TwoVarPoly":
        return self + (-other)

    def __mul__(self, other: "TwoVarPoly") -> "TwoVarPoly":
        acc: dict[int, LaurentPoly] = {}
        for z1, p1 in self.terms:
            for z2, p2 in other.terms:
                z = z1 + z2
                prod = p1 * p2
                acc[z] = acc[z] + prod if z in acc else prod
        return TwoVarPoly(acc)

    def scale_monomial(self, coeff: int, v_exp: int, z_exp: int) -> "TwoVarPoly":
        return TwoVarPoly(
            {z + z_exp: p.shift(v_exp).scale(coeff) for z, p in self.terms}
        )

    def substitute_v_inverse(self) -> "TwoVarPoly":
        return TwoVarPoly({z: p.substitute_inverse() for z, p in self.terms})

    def monomials(self) -> Iterator[tuple[int, int, int]]:
        """Yield (v_exp, z_exp, coeff) triples in canonical order."""
        for z, p in self.terms:
            for e, c in p.terms:
                yield (e, z, c)

    def specialize_v(self, x: Fraction | int) -> dict[int, Fraction]:
        """Evaluate the v variable at an exact rational point."""
        return {z: p.evaluate(x) for z, p in self.terms}

    def __repr__(self) -> str:
        return f"TwoVarPoly({render_two_var(self)!r})"


def coefficient_polys(p: TwoVarPoly) -> list[tuple[int, LaurentPoly]]:
    """Split into (z-degree, coefficient polynomial) slices, ascending."""
    return [(z, poly) for z, poly in p.terms]


def specialize_v1_z_binomial(p: TwoVarPoly) -> LaurentPoly:
    """Evaluate v at 1 and substitute z = s - 1/s, returning a polynomial in s.

    Negative z-exponents are rejected (knot values never carry them).
    """
    out = LaurentPoly.zero()
    binom = LaurentPoly({1: 1, -1: -1})
    for zexp, poly in p.terms:
        val = poly.evaluate(1)
        if val.denominator != 1:
            raise AssertionError("integer polynomial evaluated to a fraction")
        if zexp < 0:
            if val != 0:
                raise ValueError(
                    "nonzero negative z-slice survives the v = 1 specialization"
                )
            continue
        out = out + (binom**zexp).scale(int(val))
    return out


def coefficient_moments(p: TwoVarPoly, j: int, count: int) -> MomentVector:
    """Moments of the z^(2j) slice of a HOMFLY-style polynomial.

    These are the finite-type invariants obtained from the degree-2j
    coefficient polynomial; the 0th entry of the j = 0 slice of any knot
    invariant equals 1.
    """
    if j < 0:
        raise ValueError("slice index must be nonnegative")
    return moments(p.z_slice(2 * j), count)


# -- serialization ---------------------------------------------------------
#
# Canonical text form: terms ordered by (z-degree ascending, v-exponent
# ascending), explicit integer coefficients, e.g. ``2*v^2 - 1*v^4 + 1*v^2*z^2``.
# Grammar:  term (('+'|'-') term)*,
#           term = [int '*'] ['v' '^' int] ['*'] ['z' '^' int]

_TERM_RE = re.compile(
    r"""^\s*
    (?:(?P<coeff>[+-]?\d+)\s*(?:\*\s*)?)?
    (?:v(?:\^(?P<vexp>[+-]?\d+))?\s*(?:\*\s*)?)?
    (?:z(?:\^(?P<zexp>[+-]?\d+))?)?
    \s*$""",
    re.VERBOSE,
)


def _render_term(coeff: int, v_exp: int, z_exp: int, var_v: str, var_z: str) -> str:
    parts = [str(abs(coeff))]
    if v_exp != 0:
        parts.append(f"{var_v}^{v_exp}" if v_exp != 1 else var_v)
    if z_exp != 0:
        parts.append(f"{var_z}^{z_exp}" if z_exp != 1 else var_z)
    return "*".join(parts)


def render_two_var(p: TwoVarPoly, var_v: str = "v", var_z: str = "z") -> str:
    if p.is_zero():
        return "0"
    chunks: list[str] = []
    for v_exp, z_exp, coeff in p.monomials():
        term = _render_term(coeff, v_exp, z_exp, var_v, var_z)
        if not chunks:
            chunks.append(term if coeff > 0 else f"-{term}")
        else:
            chunks.append(f"+ {term}" if coeff > 0 else f"- {term}")
    return " ".join(chunks)


def render_laurent(f: LaurentPoly, var: str = "v") -> str:
    return render_two_var(TwoVarPoly({0: f}), var_v=var)


def parse_two_var(text: str, var_v: str = "v", var_z: str = "z") -> TwoVarPoly:
    """Parse the canonical polynomial text grammar (term order free)."""
    s = text.strip()
    if s in ("0", "-0", "+0", ""):
        return TwoVarPoly.zero()
    s = s.replace(var_v, "v").replace(var_z, "z") if (var_v != "v" or var_z != "z") else s
    # split on + and - kept as term signs; signs right after '^' are exponents
    compact = s.replace(" ", "")
    tokens: list[str] = []
    start = 0
    for idx in range(1, len(compact)):
        if compact[idx] in "+-" and compact[idx - 1] != "^":
            tokens.append(compact[start:idx])
            start = idx
    tokens.append(compact[start:])
    acc: dict[int, dict[int, int]] = {}
    for tok in tokens:
        sign = 1
        body = tok
        if body[0] == "+":
            body = body[1:]
        elif body[0] == "-":
            sign = -1
            body = body[1:]
        m = _TERM_RE.match(body)
        if not m or not body:
            raise ValueError(f"cannot parse polynomial term {tok!r}")
        coeff_s = m.group("coeff")
        has_v = "v" in body
        has_z = "z" in body
        coeff = int(coeff_s) if coeff_s is not None else 1
        v_exp = 0
        z_exp = 0
        if has_v:
            v_exp = int(m.group("vexp")) if m.group("vexp") is not None else 1
        if has_z:
            z_exp = int(m.group("zexp")) if m.group("zexp") is not None else 1
        if coeff_s is None and not has_v and not has_z:
            raise ValueError(f"empty polynomial term {tok!r}")
        slot = acc.setdefault(z_exp, {})
        slot[v_exp] = slot.get(v_exp, 0) + sign * coeff
    return TwoVarPoly({z: LaurentPoly(d) for z, d in acc.items()})


def parse_laurent(text: str, var: str = "v") -> LaurentPoly:
    p = parse_two_var(text, var_v=var)
    if any(z != 0 for z, _ in p.terms):
        raise ValueError("unexpected z terms in one-variable polynomial")
    return p.z_slice(0)


def two_var_to_json(p: TwoVarPoly) -> str:
    """JSON form: list of {"v": exp, "z": exp, "c": coeff} objects."""
    return json.dumps([{"v": v, "z": z, "c": c} for v, z, c in p.monomials()])


def two_var_from_json(text: str) -> TwoVarPoly:
    data = json.loads(text)
    acc: dict[int, dict[int, int]] = {}
    for entry in data:
        slot = acc.setdefault(int(entry["z"]), {})
        v = int(entry["v"])
        slot[v] = slot.get(v, 0) + int(entry["c"])
    return TwoVarPoly({z: LaurentPoly(d) for z, d in acc.items()})


def laurent_to_json(f: LaurentPoly) -> str:
    return two_var_to_json(TwoVarPoly({0: f}))


def laurent_from_json(text: str) -> LaurentPoly:
    p = two_var_from_json(text)
    if any(z != 0 for z, _ in p.terms):
        raise ValueError("unexpected z terms in one-variable polynomial")
    return p.z_slice(0)
