"""Packed big-integer representation of sparse Laurent polynomials.

A two-variable Laurent polynomial with bounded z-support is encoded as one
big integer: coefficient c(a, b) of v^a z^b occupies the signed fixed-width
slot with index (b - 0) * VS + (a - voff), so polynomial addition is integer
addition and polynomial multiplication is integer multiplication (Kronecker
substitution).  Univariate polynomials are the ZS-free special case.

The layout is z-major, which makes the two frequent structural operations
cheap: multiplying by a power of v only changes the ``voff`` bookkeeping
field, and truncating away high z-degrees is a single masked cut at the top
of the integer.  Slot widths grow adaptively; a tracked upper bound on the
L1 norm of the coefficients guarantees slots never overflow, so results are
exact by construction.

Arithmetic uses gmpy2 integers for large operands when gmpy2 is installed
(pure Python ints otherwise; results are identical, only slower).
"""

from __future__ import annotations

from typing import Iterable, Mapping

try:  # pragma: no cover - exercised implicitly
    import gmpy2

    _mpz = gmpy2.mpz
    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover
    _mpz = int
    _HAVE_GMPY2 = False

# Above this bit size, route multiplications through gmpy2 (FFT range).
_BIGMUL_BITS = 1 << 14


def _bigmul(x, y):
    if _HAVE_GMPY2 and (x.bit_length() + y.bit_length()) > _BIGMUL_BITS:
        return _mpz(x) * _mpz(y)
    return x * y


def _width_for(l1_bound: int) -> int:
    """Smallest multiple of 32 with headroom for coefficients up to l1."""
    need = max(int(l1_bound).bit_length() + 2, 16)
    return ((need + 31) // 32) * 32


class PackedPoly:
    """Immutable packed polynomial; see module docstring for the layout."""

    __slots__ = ("val", "width", "vs", "voff", "vspan", "zspan", "l1")

    def __init__(self, val, width: int, vs: int, voff: int, vspan: int,
                 zspan: int, l1: int):
        self.val = val
        self.width = width
        self.vs = vs          # v-slots per z-block (layout capacity)
        self.voff = voff      # v-exponent of slot 0 in each z-block
        self.vspan = vspan    # v-slots actually in use
        self.zspan = zspan    # z-blocks actually in use
        self.l1 = l1          # upper bound on sum of |coefficients|

    # -- construction ------------------------------------------------------

    @staticmethod
    def zero() -> "PackedPoly":
        return PackedPoly(0, 64, 1, 0, 0, 0, 0)

    @staticmethod
    def from_terms(terms: Mapping[tuple[int, int], int]) -> "PackedPoly":
        """Build from a {(v_exp, z_exp): coeff} mapping; z_exps must be >= 0."""
        terms = {k: c for k, c in terms.items() if c != 0}
        if not terms:
            return PackedPoly.zero()
        vmin = min(a for a, _ in terms)
        vmax = max(a for a, _ in terms)
        zmax = max(b for _, b in terms)
        if min(b for _, b in terms) < 0:
            raise ValueError("packed layout requires nonnegative z exponents")
        l1 = sum(abs(c) for c in terms.values())
        width = _width_for(l1)
        vs = vmax - vmin + 1
        val = 0
        for (a, b), c in terms.items():
            val += c << (width * (b * vs + (a - vmin)))
        return PackedPoly(val, width, vs, vmin, vs, zmax + 1, l1)

    @staticmethod
    def monomial(coeff: int, v_exp: int, z_exp: int = 0) -> "PackedPoly":
        return PackedPoly.from_terms({(v_exp, z_exp): coeff})

    def is_zero(self) -> bool:
        return not self.val

    # -- unpacking ---------------------------------------------------------

    def to_terms(self) -> dict[tuple[int, int], int]:
        """Decode into {(v_exp, z_exp): coeff}, dropping zeros."""
        if not self.val:
            return {}
        val = int(self.val)
        width = self.width
        nslots = self.vs * self.zspan
        nbytes = (width // 8) * nslots + 1
        negate = val < 0
        if negate:
            val = -val
        raw = val.to_bytes(nbytes, "little")
        out: dict[tuple[int, int], int] = {}
        half = 1 << (width - 1)
        full = 1 << width
        wb = width // 8
        borrow = 0
        for s in range(nslots):
            t = int.from_bytes(raw[s * wb:(s + 1) * wb], "little") + borrow
            if t >= half:
                c = t - full
                borrow = 1
            else:
                c = t
                borrow = 0
            if c:
                b, a = divmod(s, self.vs)
                out[(a + self.voff, b)] = -c if negate else c
        if borrow:
            raise AssertionError("packed polynomial decoded with residue")
        return out

    def exact_l1(self) -> int:
        return sum(abs(c) for c in self.to_terms().values())

    # -- structural ops ----------------------------------------------------

    def _repack(self, width: int, vs: int) -> "PackedPoly":
        if width == self.width and vs == self.vs:
            return self
        if not self.val:
            return PackedPoly(0, width, vs, 0, 0, 0, 0)
        terms = self.to_terms()
        vmin = min(a for a, _ in terms)
        val = 0
        for (a, b), c in terms.items():
            val += c << (width * (b * vs + (a - vmin)))
        l1 = sum(abs(c) for c in terms.values())
        return PackedPoly(val, width, vs, vmin,
                          max(a for a, _ in terms) - vmin + 1,
                          max(b for _, b in terms) + 1, l1)

    def shift_v(self, dv: int) -> "PackedPoly":
        """Multiply by v^dv (bookkeeping only)."""
        if not self.val:
            return self
        return PackedPoly(self.val, self.width, self.vs, self.voff + dv,
                          self.vspan, self.zspan, self.l1)

    def shift_z(self, dz: int) -> "PackedPoly":
        """Multiply by z^dz for dz >= 0."""
        if not self.val or dz == 0:
            return self
        if dz < 0:
            raise ValueError("negative z shifts are not representable")
        return PackedPoly(self.val << (self.width * self.vs * dz),
                          self.width, self.vs, self.voff,
                          self.vspan, self.zspan + dz, self.l1)

    def mono_mul(self, coeff: int, dv: int, dz: int) -> "PackedPoly":
        """Multiply by coeff * v^dv * z^dz with coeff in {1, -1} fast-pathed."""
        out = self.shift_z(dz).shift_v(dv)
        if coeff == 1:
            return out
        if coeff == -1:
            return PackedPoly(-out.val, out.width, out.vs, out.voff,
                              out.vspan, out.zspan, out.l1)
        l1 = out.l1 * abs(coeff)
        res = PackedPoly(out.val * coeff, out.width, out.vs, out.voff,
                         out.vspan, out.zspan, l1)
        if l1 >> (out.width - 1):
            res = res._repack(_width_for(l1), out.vs)
        return res

    def truncate_z(self, z_max: int) -> "PackedPoly":
        """Drop all terms of z-degree above z_max (z_max >= 0)."""
        if not self.val or self.zspan <= z_max + 1:
            return self
        if z_max < 0:
            return PackedPoly.zero()
        bits = self.width * self.vs * (z_max + 1)
        low = self.val & ((1 << bits) - 1)
        # sign-extend: the top retained slot may carry a borrow
        if low >> (bits - 1):
            low -= 1 << bits
        if not low:
            return PackedPoly.zero()
        return PackedPoly(low, self.width, self.vs, self.voff,
                          self.vspan, z_max + 1, self.l1)

    # -- arithmetic --------------------------------------------------------

    def add(self, other: "PackedPoly") -> "PackedPoly":
        if not self.val:
            return other
        if not other.val:
            return self
        l1 = self.l1 + other.l1
        width = max(self.width, other.width)
        if l1 >> (width - 1):
            width = _width_for(l1)
        x, y = self, other
        voff = min(x.voff, y.voff)
        vspan = max(x.voff + x.vspan, y.voff + y.vspan) - voff
        vs = max(x.vs, y.vs)
        if vspan > vs:
            vs = vspan
        if x.width != width or x.vs != vs:
            x = x._repack(width, vs)
        if y.width != width or y.vs != vs:
            y = y._repack(width, vs)
        xv = x.val << (width * (x.voff - voff)) if x.voff != voff else x.val
        yv = y.val << (width * (y.voff - voff)) if y.voff != voff else y.val
        val = xv + yv
        if not val:
            return PackedPoly.zero()
        return PackedPoly(val, width, vs, voff, vspan,
                          max(x.zspan, y.zspan), l1)

    def neg(self) -> "PackedPoly":
        if not self.val:
            return self
        return PackedPoly(-self.val, self.width, self.vs, self.voff,
                          self.vspan, self.zspan, self.l1)

    def mul(self, other: "PackedPoly") -> "PackedPoly":
        if not self.val or not other.val:
            return PackedPoly.zero()
        l1 = self.l1 * other.l1
        width = _width_for(l1)
        vs = self.vspan + other.vspan - 1
        x = self._repack(width, vs)
        y = other._repack(width, vs)
        val = _bigmul(x.val, y.val)
        return PackedPoly(val, width, vs, x.voff + y.voff,
                          vs, x.zspan + y.zspan - 1, l1)

    def compact(self) -> "PackedPoly":
        """Re-encode tightly (exact l1, minimal spans); cheap insurance after
        long chains of additions."""
        return PackedPoly.from_terms(self.to_terms())

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"PackedPoly({self.to_terms()!r})"


def pack_univariate(terms: Mapping[int, int]) -> PackedPoly:
    """Pack a one-variable Laurent polynomial onto the v-axis."""
    return PackedPoly.from_terms({(e, 0): c for e, c in terms.items()})


def unpack_univariate(p: PackedPoly) -> dict[int, int]:
    out: dict[int, int] = {}
    for (a, b), c in p.to_terms().items():
        if b != 0:
            raise ValueError("polynomial is not univariate")
        out[a] = c
    return out
