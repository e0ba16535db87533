"""
Exact polynomial core for the q-series verifier
Integer Laurent polynomials in q and integer power series truncated at a fixed degree.
Coefficients are Python ints throughout, so nothing ever overflows.
"""

import re
from typing import Dict, Iterable, List, Optional, Sequence, Tuple


class IntLaurentPoly:
    """
    Immutable Laurent polynomial with integer coefficients.

    ``coeffs[i]`` is the coefficient of ``q**(min_exp + i)``. Construction trims
    zeros at both ends, so two polynomials are equal exactly when their
    ``(min_exp, coeffs)`` pairs are equal. The zero polynomial is ``(0, ())``.
    """

    __slots__ = ("min_exp", "coeffs", "_hash")

    def __init__(self, coeffs: Sequence[int] = (), min_exp: int = 0):
        lo = 0
        hi = len(coeffs)
        while lo < hi and coeffs[lo] == 0:
            lo += 1
        while hi > lo and coeffs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            object.__setattr__(self, "min_exp", 0)
            object.__setattr__(self, "coeffs", ())
        else:
            object.__setattr__(self, "min_exp", min_exp + lo)
            object.__setattr__(self, "coeffs", tuple(coeffs[lo:hi]))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("IntLaurentPoly is immutable")

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "IntLaurentPoly":
        return cls((coeff,), exp)

    @classmethod
    def from_terms(cls, terms: Dict[int, int]) -> "IntLaurentPoly":
        """Build from an ``{exponent: coefficient}`` mapping."""
        live = {e: c for e, c in terms.items() if c}
        if not live:
            return ZERO
        lo = min(live)
        dense = [0] * (max(live) - lo + 1)
        for e, c in live.items():
            dense[e - lo] = c
        return cls(dense, lo)

    # ------------------------------------------------------------------
    # inspection

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def max_exp(self) -> Optional[int]:
        if not self.coeffs:
            return None
        return self.min_exp + len(self.coeffs) - 1

    def coefficient(self, exp: int) -> int:
        i = exp - self.min_exp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def terms(self) -> List[Tuple[int, int]]:
        """Nonzero ``(exponent, coefficient)`` pairs in ascending order."""
        return [(self.min_exp + i, c) for i, c in enumerate(self.coeffs) if c]

    def value_at_one(self) -> int:
        return sum(self.coeffs)

    # ------------------------------------------------------------------
    # ring operations

    def __add__(self, other: "IntLaurentPoly") -> "IntLaurentPoly":
        if not isinstance(other, IntLaurentPoly):
            return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.min_exp, other.min_exp)
        hi = max(self.max_exp, other.max_exp)
        out = [0] * (hi - lo + 1)
        off = self.min_exp - lo
        for i, c in enumerate(self.coeffs):
            out[off + i] = c
        off = other.min_exp - lo
        for i, c in enumerate(other.coeffs):
            out[off + i] += c
        return IntLaurentPoly(out, lo)

    def __neg__(self) -> "IntLaurentPoly":
        return IntLaurentPoly([-c for c in self.coeffs], self.min_exp)

    def __sub__(self, other: "IntLaurentPoly") -> "IntLaurentPoly":
        if not isinstance(other, IntLaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "IntLaurentPoly":
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, IntLaurentPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return ZERO
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        # schoolbook convolution, outer loop over the shorter operand
        out = [0] * (len(a) + len(b) - 1)
        for j, y in enumerate(b):
            if not y:
                continue
            if y == 1:
                for i, x in enumerate(a):
                    out[i + j] += x
            else:
                for i, x in enumerate(a):
                    out[i + j] += x * y
        return IntLaurentPoly(out, self.min_exp + other.min_exp)

    __rmul__ = __mul__

    def scale(self, factor: int) -> "IntLaurentPoly":
        if factor == 1:
            return self
        return IntLaurentPoly([c * factor for c in self.coeffs], self.min_exp)

    # ------------------------------------------------------------------
    # substitutions

    def shift(self, k: int) -> "IntLaurentPoly":
        """Multiply by ``q**k``."""
        if not self.coeffs or k == 0:
            return self
        return IntLaurentPoly(self.coeffs, self.min_exp + k)

    def dilate(self, t: int) -> "IntLaurentPoly":
        """Substitute ``q -> q**t``."""
        if t < 1:
            raise ValueError(f"dilation factor must be positive, got {t}")
        if t == 1 or not self.coeffs:
            return self
        out = [0] * ((len(self.coeffs) - 1) * t + 1)
        for i, c in enumerate(self.coeffs):
            out[i * t] = c
        return IntLaurentPoly(out, self.min_exp * t)

    def reverse(self) -> "IntLaurentPoly":
        """Substitute ``q -> 1/q``."""
        if not self.coeffs:
            return self
        return IntLaurentPoly(self.coeffs[::-1], -self.max_exp)

    # ------------------------------------------------------------------
    # comparisons

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntLaurentPoly):
            return NotImplemented
        return self.min_exp == other.min_exp and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.min_exp, self.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    def first_negative(self) -> Optional[int]:
        for i, c in enumerate(self.coeffs):
            if c < 0:
                return self.min_exp + i
        return None

    # ------------------------------------------------------------------
    # text format

    def render(self) -> str:
        return render_terms(self.terms())

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"IntLaurentPoly({self.render()!r})"


ZERO = IntLaurentPoly()
ONE = IntLaurentPoly((1,))
Q = IntLaurentPoly((1,), 1)


class TruncSeries:
    """
    Power series in q with integer coefficients, known up to and including ``q**cap``.

    Every operation discards exponents above the cap; mixing two caps keeps the smaller.
    """

    __slots__ = ("cap", "coeffs")

    def __init__(self, coeffs: Sequence[int], cap: int):
        if cap < 0:
            raise ValueError(f"series cap must be nonnegative, got {cap}")
        data = list(coeffs[: cap + 1])
        if len(data) < cap + 1:
            data.extend([0] * (cap + 1 - len(data)))
        object.__setattr__(self, "cap", cap)
        object.__setattr__(self, "coeffs", tuple(data))

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    @classmethod
    def zero(cls, cap: int) -> "TruncSeries":
        return cls((), cap)

    @classmethod
    def one(cls, cap: int) -> "TruncSeries":
        return cls((1,), cap)

    @classmethod
    def from_poly(cls, poly: IntLaurentPoly, cap: int) -> "TruncSeries":
        if poly.coeffs and poly.min_exp < 0:
            raise ValueError(
                f"cannot truncate a Laurent polynomial with exponent {poly.min_exp} to a power series"
            )
        if not poly.coeffs or poly.min_exp > cap:
            return cls.zero(cap)
        return cls((0,) * poly.min_exp + poly.coeffs, cap)

    def to_poly(self) -> IntLaurentPoly:
        return IntLaurentPoly(self.coeffs, 0)

    def coefficient(self, exp: int) -> int:
        if 0 <= exp <= self.cap:
            return self.coeffs[exp]
        return 0

    def with_cap(self, cap: int) -> "TruncSeries":
        if cap > self.cap:
            raise ValueError(f"cannot raise cap from {self.cap} to {cap}")
        return TruncSeries(self.coeffs, cap)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return NotImplemented
        cap = min(self.cap, other.cap)
        return TruncSeries([x + y for x, y in zip(self.coeffs[: cap + 1], other.coeffs)], cap)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-c for c in self.coeffs], self.cap)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return NotImplemented
        cap = min(self.cap, other.cap)
        a, b = self.coeffs, other.coeffs
        out = [0] * (cap + 1)
        for i in range(cap + 1):
            x = a[i]
            if not x:
                continue
            for j in range(cap + 1 - i):
                y = b[j]
                if y:
                    out[i + j] += x * y
        return TruncSeries(out, cap)

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by ``q**k`` (k >= 0), keeping the cap."""
        if k < 0:
            raise ValueError(f"series can only be shifted upwards, got {k}")
        if k == 0:
            return self
        return TruncSeries((0,) * k + self.coeffs, self.cap)

    def mul_factor(self, exp: int, sign: int = 1) -> "TruncSeries":
        """Multiply by ``1 - sign*q**exp``."""
        out = list(self.coeffs)
        for i in range(self.cap, exp - 1, -1):
            out[i] -= sign * out[i - exp]
        return TruncSeries(out, self.cap)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.cap == other.cap and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.cap, self.coeffs))

    def first_negative(self) -> Optional[int]:
        for i, c in enumerate(self.coeffs):
            if c < 0:
                return i
        return None

    def render(self) -> str:
        body = render_terms([(e, c) for e, c in enumerate(self.coeffs) if c])
        return f"{body} + O(q^{self.cap + 1})"

    def __repr__(self) -> str:
        return f"TruncSeries({self.render()!r})"


# ----------------------------------------------------------------------
# functional surface


def poly_add(a: IntLaurentPoly, b: IntLaurentPoly) -> IntLaurentPoly:
    return a + b


def poly_mul(a: IntLaurentPoly, b: IntLaurentPoly) -> IntLaurentPoly:
    return a * b


def poly_neg(a: IntLaurentPoly) -> IntLaurentPoly:
    return -a


def poly_sum(polys: Iterable[IntLaurentPoly]) -> IntLaurentPoly:
    """Sum many polynomials with a single dense accumulator."""
    acc: Dict[int, int] = {}
    for p in polys:
        base = p.min_exp
        for i, c in enumerate(p.coeffs):
            if c:
                acc[base + i] = acc.get(base + i, 0) + c
    return IntLaurentPoly.from_terms(acc)


def monomial_shift(p: IntLaurentPoly, k: int) -> IntLaurentPoly:
    return p.shift(k)


def dilate(p: IntLaurentPoly, t: int) -> IntLaurentPoly:
    return p.dilate(t)


def reverse(p: IntLaurentPoly) -> IntLaurentPoly:
    return p.reverse()


def is_nonnegative(p: IntLaurentPoly) -> Tuple[bool, Optional[int]]:
    """Return ``(True, None)`` or ``(False, smallest exponent with a negative coefficient)``."""
    witness = p.first_negative()
    return witness is None, witness


def first_mismatch(a: IntLaurentPoly, b: IntLaurentPoly) -> Optional[int]:
    """Smallest exponent where the two polynomials differ, or None when equal."""
    if a == b:
        return None
    return (a - b).min_exp


def first_series_mismatch(a: TruncSeries, b: TruncSeries) -> Optional[int]:
    cap = min(a.cap, b.cap)
    for e in range(cap + 1):
        if a.coeffs[e] != b.coeffs[e]:
            return e
    return None


def series_invert(p: TruncSeries) -> TruncSeries:
    """
    Multiplicative inverse of a series whose constant term is +1 or -1.

    Uses b_0 = 1/a_0 and b_n = -a_0 * sum_{i=1..n} a_i b_{n-i}, which stays in the integers.
    """
    a = p.coeffs
    a0 = a[0]
    if a0 not in (1, -1):
        raise ValueError(f"constant term {a0} is not a unit; series is not invertible over the integers")
    b = [0] * (p.cap + 1)
    b[0] = a0
    for n in range(1, p.cap + 1):
        acc = 0
        for i in range(1, n + 1):
            ai = a[i]
            if ai:
                acc += ai * b[n - i]
        b[n] = -a0 * acc
    return TruncSeries(b, p.cap)


# ----------------------------------------------------------------------
# text format: "c*q^e" terms in ascending exponent order with explicit signs


def _render_monomial(exp: int, mag: int) -> str:
    if exp == 0:
        return str(mag)
    var = "q" if exp == 1 else f"q^{exp}"
    return var if mag == 1 else f"{mag}*{var}"


def render_terms(terms: List[Tuple[int, int]]) -> str:
    if not terms:
        return "0"
    parts: List[str] = []
    for idx, (exp, coeff) in enumerate(terms):
        body = _render_monomial(exp, abs(coeff))
        if idx == 0:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(parts)


_TERM = re.compile(r"(?:(\d+)\*?)?q(?:\^(-?\d+))?|(\d+)")
_SPLIT = re.compile(r"(?<!\^)(?=[+-])")


def parse_poly(text: str) -> IntLaurentPoly:
    """Inverse of :meth:`IntLaurentPoly.render`."""
    compact = text.replace(" ", "")
    if not compact:
        raise ValueError("empty polynomial text")
    terms: Dict[int, int] = {}
    for chunk in _SPLIT.split(compact):
        if not chunk:
            continue
        sign = 1
        if chunk[0] in "+-":
            sign = -1 if chunk[0] == "-" else 1
            chunk = chunk[1:]
        m = _TERM.fullmatch(chunk)
        if m is None:
            raise ValueError(f"cannot parse polynomial term {chunk!r} in {text!r}")
        coeff_txt, exp_txt, const_txt = m.groups()
        if const_txt is not None:
            exp, coeff = 0, int(const_txt)
        else:
            coeff = int(coeff_txt) if coeff_txt else 1
            exp = int(exp_txt) if exp_txt is not None else 1
        terms[exp] = terms.get(exp, 0) + sign * coeff
    return IntLaurentPoly.from_terms(terms)
