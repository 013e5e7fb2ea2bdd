"""Exact scalar arithmetic: rationals and real quadratic extensions Q(sqrt(d)).

Rationals are plain ``fractions.Fraction``.  A ``QuadExt`` represents
a + b*sqrt(d) with rational a, b and a fixed square-free radicand d >= 2.
Mixing two distinct radicands is an error; rationals promote into any
radicand.  Sign determination is exact, which is what the whole sign
machinery of the engine rests on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import FormatError, RadicandMismatchError

Rational = Fraction
Scalar = Union[Fraction, "QuadExt"]

_SIGN_CHARS = {1: "+", 0: "0", -1: "-"}


def square_free_split(n: int) -> tuple[int, int]:
    """Write n >= 0 as s**2 * d with d square-free; returns (s, d)."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0, 1
    s, d, p = 1, 1, 2
    while p * p <= n:
        exp = 0
        while n % p == 0:
            n //= p
            exp += 1
        s *= p ** (exp // 2)
        if exp % 2:
            d *= p
        p += 1 if p == 2 else 2
    return s, d * n


def _is_square_free(d: int) -> bool:
    return d >= 2 and square_free_split(d) == (1, d)


@dataclass(frozen=True)
class QuadExt:
    """The real number a + b*sqrt(d), exact."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if not _is_square_free(self.d):
            raise ValueError(f"radicand {self.d} is not square-free and >= 2")

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise RadicandMismatchError(
                    f"cannot mix sqrt({self.d}) with sqrt({other.d})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(Fraction(other), Fraction(0), self.d)
        return NotImplemented

    # -- ring/field operations --------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadExt(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm a**2 - d*b**2."""
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        return QuadExt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                return self.b == 0 and other.b == 0 and self.a == other.a
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return _frac_sign(a)
        if a == 0:
            return _frac_sign(b)
        sa, sb = _frac_sign(a), _frac_sign(b)
        if sa == sb:
            return sa
        # opposite rational and irrational parts: compare a^2 against d*b^2
        lhs, rhs = a * a, self.d * b * b
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare QuadExt with {type(other)!r}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __repr__(self):
        return f"QuadExt({self.a!r}, {self.b!r}, {self.d})"

    def __str__(self):
        return format_scalar(self)


def scalar_sign(s: Scalar) -> int:
    """Exact sign in {+1, 0, -1} of the real number represented."""
    if isinstance(s, QuadExt):
        return s.sign()
    return _frac_sign(Fraction(s))


def _frac_sign(x: Fraction) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def pos_part(s: Scalar) -> Scalar:
    """max(s, 0), decided by exact sign evaluation."""
    if scalar_sign(s) > 0:
        return s
    return Fraction(0) if not isinstance(s, QuadExt) else QuadExt(0, 0, s.d)


def scalar_abs(s: Scalar) -> Scalar:
    return -s if scalar_sign(s) < 0 else s


def as_quadext(s: Scalar, d: int) -> QuadExt:
    """Promote a rational into Q(sqrt(d)); pass QuadExt through (same d)."""
    if isinstance(s, QuadExt):
        if s.d != d:
            raise RadicandMismatchError(f"value over sqrt({s.d}), wanted sqrt({d})")
        return s
    return QuadExt(Fraction(s), Fraction(0), d)


def quad_sqrt(n: int | Fraction) -> Scalar:
    """Exact sqrt(n) for rational n >= 0, as Fraction or QuadExt."""
    n = Fraction(n)
    if n < 0:
        raise ValueError("negative radicand")
    s, d = square_free_split(n.numerator * n.denominator)
    if d == 1:
        return Fraction(s, n.denominator)
    return QuadExt(0, Fraction(s, n.denominator), d)


def common_radicand(values) -> int | None:
    """Radicand shared by the QuadExt entries, or None if all rational."""
    d = None
    for v in values:
        if isinstance(v, QuadExt):
            if d is None:
                d = v.d
            elif v.d != d:
                raise RadicandMismatchError(f"mixed radicands {d} and {v.d}")
    return d


# -- text encoding ----------------------------------------------------------
#
# Exact scalars in files render as "p", "p/q" or "p/q+r/s*sqrt(d)".
# No float literals are accepted.


def _format_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_scalar(s: Scalar) -> str:
    if isinstance(s, QuadExt):
        if s.b == 0:
            return _format_frac(s.a)
        root = f"sqrt({s.d})"
        babs = _format_frac(abs(s.b))
        tail = root if babs == "1" else f"{babs}*{root}"
        sign = "-" if s.b < 0 else "+"
        if s.a == 0:
            return tail if sign == "+" else f"-{tail}"
        return f"{_format_frac(s.a)}{sign}{tail}"
    return _format_frac(Fraction(s))


def _parse_frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational literal {text!r}") from exc


def parse_scalar(text: str) -> Scalar:
    """Parse the exact text encoding; inverse of format_scalar."""
    if not isinstance(text, str):
        raise FormatError(f"scalar literal must be a string, got {text!r}")
    t = text.replace(" ", "")
    if "." in t or "e" in t.lower().replace("sqrt", ""):
        raise FormatError(f"float literals are not exact: {text!r}")
    if "sqrt" not in t:
        return _parse_frac(t)
    root = t.index("sqrt")
    if t[root:].count("(") != 1 or not t.endswith(")"):
        raise FormatError(f"bad quadratic literal {text!r}")
    d_text = t[root + 5 : -1]
    if not d_text.lstrip("+").isdigit():
        raise FormatError(f"bad radicand in {text!r}")
    d = int(d_text)
    head = t[:root]
    if head.endswith("*"):
        head = head[:-1]
    # split head into the rational part and the sqrt coefficient
    cut = max(head.rfind("+", 1), head.rfind("-", 1))
    if cut <= 0:
        a_text, b_text = "0", head or "1"
    else:
        a_text, b_text = head[:cut], head[cut:]
    if b_text in ("", "+"):
        b_text = "1"
    elif b_text == "-":
        b_text = "-1"
    elif b_text.startswith("+"):
        b_text = b_text[1:]
    s, d_free = square_free_split(d)
    value = QuadExt(_parse_frac(a_text), _parse_frac(b_text) * s, d_free) \
        if d_free > 1 else _parse_frac(a_text) + _parse_frac(b_text) * s
    return value
